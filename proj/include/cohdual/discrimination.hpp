#pragma once

// Minimum-error discrimination: pairwise Helstrom matrices, the N-state
// success-probability upper bound, and two concrete measurements
// (pretty-good measurement, exact two-state Helstrom) that achieve values
// below it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "cohdual/linalg.hpp"
#include "cohdual/model.hpp"
#include "cohdual/povm.hpp"

namespace cohdual {

/// Eigenvalues of Λ_12 at or below this count as zero in helstrom_povm_two.
inline constexpr double kHelstromZeroTol = 1e-12;

/// Priors over possibly mixed states of a common dimension.
template <class Real>
class Ensemble {
 public:
  Ensemble(PathDistribution<Real> priors, std::vector<DensityMatrix<Real>> states)
      : priors_(std::move(priors)), states_(std::move(states)) {
    if (priors_.size() != states_.size()) {
      std::ostringstream os;
      os << priors_.size() << " priors but " << states_.size() << " states";
      throw Error(ErrorKind::LengthMismatch, os.str());
    }
    for (const auto& s : states_) {
      if (s.dim() != states_.front().dim()) {
        throw Error(ErrorKind::DimensionMismatch, "ensemble states differ in dimension");
      }
    }
  }

  std::size_t size() const noexcept { return states_.size(); }
  Eigen::Index dim() const noexcept { return states_.front().dim(); }
  const PathDistribution<Real>& priors() const noexcept { return priors_; }
  const DensityMatrix<Real>& state(std::size_t i) const { return states_[i]; }
  const std::vector<DensityMatrix<Real>>& states() const noexcept { return states_; }

  /// Σ p_i ρ_i
  Matrix<Real> average_state() const {
    Matrix<Real> avg = Matrix<Real>::Zero(dim(), dim());
    for (std::size_t i = 0; i < size(); ++i) avg += priors_[i] * states_[i].matrix();
    return avg;
  }

 private:
  PathDistribution<Real> priors_;
  std::vector<DensityMatrix<Real>> states_;
};

/// The detector ensemble {p_i, |η_i⟩⟨η_i|} of a configuration.
template <class Real>
Ensemble<Real> detector_ensemble(const InterferometerConfig<Real>& config) {
  std::vector<DensityMatrix<Real>> states;
  states.reserve(config.n_paths());
  for (std::size_t i = 0; i < config.n_paths(); ++i) {
    states.push_back(DensityMatrix<Real>::pure(config.detectors().state(i)));
  }
  return Ensemble<Real>(config.priors(), std::move(states));
}

namespace detail {
inline void check_index(std::size_t i, std::size_t n) {
  if (i >= n) {
    std::ostringstream os;
    os << "index " << i << " out of range for " << n << " states";
    throw Error(ErrorKind::IndexOutOfRange, os.str());
  }
}
}  // namespace detail

/// Λ_ij = p_i ρ_i − p_j ρ_j
template <class Real>
Matrix<Real> helstrom_matrix(const Ensemble<Real>& ensemble, std::size_t i, std::size_t j) {
  detail::check_index(i, ensemble.size());
  detail::check_index(j, ensemble.size());
  if (i == j) return Matrix<Real>::Zero(ensemble.dim(), ensemble.dim());
  return ensemble.priors()[i] * ensemble.state(i).matrix() - ensemble.priors()[j] * ensemble.state(j).matrix();
}

/// Closed form ‖Λ_ij‖_1 = 2 √(((p_i+p_j)/2)² − p_i p_j |⟨η_i|η_j⟩|²) for pure states.
template <class Real>
Real pure_pair_trace_norm(const InterferometerConfig<Real>& config, std::size_t i, std::size_t j) {
  detail::check_index(i, config.n_paths());
  detail::check_index(j, config.n_paths());
  const Real pi = config.priors()[i];
  const Real pj = config.priors()[j];
  // Rewritten as ((p_i−p_j)/2)² + p_i p_j (1 − |⟨η_i|η_j⟩|²), with 1 − |⟨η_i|η_j⟩|² taken as the
  // squared norm of η_j's component orthogonal to η_i; the direct form cancels for near-parallel states.
  const auto a = config.detectors().state(i);
  const auto b = config.detectors().state(j);
  const Real orthogonal_sq = (b - a.dot(b) * a).squaredNorm();
  const Real half_diff = (pi - pj) / Real(2);
  const Real radicand = half_diff * half_diff + pi * pj * orthogonal_sq;
  if (radicand < -Real(1e-12)) {
    std::ostringstream os;
    os << "negative radicand " << radicand << " for pair (" << i << ", " << j << ")";
    throw Error(ErrorKind::DomainError, os.str());
  }
  return Real(2) * std::sqrt(std::max(radicand, Real(0)));
}

/// P_s ≤ 1/N + (1/2N) Σ_{i,j} ‖Λ_ij‖_1, summed over all ordered pairs (i = j terms vanish).
template <class Real>
Real success_upper_bound(const Ensemble<Real>& ensemble) {
  const std::size_t n = ensemble.size();
  const Real inv_n = Real(1) / static_cast<Real>(n);
  Real norm_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      norm_sum += trace_norm(helstrom_matrix(ensemble, i, j));
    }
  }
  return inv_n + inv_n * norm_sum / Real(2);
}

template <class Real>
Real success_upper_bound(const InterferometerConfig<Real>& config) {
  return success_upper_bound(detector_ensemble(config));
}

/// Σ p_i Tr(Π_i ρ_i)
template <class Real>
Real povm_success_probability(const Povm<Real>& povm, const Ensemble<Real>& ensemble) {
  if (povm.size() != ensemble.size()) {
    std::ostringstream os;
    os << "POVM has " << povm.size() << " elements for " << ensemble.size() << " states";
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  Real total = 0;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    if (povm[i].rows() != ensemble.dim() || povm[i].cols() != ensemble.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "POVM element dimension differs from state dimension");
    }
    total += ensemble.priors()[i] * (povm[i] * ensemble.state(i).matrix()).trace().real();
  }
  return total;
}

/// Π_i = ρ^{-1/2} p_i ρ_i ρ^{-1/2} with ρ = Σ p_i ρ_i, plus the projector onto
/// ker ρ shared equally so the result is complete when ρ is rank deficient.
///
/// Each Π_i is formed as W_i W_i^† (W_i = ρ^{-1/2} √(p_i ρ_i)) so it is PSD by
/// construction, then the set is renormalized by T = Σ Π_i restricted to its
/// support. In exact arithmetic T is the support projector and this is a no-op;
/// numerically it removes the completeness error that ρ^{-1/2} amplifies when ρ
/// has eigenvalues just above the rank cutoff.
template <class Real>
Povm<Real> pretty_good_measurement(const Ensemble<Real>& ensemble) {
  const std::size_t n = ensemble.size();
  const Eigen::Index dim = ensemble.dim();
  const Matrix<Real> inv_sqrt = pinv_sqrt(ensemble.average_state());

  std::vector<Matrix<Real>> factors;
  factors.reserve(n);
  Matrix<Real> total = Matrix<Real>::Zero(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto eig = eig_hermitian(ensemble.state(i).matrix());
    RealVector<Real> weights = eig.eigenvalues.cwiseMax(Real(0)) * ensemble.priors()[i];
    const Matrix<Real> w = inv_sqrt * eig.eigenvectors * weights.cwiseSqrt().asDiagonal();
    total.noalias() += w * w.adjoint();
    factors.push_back(w);
  }

  const auto t = eig_hermitian(total);
  Matrix<Real> renorm = Matrix<Real>::Zero(dim, dim);
  Matrix<Real> kernel = Matrix<Real>::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Real lambda = t.eigenvalues(k);
    if (lambda > Real(0.5)) {
      renorm.noalias() += (Real(1) / std::sqrt(lambda)) * t.eigenvectors.col(k) * t.eigenvectors.col(k).adjoint();
    } else {
      kernel.noalias() += t.eigenvectors.col(k) * t.eigenvectors.col(k).adjoint();
    }
  }
  kernel /= static_cast<Real>(n);

  Povm<Real> povm;
  povm.elements.reserve(n);
  for (const auto& w : factors) {
    const Matrix<Real> rw = renorm * w;
    Matrix<Real> element = rw * rw.adjoint() + kernel;
    povm.elements.push_back((element + element.adjoint()) / Real(2));
  }
  return povm;
}

/// Exact optimum for two states: Π_1 projects onto the positive eigenspace of
/// Λ_12, Π_2 = I − Π_1. Zero eigenvalues go to Π_2.
template <class Real>
Povm<Real> helstrom_povm_two(const Ensemble<Real>& ensemble) {
  if (ensemble.size() != 2) {
    std::ostringstream os;
    os << "two-state Helstrom measurement needs N = 2, got " << ensemble.size();
    throw Error(ErrorKind::WrongArity, os.str());
  }
  const Matrix<Real> positive = positive_part_projector(helstrom_matrix(ensemble, 0, 1), Real(kHelstromZeroTol));
  const Eigen::Index dim = ensemble.dim();
  return Povm<Real>{{positive, Matrix<Real>::Identity(dim, dim) - positive}};
}

}  // namespace cohdual
