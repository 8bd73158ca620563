#pragma once

// Entropic path information: joint outcome/label distributions, mutual
// information H(M:D), the Holevo quantity, and a local-search lower bound on
// the accessible information.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cohdual/coherence.hpp"
#include "cohdual/discrimination.hpp"
#include "cohdual/linalg.hpp"
#include "cohdual/model.hpp"
#include "cohdual/povm.hpp"
#include "cohdual/sampling.hpp"

namespace cohdual {

/// Joint probabilities in [-1e-12, 0) are clamped to zero; anything lower is an error.
inline constexpr double kJointClampTol = 1e-12;
inline constexpr double kJointSumTol = 1e-9;

/// Rows are measurement outcomes M = i, columns are detector labels D = j.
template <class Real>
class JointDistribution {
 public:
  explicit JointDistribution(RealMatrix<Real> table) : table_(std::move(table)) {
    if (table_.size() == 0) throw Error(ErrorKind::EmptyMatrix, "empty joint distribution");
    for (Eigen::Index c = 0; c < table_.cols(); ++c) {
      for (Eigen::Index r = 0; r < table_.rows(); ++r) {
        Real& v = table_(r, c);
        if (!std::isfinite(v)) throw Error(ErrorKind::NotFinite, "joint probability is not finite");
        if (v < -Real(kJointClampTol)) {
          std::ostringstream os;
          os << "joint probability (" << r << ", " << c << ") = " << v;
          throw Error(ErrorKind::NegativeProbability, os.str());
        }
        if (v < 0) v = 0;
      }
    }
    const Real total = table_.sum();
    if (std::abs(total - Real(1)) > Real(kJointSumTol)) {
      std::ostringstream os;
      os << "joint distribution sums to " << total;
      throw Error(ErrorKind::NotNormalized, os.str());
    }
  }

  const RealMatrix<Real>& table() const noexcept { return table_; }
  Eigen::Index outcomes() const noexcept { return table_.rows(); }
  Eigen::Index labels() const noexcept { return table_.cols(); }
  RealVector<Real> outcome_marginal() const { return table_.rowwise().sum(); }
  RealVector<Real> label_marginal() const { return table_.colwise().sum().transpose(); }

 private:
  RealMatrix<Real> table_;
};

/// p(M=i, D=j) = Tr(Π_i ρ_j) p_j
template <class Real>
JointDistribution<Real> joint_distribution(const Povm<Real>& povm, const Ensemble<Real>& ensemble) {
  RealMatrix<Real> table(static_cast<Eigen::Index>(povm.size()), static_cast<Eigen::Index>(ensemble.size()));
  for (std::size_t i = 0; i < povm.size(); ++i) {
    if (povm[i].rows() != ensemble.dim() || povm[i].cols() != ensemble.dim()) {
      std::ostringstream os;
      os << "POVM element " << i << " is " << povm[i].rows() << "x" << povm[i].cols() << ", states are "
         << ensemble.dim() << "-dimensional";
      throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    for (std::size_t j = 0; j < ensemble.size(); ++j) {
      table(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          ensemble.priors()[j] * (povm[i] * ensemble.state(j).matrix()).trace().real();
    }
  }
  return JointDistribution<Real>(std::move(table));
}

template <class Real>
JointDistribution<Real> joint_distribution(const Povm<Real>& povm, const InterferometerConfig<Real>& config) {
  return joint_distribution(povm, detector_ensemble(config));
}

/// H(M) + H(D) − H(M, D), in bits.
template <class Real>
Real mutual_information(const JointDistribution<Real>& joint) {
  const auto& t = joint.table();
  const RealVector<Real> rows = joint.outcome_marginal();
  const RealVector<Real> cols = joint.label_marginal();
  const Real h_joint = shannon_entropy(std::span<const Real>(t.data(), static_cast<std::size_t>(t.size())));
  return spectral_entropy<Real>(rows) + spectral_entropy<Real>(cols) - h_joint;
}

/// S(Σ p_i ρ_i) − Σ p_i S(ρ_i)
template <class Real>
Real holevo_quantity(const Ensemble<Real>& ensemble) {
  Real mixed = 0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    mixed += ensemble.priors()[i] * von_neumann_entropy(ensemble.state(i));
  }
  return von_neumann_entropy(ensemble.average_state()) - mixed;
}

/// Pure detector states: the Holevo quantity reduces to S(ρ_det).
template <class Real>
Real holevo_quantity(const InterferometerConfig<Real>& config) {
  return von_neumann_entropy(detector_density(config));
}

template <class Real>
struct ScoredPovm {
  Povm<Real> povm;
  Real mutual_information = 0;
  std::string source;
};

/// Best of the closed-form measurements: the pretty-good measurement and, for
/// N = 2, the Helstrom measurement. Ties keep the pretty-good measurement.
template <class Real>
ScoredPovm<Real> best_reference_povm(const InterferometerConfig<Real>& config) {
  const auto ensemble = detector_ensemble(config);
  ScoredPovm<Real> best{pretty_good_measurement(ensemble), 0, "pgm"};
  best.mutual_information = mutual_information(joint_distribution(best.povm, ensemble));
  if (config.n_paths() == 2) {
    Povm<Real> helstrom = helstrom_povm_two(ensemble);
    const Real mi = mutual_information(joint_distribution(helstrom, ensemble));
    if (mi > best.mutual_information) best = {std::move(helstrom), mi, "helstrom"};
  }
  return best;
}

struct AccessibleInfoOptions {
  std::size_t restarts = 8;
  std::uint64_t seed = 42;
  std::size_t max_iterations = 500;
  double min_improvement = 1e-10;
  double initial_step = 0.5;
  double min_step = 1e-6;
};

namespace detail {

/// Rank-one POVMs on an r-dimensional support, parametrized by an N×N unitary U:
/// element i is |w_i⟩⟨w_i| with ⟨w_i| = row i of the first r columns of U.
/// amplitudes(i, j) = ⟨w_i|c_j⟩ where c_j are detector states in support coordinates.
template <class Real>
class RankOneSearch {
 public:
  RankOneSearch(const RealVector<Real>& priors, const Matrix<Real>& coords, Matrix<Real> unitary)
      : priors_(priors), unitary_(std::move(unitary)) {
    amplitudes_ = unitary_.leftCols(coords.rows()) * coords;
    value_ = evaluate(amplitudes_);
  }

  Real value() const noexcept { return value_; }
  const Matrix<Real>& unitary() const noexcept { return unitary_; }

  /// Coordinate ascent over Givens rotations between outcome pairs. One
  /// iteration is a sweep over every (pair, generator); the step is halved
  /// whenever a sweep gains less than min_improvement.
  void optimize(const AccessibleInfoOptions& opt) {
    const Eigen::Index n = unitary_.rows();
    Real step = static_cast<Real>(opt.initial_step);
    for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
      const Real before = value_;
      for (Eigen::Index k = 0; k + 1 < n; ++k) {
        for (Eigen::Index l = k + 1; l < n; ++l) {
          for (int generator = 0; generator < 2; ++generator) {
            for (const Real angle : {step, -step}) {
              Matrix<Real> trial = amplitudes_;
              rotate_rows(trial, k, l, angle, generator);
              const Real v = evaluate(trial);
              if (v > value_) {
                amplitudes_ = std::move(trial);
                rotate_rows(unitary_, k, l, angle, generator);
                value_ = v;
                break;
              }
            }
          }
        }
      }
      if (value_ - before < static_cast<Real>(opt.min_improvement)) {
        if (step <= static_cast<Real>(opt.min_step)) break;
        step /= Real(2);
      }
    }
  }

 private:
  static void rotate_rows(Matrix<Real>& m, Eigen::Index k, Eigen::Index l, Real angle, int generator) {
    const Real c = std::cos(angle);
    const Real s = std::sin(angle);
    // generator 0: [[c, -s], [s, c]]; generator 1: [[c, i s], [i s, c]]
    const Complex<Real> off_kl = generator == 0 ? Complex<Real>(-s, 0) : Complex<Real>(0, s);
    const Complex<Real> off_lk = generator == 0 ? Complex<Real>(s, 0) : Complex<Real>(0, s);
    const Vector<Real> row_k = m.row(k).transpose();
    const Vector<Real> row_l = m.row(l).transpose();
    m.row(k) = (c * row_k + off_kl * row_l).transpose();
    m.row(l) = (off_lk * row_k + c * row_l).transpose();
  }

  Real evaluate(const Matrix<Real>& amplitudes) const {
    const Eigen::Index n = amplitudes.rows();
    Real h_joint = 0;
    Real h_outcome = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      Real row = 0;
      for (Eigen::Index j = 0; j < amplitudes.cols(); ++j) {
        const Real p = priors_(j) * std::norm(amplitudes(i, j));
        row += p;
        if (p > 0) h_joint -= p * std::log2(p);
      }
      if (row > 0) h_outcome -= row * std::log2(row);
    }
    return h_outcome - h_joint;  // H(D) is constant and omitted
  }

  RealVector<Real> priors_;
  Matrix<Real> unitary_;
  Matrix<Real> amplitudes_;
  Real value_ = 0;
};

}  // namespace detail

/// Lower bound on max_M H(M:D): the best of the reference measurements and
/// `restarts` locally optimized rank-one POVMs started from Haar-random unitaries.
/// Deterministic in (config, options); restart k always uses the same stream.
template <class Real>
ScoredPovm<Real> optimize_accessible_info(const InterferometerConfig<Real>& config,
                                          const AccessibleInfoOptions& options = {}) {
  const auto ensemble = detector_ensemble(config);
  ScoredPovm<Real> best = best_reference_povm(config);

  const std::size_t n = config.n_paths();
  const Eigen::Index d = config.detector_dim();
  const auto eig = eig_hermitian(detector_density(config).matrix());
  const Real cutoff = Real(kRankTol) * eig.eigenvalues(d - 1);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < d; ++k) rank += eig.eigenvalues(k) > cutoff ? 1 : 0;
  const Matrix<Real> support = eig.eigenvectors.rightCols(rank);
  const Matrix<Real> coords = support.adjoint() * config.detectors().states();
  const Matrix<Real> kernel_share =
      (Matrix<Real>::Identity(d, d) - support * support.adjoint()) / static_cast<Real>(n);

  RealVector<Real> priors(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) priors(static_cast<Eigen::Index>(i)) = config.priors()[i];

  constexpr std::uint64_t kRestartStream = 0x616363657373ULL;
  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    RngStream rng(options.seed, {kRestartStream, restart});
    detail::RankOneSearch<Real> search(priors, coords,
                                       sample_haar_unitary<Real>(static_cast<Eigen::Index>(n), rng));
    search.optimize(options);

    Povm<Real> povm;
    povm.elements.reserve(n);
    const Matrix<Real> isometry = search.unitary().leftCols(rank);
    for (std::size_t i = 0; i < n; ++i) {
      const Vector<Real> w = support * isometry.row(static_cast<Eigen::Index>(i)).adjoint();
      povm.elements.push_back(w * w.adjoint() + kernel_share);
    }
    const Real mi = mutual_information(joint_distribution(povm, ensemble));
    if (mi > best.mutual_information) {
      best = {std::move(povm), mi, "search#" + std::to_string(restart)};
    }
  }
  return best;
}

template <class Real>
Real accessible_info_lower_bound(const InterferometerConfig<Real>& config, std::size_t restarts,
                                 std::uint64_t seed) {
  AccessibleInfoOptions options;
  options.restarts = restarts;
  options.seed = seed;
  return optimize_accessible_info(config, options).mutual_information;
}

}  // namespace cohdual
