#pragma once

// Interferometer configuration: path priors p_i, per-path detector states
// |η_i⟩, and the two reduced density matrices of the joint state
// Σ_i √p_i |i⟩|η_i⟩.

#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "cohdual/errors.hpp"
#include "cohdual/linalg.hpp"

namespace cohdual {

inline constexpr double kNormalizationTol = 1e-9;
/// Inputs within this distance of normalized are rescaled instead of rejected.
inline constexpr double kRepairTol = 1e-6;
/// Rescalings smaller than this are rounding noise and are not counted as repairs.
inline constexpr double kRoundingTol = 1e-12;

template <class Real>
class PathDistribution {
 public:
  /// Validates N ≥ 2, p_i ≥ 0 and Σ p_i = 1 within 1e-9. No repair.
  explicit PathDistribution(std::vector<Real> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) {
      throw Error(ErrorKind::InvalidArgument, "at least two paths are required");
    }
    Real total = 0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      if (!std::isfinite(probs_[i])) {
        throw Error(ErrorKind::NotFinite, "probability " + std::to_string(i) + " is not finite");
      }
      if (probs_[i] < 0) {
        throw Error(ErrorKind::NegativeProbability, "probability " + std::to_string(i) + " is negative");
      }
      total += probs_[i];
    }
    if (std::abs(total - Real(1)) > Real(kNormalizationTol)) {
      std::ostringstream os;
      os << "probabilities sum to " << total;
      throw Error(ErrorKind::NotNormalized, os.str());
    }
  }

  static PathDistribution uniform(std::size_t n) {
    return PathDistribution(std::vector<Real>(n, Real(1) / Real(n)));
  }

  std::size_t size() const noexcept { return probs_.size(); }
  Real operator[](std::size_t i) const { return probs_[i]; }
  std::span<const Real> probs() const noexcept { return probs_; }
  const std::vector<Real>& values() const noexcept { return probs_; }

 private:
  std::vector<Real> probs_;
};

/// N unit vectors in a d-dimensional space, stored as the columns of a d×N matrix.
/// Linear dependence (including d < N) is allowed.
template <class Real>
class DetectorSet {
 public:
  explicit DetectorSet(Matrix<Real> states) : states_(std::move(states)) {
    if (states_.cols() < 2) {
      throw Error(ErrorKind::InvalidArgument, "at least two detector states are required");
    }
    if (states_.rows() < 1) {
      throw Error(ErrorKind::InvalidArgument, "detector dimension must be positive");
    }
    if (!states_.allFinite()) {
      throw Error(ErrorKind::NotFinite, "detector state has NaN or Inf entries");
    }
    for (Eigen::Index i = 0; i < states_.cols(); ++i) {
      const Real norm = states_.col(i).norm();
      if (std::abs(norm - Real(1)) > Real(kNormalizationTol)) {
        std::ostringstream os;
        os << "detector state " << i << " has norm " << norm;
        throw Error(ErrorKind::NotNormalized, os.str());
      }
    }
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(states_.cols()); }
  Eigen::Index dim() const noexcept { return states_.rows(); }
  auto state(std::size_t i) const { return states_.col(static_cast<Eigen::Index>(i)); }
  const Matrix<Real>& states() const noexcept { return states_; }

  /// G(i, j) = ⟨η_i|η_j⟩
  Matrix<Real> gram() const { return states_.adjoint() * states_; }

 private:
  Matrix<Real> states_;
};

template <class Real>
class InterferometerConfig {
 public:
  InterferometerConfig(PathDistribution<Real> priors, DetectorSet<Real> detectors)
      : priors_(std::move(priors)), detectors_(std::move(detectors)) {
    if (priors_.size() != detectors_.size()) {
      std::ostringstream os;
      os << priors_.size() << " priors but " << detectors_.size() << " detector states";
      throw Error(ErrorKind::LengthMismatch, os.str());
    }
  }

  std::size_t n_paths() const noexcept { return priors_.size(); }
  Eigen::Index detector_dim() const noexcept { return detectors_.dim(); }
  const PathDistribution<Real>& priors() const noexcept { return priors_; }
  const DetectorSet<Real>& detectors() const noexcept { return detectors_; }

 private:
  PathDistribution<Real> priors_;
  DetectorSet<Real> detectors_;
};

/// Hermitian, PSD and unit trace, each within 1e-9.
template <class Real>
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix<Real> m, Real tol = Real(kNormalizationTol)) {
    const auto eigenvalues = eigenvalues_hermitian(m, tol);
    if (eigenvalues(0) < -tol) {
      std::ostringstream os;
      os << "density matrix eigenvalue " << eigenvalues(0);
      throw Error(ErrorKind::NotPsd, os.str());
    }
    const Real trace = m.trace().real();
    if (std::abs(trace - Real(1)) > tol) {
      std::ostringstream os;
      os << "density matrix trace " << trace;
      throw Error(ErrorKind::NotNormalized, os.str());
    }
    matrix_ = std::move(m);
  }

  static DensityMatrix pure(const Vector<Real>& state) { return DensityMatrix(outer_projector(state)); }

  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  const Matrix<Real>& matrix() const noexcept { return matrix_; }

 private:
  Matrix<Real> matrix_;
};

struct BuildStats {
  std::size_t repaired_probabilities = 0;  // 0 or 1
  std::size_t repaired_states = 0;
  std::size_t repairs() const noexcept { return repaired_probabilities + repaired_states; }
};

/// Builds a configuration from raw input, rescaling values that are within
/// 1e-6 of normalized and rejecting anything further off.
template <class Real>
InterferometerConfig<Real> build_config(std::span<const Real> probs, std::span<const Vector<Real>> states,
                                        BuildStats* stats = nullptr) {
  BuildStats local;
  if (probs.size() != states.size()) {
    std::ostringstream os;
    os << probs.size() << " probabilities but " << states.size() << " detector states";
    throw Error(ErrorKind::LengthMismatch, os.str());
  }
  if (probs.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "at least two paths are required");
  }
  Real total = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i])) {
      throw Error(ErrorKind::NotFinite, "probability " + std::to_string(i) + " is not finite");
    }
    if (probs[i] < 0) {
      throw Error(ErrorKind::NegativeProbability, "probability " + std::to_string(i) + " is negative");
    }
    total += probs[i];
  }
  if (std::abs(total - Real(1)) > Real(kRepairTol)) {
    std::ostringstream os;
    os << "probabilities sum to " << total;
    throw Error(ErrorKind::NotNormalized, os.str());
  }
  if (std::abs(total - Real(1)) > Real(kRoundingTol)) local.repaired_probabilities = 1;
  std::vector<Real> normalized(probs.begin(), probs.end());
  for (auto& p : normalized) p /= total;

  const Eigen::Index dim = states[0].size();
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "detector dimension must be positive");
  Matrix<Real> columns(dim, static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != dim) {
      std::ostringstream os;
      os << "detector state " << i << " has length " << states[i].size() << ", expected " << dim;
      throw Error(ErrorKind::LengthMismatch, os.str());
    }
    if (!states[i].allFinite()) {
      throw Error(ErrorKind::NotFinite, "detector state " + std::to_string(i) + " is not finite");
    }
    const Real norm = states[i].norm();
    if (norm == Real(0) || std::abs(norm - Real(1)) > Real(kRepairTol)) {
      std::ostringstream os;
      os << "detector state " << i << " has norm " << norm;
      throw Error(ErrorKind::NotNormalized, os.str());
    }
    if (std::abs(norm - Real(1)) > Real(kRoundingTol)) ++local.repaired_states;
    columns.col(static_cast<Eigen::Index>(i)) = states[i] / norm;
  }
  if (stats) *stats = local;
  return InterferometerConfig<Real>(PathDistribution<Real>(std::move(normalized)),
                                    DetectorSet<Real>(std::move(columns)));
}

template <class Real>
InterferometerConfig<Real> build_config(const std::vector<Real>& probs, const std::vector<Vector<Real>>& states,
                                        BuildStats* stats = nullptr) {
  return build_config<Real>(std::span<const Real>(probs), std::span<const Vector<Real>>(states), stats);
}

/// ρ_ij = √(p_i p_j) ⟨η_j|η_i⟩ in the path basis. The diagonal is set to p_i exactly.
template <class Real>
DensityMatrix<Real> particle_density(const InterferometerConfig<Real>& config) {
  const auto n = static_cast<Eigen::Index>(config.n_paths());
  const Matrix<Real> gram = config.detectors().gram();
  Matrix<Real> rho(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Real pi = config.priors()[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const Real pj = config.priors()[static_cast<std::size_t>(j)];
      rho(i, j) = (i == j) ? Complex<Real>(pi, 0) : std::sqrt(pi * pj) * gram(j, i);
    }
  }
  return DensityMatrix<Real>(std::move(rho));
}

/// ρ_det = Σ_i p_i |η_i⟩⟨η_i| on the detector space.
template <class Real>
DensityMatrix<Real> detector_density(const InterferometerConfig<Real>& config) {
  const auto& states = config.detectors().states();
  RealVector<Real> weights(static_cast<Eigen::Index>(config.n_paths()));
  for (std::size_t i = 0; i < config.n_paths(); ++i) weights(static_cast<Eigen::Index>(i)) = config.priors()[i];
  Matrix<Real> rho = states * weights.template cast<Complex<Real>>().asDiagonal() * states.adjoint();
  return DensityMatrix<Real>(std::move(rho));
}

}  // namespace cohdual
