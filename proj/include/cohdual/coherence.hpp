#pragma once

// Coherence measures in the storage basis of the matrix, plus the Shannon and
// von Neumann entropies they are built from. Entropies are in bits.

#include <cmath>
#include <span>
#include <sstream>

#include "cohdual/linalg.hpp"
#include "cohdual/model.hpp"

namespace cohdual {

/// Eigenvalues in [-1e-9, 0] are treated as zero before taking logs.
inline constexpr double kEntropyClampTol = 1e-9;

/// Σ_{i≠j} |ρ_ij|
template <class Derived>
RealScalarOf<Derived> l1_coherence(const Eigen::MatrixBase<Derived>& rho) {
  return rho.cwiseAbs().sum() - rho.diagonal().cwiseAbs().sum();
}

template <class Real>
Real l1_coherence(const DensityMatrix<Real>& rho) {
  return l1_coherence(rho.matrix());
}

/// X = C_l1 / N, in [0, (N-1)/N].
template <class Real>
Real normalized_coherence(const DensityMatrix<Real>& rho) {
  return l1_coherence(rho) / static_cast<Real>(rho.dim());
}

/// −Σ p log2 p with 0 log 0 = 0. Entries in [-1e-9, 0) are treated as zero.
template <class Real>
Real shannon_entropy(std::span<const Real> probs) {
  Real h = 0;
  for (const Real p : probs) {
    if (p < -Real(kEntropyClampTol)) {
      std::ostringstream os;
      os << "negative probability " << p;
      throw Error(ErrorKind::NegativeProbability, os.str());
    }
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

template <class Real>
Real shannon_entropy(const PathDistribution<Real>& p) {
  return shannon_entropy(p.probs());
}

/// Entropy of a spectrum, as used for density matrices.
template <class Real>
Real spectral_entropy(const RealVector<Real>& eigenvalues) {
  return shannon_entropy(std::span<const Real>(eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())));
}

/// S(ρ) = −Σ λ log2 λ. Throws NotPsd if an eigenvalue is below -1e-9.
template <class Derived>
RealScalarOf<Derived> von_neumann_entropy(const Eigen::MatrixBase<Derived>& rho) {
  using Real = RealScalarOf<Derived>;
  const RealVector<Real> eigenvalues = eigenvalues_hermitian(rho);
  if (eigenvalues(0) < -Real(kEntropyClampTol)) {
    std::ostringstream os;
    os << "eigenvalue " << eigenvalues(0) << " below -" << kEntropyClampTol;
    throw Error(ErrorKind::NotPsd, os.str());
  }
  return spectral_entropy<Real>(eigenvalues);
}

template <class Real>
Real von_neumann_entropy(const DensityMatrix<Real>& rho) {
  return von_neumann_entropy(rho.matrix());
}

/// S(ρ_diag) − S(ρ)
template <class Derived>
RealScalarOf<Derived> rel_ent_coherence(const Eigen::MatrixBase<Derived>& rho) {
  using Real = RealScalarOf<Derived>;
  const RealVector<Real> diagonal = rho.diagonal().real();
  return spectral_entropy<Real>(diagonal) - von_neumann_entropy(rho);
}

template <class Real>
Real rel_ent_coherence(const DensityMatrix<Real>& rho) {
  return rel_ent_coherence(rho.matrix());
}

}  // namespace cohdual
