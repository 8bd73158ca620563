#pragma once

// Dense complex-Hermitian kernel. Every function is a pure template over
// Eigen expressions; the scalar type of the result follows the real scalar
// of the argument (double, long double, ...).

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "cohdual/errors.hpp"

namespace cohdual {

template <class Real>
using Complex = std::complex<Real>;
template <class Real>
using Matrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using Vector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <class Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <class Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

using ComplexMatrix = Matrix<double>;
using ComplexVector = Vector<double>;

template <class Derived>
using RealScalarOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

inline constexpr double kHermiticityTol = 1e-9;
/// Pseudo-inverse cutoff, relative to the largest eigenvalue.
inline constexpr double kRankTol = 1e-12;

template <class Real>
struct EigenDecomposition {
  RealVector<Real> eigenvalues;  // ascending
  Matrix<Real> eigenvectors;     // columns, unitary
};

template <class Derived>
RealScalarOf<Derived> hermiticity_defect(const Eigen::MatrixBase<Derived>& h) {
  using Real = RealScalarOf<Derived>;
  const Matrix<Real> m = h.template cast<Complex<Real>>();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace detail {

/// Validates shape, finiteness and hermiticity, then returns (H + H^†)/2.
template <class Derived>
Matrix<RealScalarOf<Derived>> symmetrized(const Eigen::MatrixBase<Derived>& h,
                                          RealScalarOf<Derived> hermiticity_tol) {
  using Real = RealScalarOf<Derived>;
  if (h.rows() == 0 || h.cols() == 0) {
    throw Error(ErrorKind::EmptyMatrix, "dimension-zero matrix");
  }
  if (h.rows() != h.cols()) {
    std::ostringstream os;
    os << "matrix is " << h.rows() << "x" << h.cols();
    throw Error(ErrorKind::NotSquare, os.str());
  }
  const Matrix<Real> m = h.template cast<Complex<Real>>();
  if (!m.allFinite()) {
    throw Error(ErrorKind::NotFinite, "matrix has NaN or Inf entries");
  }
  const Real defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > hermiticity_tol) {
    std::ostringstream os;
    os << "max |H - H^dagger| = " << defect << " exceeds " << hermiticity_tol;
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  return (m + m.adjoint()) / Real(2);
}

}  // namespace detail

template <class Derived>
EigenDecomposition<RealScalarOf<Derived>> eig_hermitian(
    const Eigen::MatrixBase<Derived>& h,
    RealScalarOf<Derived> hermiticity_tol = RealScalarOf<Derived>(kHermiticityTol)) {
  using Real = RealScalarOf<Derived>;
  const Eigen::SelfAdjointEigenSolver<Matrix<Real>> solver(detail::symmetrized(h, hermiticity_tol));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::DomainError, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Eigenvalues only, ascending. Cheaper than eig_hermitian when vectors are unused.
template <class Derived>
RealVector<RealScalarOf<Derived>> eigenvalues_hermitian(
    const Eigen::MatrixBase<Derived>& h,
    RealScalarOf<Derived> hermiticity_tol = RealScalarOf<Derived>(kHermiticityTol)) {
  using Real = RealScalarOf<Derived>;
  const Eigen::SelfAdjointEigenSolver<Matrix<Real>> solver(detail::symmetrized(h, hermiticity_tol),
                                                           Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::DomainError, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

/// Sum of absolute eigenvalues.
template <class Derived>
RealScalarOf<Derived> trace_norm(
    const Eigen::MatrixBase<Derived>& h,
    RealScalarOf<Derived> hermiticity_tol = RealScalarOf<Derived>(kHermiticityTol)) {
  return eigenvalues_hermitian(h, hermiticity_tol).cwiseAbs().sum();
}

/// Tr(H_+): sum of the strictly positive eigenvalues.
template <class Derived>
RealScalarOf<Derived> positive_part_trace(
    const Eigen::MatrixBase<Derived>& h,
    RealScalarOf<Derived> hermiticity_tol = RealScalarOf<Derived>(kHermiticityTol)) {
  using Real = RealScalarOf<Derived>;
  return eigenvalues_hermitian(h, hermiticity_tol).cwiseMax(Real(0)).sum();
}

/// Projector onto the span of eigenvectors with eigenvalue > zero_tol.
/// Eigenvalues in [-zero_tol, zero_tol] count as zero and are excluded.
template <class Derived>
Matrix<RealScalarOf<Derived>> positive_part_projector(
    const Eigen::MatrixBase<Derived>& h, RealScalarOf<Derived> zero_tol,
    RealScalarOf<Derived> hermiticity_tol = RealScalarOf<Derived>(kHermiticityTol)) {
  using Real = RealScalarOf<Derived>;
  const auto eig = eig_hermitian(h, hermiticity_tol);
  const Eigen::Index dim = eig.eigenvalues.size();
  Matrix<Real> proj = Matrix<Real>::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (eig.eigenvalues(k) > zero_tol) {
      proj.noalias() += eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint();
    }
  }
  return proj;
}

/// Σ_{λ_k > cutoff} λ_k^{-1/2} |v_k⟩⟨v_k| with cutoff = rank_tol · λ_max.
/// Throws NotPsd if any eigenvalue is below -cutoff.
template <class Derived>
Matrix<RealScalarOf<Derived>> pinv_sqrt(
    const Eigen::MatrixBase<Derived>& m,
    RealScalarOf<Derived> rank_tol = RealScalarOf<Derived>(kRankTol),
    RealScalarOf<Derived> hermiticity_tol = RealScalarOf<Derived>(kHermiticityTol)) {
  using Real = RealScalarOf<Derived>;
  const auto eig = eig_hermitian(m, hermiticity_tol);
  const Eigen::Index dim = eig.eigenvalues.size();
  const Real largest = std::max(eig.eigenvalues(dim - 1), Real(0));
  const Real cutoff = rank_tol * largest;
  if (eig.eigenvalues(0) < -cutoff) {
    std::ostringstream os;
    os << "eigenvalue " << eig.eigenvalues(0) << " below -" << cutoff;
    throw Error(ErrorKind::NotPsd, os.str());
  }
  Matrix<Real> out = Matrix<Real>::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Real lambda = eig.eigenvalues(k);
    if (lambda > cutoff && lambda > Real(0)) {
      out.noalias() += (Real(1) / std::sqrt(lambda)) * eig.eigenvectors.col(k) *
                       eig.eigenvectors.col(k).adjoint();
    }
  }
  return out;
}

/// |v⟩⟨v|
template <class Derived>
Matrix<RealScalarOf<Derived>> outer_projector(const Eigen::MatrixBase<Derived>& v) {
  using Real = RealScalarOf<Derived>;
  const Vector<Real> w = v.template cast<Complex<Real>>();
  return w * w.adjoint();
}

}  // namespace cohdual
