#pragma once

#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cohdual/linalg.hpp"

namespace cohdual {

inline constexpr double kPovmPsdTol = 1e-9;
inline constexpr double kPovmCompletenessTol = 1e-8;

/// Plain container of measurement elements. Not validated on construction;
/// call validate_povm before trusting one built from untrusted input.
template <class Real>
struct Povm {
  std::vector<Matrix<Real>> elements;

  std::size_t size() const noexcept { return elements.size(); }
  Eigen::Index dim() const noexcept { return elements.empty() ? 0 : elements.front().rows(); }
  const Matrix<Real>& operator[](std::size_t i) const { return elements[i]; }
};

enum class PovmViolationKind { Empty, WrongDimension, NotHermitian, NotPsd, Incomplete };

struct PovmViolation {
  static constexpr std::size_t kAllElements = std::numeric_limits<std::size_t>::max();

  PovmViolationKind kind;
  std::size_t element;  // kAllElements for completeness / emptiness
  double magnitude;
  std::string message;
};

struct PovmValidation {
  std::vector<PovmViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Reports (never throws) elements that are not Hermitian PSD within 1e-9 and
/// a completeness defect ‖Σ Π_i − I‖_max above 1e-8.
template <class Real>
PovmValidation validate_povm(const Povm<Real>& povm, Eigen::Index dim) {
  PovmValidation out;
  auto report = [&](PovmViolationKind kind, std::size_t element, double magnitude, std::string msg) {
    out.violations.push_back({kind, element, magnitude, std::move(msg)});
  };
  if (povm.elements.empty()) {
    report(PovmViolationKind::Empty, PovmViolation::kAllElements, 0.0, "POVM has no elements");
    return out;
  }
  Matrix<Real> total = Matrix<Real>::Zero(dim, dim);
  bool shapes_ok = true;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const auto& element = povm.elements[i];
    if (element.rows() != dim || element.cols() != dim) {
      std::ostringstream os;
      os << "element " << i << " is " << element.rows() << "x" << element.cols() << ", expected " << dim;
      report(PovmViolationKind::WrongDimension, i, 0.0, os.str());
      shapes_ok = false;
      continue;
    }
    const Real defect = hermiticity_defect(element);
    if (!(defect <= Real(kPovmPsdTol))) {
      std::ostringstream os;
      os << "element " << i << " hermiticity defect " << defect;
      report(PovmViolationKind::NotHermitian, i, static_cast<double>(defect), os.str());
    } else {
      const Real smallest = eigenvalues_hermitian(element, Real(kPovmPsdTol))(0);
      if (smallest < -Real(kPovmPsdTol)) {
        std::ostringstream os;
        os << "element " << i << " has eigenvalue " << smallest;
        report(PovmViolationKind::NotPsd, i, static_cast<double>(-smallest), os.str());
      }
    }
    total += element;
  }
  if (shapes_ok) {
    const Real defect = (total - Matrix<Real>::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (!(defect <= Real(kPovmCompletenessTol))) {
      std::ostringstream os;
      os << "max |sum - I| = " << defect;
      report(PovmViolationKind::Incomplete, PovmViolation::kAllElements, static_cast<double>(defect), os.str());
    }
  }
  return out;
}

}  // namespace cohdual
