#pragma once

// Reproducible random configurations. Every random object is drawn from an
// RngStream whose seed is derived from (master seed, path of indices), so a
// sweep gives the same samples regardless of evaluation order.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "cohdual/linalg.hpp"
#include "cohdual/model.hpp"
#include "cohdual/povm.hpp"

namespace cohdual {

/// Recorded in every sweep artifact so CSV output can be replayed.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64/v1";

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for a path of indices below a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = splitmix64(seed);
  for (const std::uint64_t index : path) h = splitmix64(h ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  return h;
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path = {})
      : engine_(derive_seed(seed, path)) {}

  double normal() { return normal_(engine_); }
  double gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(engine_); }
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Matrix of i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1)).
template <class Real = double>
Matrix<Real> sample_ginibre(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
  Matrix<Real> m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const Real re = static_cast<Real>(rng.normal());
      const Real im = static_cast<Real>(rng.normal());
      m(r, c) = Complex<Real>(re, im);
    }
  }
  return m;
}

/// Haar-random unit vector: normalized complex Gaussian.
template <class Real = double>
Vector<Real> sample_haar_state(Eigen::Index dim, RngStream& rng) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "state dimension must be positive");
  Vector<Real> v = sample_ginibre<Real>(dim, 1, rng);
  Real norm = v.norm();
  while (norm == Real(0)) {
    v = sample_ginibre<Real>(dim, 1, rng);
    norm = v.norm();
  }
  return v / norm;
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of R's diagonal removed.
template <class Real = double>
Matrix<Real> sample_haar_unitary(Eigen::Index dim, RngStream& rng) {
  const Eigen::HouseholderQR<Matrix<Real>> qr(sample_ginibre<Real>(dim, dim, rng));
  Matrix<Real> q = qr.householderQ();
  const Matrix<Real>& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Real mag = std::abs(r(k, k));
    if (mag > Real(0)) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

template <class Real = double>
PathDistribution<Real> sample_dirichlet(std::size_t n, Real alpha, RngStream& rng) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "Dirichlet sampling needs n >= 2");
  if (!(alpha > Real(0))) throw Error(ErrorKind::InvalidArgument, "Dirichlet concentration must be positive");
  std::vector<Real> draws(n);
  Real total = 0;
  while (!(total > Real(0))) {
    total = 0;
    for (auto& g : draws) {
      g = static_cast<Real>(rng.gamma(static_cast<double>(alpha)));
      total += g;
    }
  }
  for (auto& g : draws) g /= total;
  return PathDistribution<Real>(std::move(draws));
}

struct PriorMode {
  enum class Kind { Uniform, Dirichlet };
  Kind kind = Kind::Dirichlet;
  double alpha = 1.0;

  static PriorMode uniform() { return {Kind::Uniform, 1.0}; }
  static PriorMode dirichlet(double alpha) { return {Kind::Dirichlet, alpha}; }
};

/// n Haar detector states in dimension d with priors drawn per `mode`.
template <class Real = double>
InterferometerConfig<Real> sample_config(std::size_t n, Eigen::Index d, const PriorMode& mode, RngStream& rng) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "configurations need n >= 2");
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "detector dimension must be positive");
  std::vector<Real> probs = mode.kind == PriorMode::Kind::Uniform
                                ? PathDistribution<Real>::uniform(n).values()
                                : sample_dirichlet<Real>(n, static_cast<Real>(mode.alpha), rng).values();
  std::vector<Vector<Real>> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) states.push_back(sample_haar_state<Real>(d, rng));
  return build_config<Real>(probs, states);
}

/// Random full-rank POVM: Π_i = S^{-1/2} B_i S^{-1/2}, B_i = G_i G_i^†, S = Σ B_i.
template <class Real = double>
Povm<Real> sample_random_povm(std::size_t n_outcomes, Eigen::Index dim, RngStream& rng) {
  std::vector<Matrix<Real>> raw;
  raw.reserve(n_outcomes);
  Matrix<Real> total = Matrix<Real>::Zero(dim, dim);
  for (std::size_t i = 0; i < n_outcomes; ++i) {
    const Matrix<Real> g = sample_ginibre<Real>(dim, dim, rng);
    raw.push_back(g * g.adjoint());
    total += raw.back();
  }
  const Matrix<Real> inv_sqrt = pinv_sqrt(total);
  Povm<Real> povm;
  povm.elements.reserve(n_outcomes);
  for (const auto& b : raw) {
    Matrix<Real> element = inv_sqrt * b * inv_sqrt;
    povm.elements.push_back((element + element.adjoint()) / Real(2));
  }
  return povm;
}

/// Grid of (N, d) cells with a fixed number of samples per cell.
struct SweepSpec {
  std::size_t n_min = 2;
  std::size_t n_max = 6;
  Eigen::Index d_min = 1;
  std::optional<Eigen::Index> d_max;  // unset: 2N for each N
  std::size_t samples = 100;
  std::uint64_t seed = 42;
  PriorMode priors = PriorMode::dirichlet(1.0);

  void validate() const {
    if (n_min < 2 || n_max < n_min) throw Error(ErrorKind::InvalidArgument, "empty or invalid N range");
    if (d_min < 1) throw Error(ErrorKind::InvalidArgument, "detector dimension must be positive");
    if (d_max && *d_max < d_min) throw Error(ErrorKind::InvalidArgument, "empty d range");
    if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
    if (priors.kind == PriorMode::Kind::Dirichlet && !(priors.alpha > 0)) {
      throw Error(ErrorKind::InvalidArgument, "Dirichlet concentration must be positive");
    }
  }

  /// Cells in row-major (N, then d) order; a cell index is its position here.
  std::vector<std::pair<std::size_t, Eigen::Index>> cells() const {
    std::vector<std::pair<std::size_t, Eigen::Index>> out;
    for (std::size_t n = n_min; n <= n_max; ++n) {
      const Eigen::Index hi = d_max.value_or(static_cast<Eigen::Index>(2 * n));
      for (Eigen::Index d = d_min; d <= hi; ++d) out.emplace_back(n, d);
    }
    return out;
  }
};

}  // namespace cohdual
