#include <doctest.h>

#include <numbers>

#include "cohdual/cohdual.hpp"
#include "support/generators.hpp"

using namespace cohdual;
using cohdual::testing::binary_entropy;
using cohdual::testing::merge_outcomes;
using cohdual::testing::mutual_information_oracle;
using cohdual::testing::orthonormal_config;
using cohdual::testing::state_projectors;
using cohdual::testing::two_path_config;

namespace {

JointDistribution<double> table(std::initializer_list<std::initializer_list<double>> rows) {
  RealMatrix<double> t(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) t(r, c++) = v;
    ++r;
  }
  return JointDistribution<double>(t);
}

/// Max of H(M:D) over projective measurements {|b⟩⟨b|, I − |b⟩⟨b|} in C²,
/// b = (cos θ, e^{iφ} sin θ), on a grid, refined once around the best cell.
double projective_grid_oracle(const InterferometerConfig<double>& c) {
  const auto pi = std::numbers::pi;
  auto mi_at = [&](double theta, double phi) {
    ComplexVector b(2);
    b << std::cos(theta), std::polar(std::sin(theta), phi);
    std::vector<std::vector<double>> t(2, std::vector<double>(2));
    for (std::size_t j = 0; j < 2; ++j) {
      const double hit = std::norm(b.dot(c.detectors().state(j)));
      t[0][j] = c.priors()[j] * hit;
      t[1][j] = c.priors()[j] * (1.0 - hit);
    }
    return mutual_information_oracle(t);
  };
  double best = -1, best_theta = 0, best_phi = 0;
  const int steps = 400;
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b < steps; ++b) {
      const double theta = pi / 2 * a / steps, phi = 2 * pi * b / steps;
      const double v = mi_at(theta, phi);
      if (v > best) best = v, best_theta = theta, best_phi = phi;
    }
  }
  const double h_theta = pi / 2 / steps, h_phi = 2 * pi / steps;
  for (int a = -200; a <= 200; ++a) {
    for (int b = -200; b <= 200; ++b) {
      best = std::max(best, mi_at(best_theta + h_theta * a / 200.0, best_phi + h_phi * b / 200.0));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("joint_distribution examples") {
  RngStream rng(40);
  const PathDistribution<double> p({0.2, 0.3, 0.5});
  const auto ortho = orthonormal_config(p, 4, rng);
  const auto diag = joint_distribution(state_projectors(ortho), ortho);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      CHECK(std::abs(diag.table()(i, j) - (i == j ? p[static_cast<std::size_t>(j)] : 0.0)) < 1e-14);
    }
  }

  Povm<double> guessing;
  for (int i = 0; i < 3; ++i) guessing.elements.push_back(ComplexMatrix::Identity(4, 4) / 3.0);
  const auto product = joint_distribution(guessing, ortho);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      CHECK(product.table()(i, j) == doctest::Approx(p[static_cast<std::size_t>(j)] / 3.0));
    }
  }

  // Helstrom error probability ½(1 − 0.8) = 0.1, split symmetrically.
  const auto pair = two_path_config(0.5, 0.6);
  const auto bsc = joint_distribution(helstrom_povm_two(detector_ensemble(pair)), pair);
  CHECK(bsc.table()(0, 0) == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(bsc.table()(0, 1) == doctest::Approx(0.05).epsilon(1e-13));
  CHECK(bsc.table()(1, 0) == doctest::Approx(0.05).epsilon(1e-13));
  CHECK(bsc.table()(1, 1) == doctest::Approx(0.45).epsilon(1e-14));

  Povm<double> wrong_dim{{ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2)}};
  CHECK_THROWS_AS(joint_distribution(wrong_dim, ortho), Error);
}

TEST_CASE("JointDistribution clamps rounding negatives and rejects real ones") {
  const auto t = table({{0.5, -1e-13}, {1e-13, 0.5}});
  CHECK(t.table()(0, 1) == 0.0);
  CHECK_THROWS_AS(table({{0.6, -1e-6}, {0.0, 0.4 + 1e-6}}), Error);
  CHECK_THROWS_AS(table({{0.6, 0.0}, {0.0, 0.6}}), Error);
}

TEST_CASE("mutual_information examples") {
  for (Eigen::Index n = 2; n <= 6; ++n) {
    RealMatrix<double> d = RealMatrix<double>::Identity(n, n) / static_cast<double>(n);
    CHECK(mutual_information(JointDistribution<double>(d)) ==
          doctest::Approx(std::log2(static_cast<double>(n))).epsilon(1e-14));
  }
  CHECK(std::abs(mutual_information(table({{0.06, 0.14}, {0.24, 0.56}}))) < 1e-14);

  const double oracle = 1.0 - binary_entropy(0.1);
  CHECK(std::abs(mutual_information(table({{0.45, 0.05}, {0.05, 0.45}})) - oracle) < 1e-14);
  CHECK(oracle == doctest::Approx(0.531004406411));
}

TEST_CASE("mutual_information agrees with the direct oracle") {
  RngStream rng(41);
  for (int t = 0; t < 200; ++t) {
    const auto c = sample_config(2 + t % 5, 1 + t % 8, PriorMode::dirichlet(1.0), rng);
    const auto joint = joint_distribution(sample_random_povm(c.n_paths(), c.detector_dim(), rng), c);
    std::vector<std::vector<double>> raw(static_cast<std::size_t>(joint.outcomes()));
    for (Eigen::Index i = 0; i < joint.outcomes(); ++i) {
      for (Eigen::Index j = 0; j < joint.labels(); ++j) raw[static_cast<std::size_t>(i)].push_back(joint.table()(i, j));
    }
    CHECK(std::abs(mutual_information(joint) - mutual_information_oracle(raw)) <= 1e-12);
  }
}

TEST_CASE("holevo_quantity examples") {
  RngStream rng(42);
  const ComplexVector s = sample_haar_state(3, rng);
  const auto same = build_config<double>({0.2, 0.3, 0.5}, std::vector<ComplexVector>(3, s));
  CHECK(std::abs(holevo_quantity(same)) < 1e-12);

  const PathDistribution<double> p({0.1, 0.2, 0.3, 0.4});
  const auto ortho = orthonormal_config(p, 6, rng);
  CHECK(holevo_quantity(ortho) == doctest::Approx(shannon_entropy(p)).epsilon(1e-12));

  CHECK(std::abs(holevo_quantity(two_path_config(0.5, 0.6)) - binary_entropy(0.2)) < 1e-14);
  // Ensemble form agrees with the pure-state shortcut.
  const auto c = sample_config(4, 3, PriorMode::dirichlet(1.0), rng);
  CHECK(std::abs(holevo_quantity(detector_ensemble(c)) - holevo_quantity(c)) < 1e-12);
}

TEST_CASE("mutual information never exceeds the Holevo quantity; column marginals are the priors") {
  RngStream rng(43);
  for (int t = 0; t < 200; ++t) {
    const auto c = sample_config(2 + t % 5, 1 + t % 10, PriorMode::dirichlet(1.0), rng);
    const double chi = holevo_quantity(c);
    std::vector<Povm<double>> povms{pretty_good_measurement(detector_ensemble(c))};
    for (int k = 0; k < 4; ++k) povms.push_back(sample_random_povm(c.n_paths(), c.detector_dim(), rng));
    for (const auto& povm : povms) {
      const auto joint = joint_distribution(povm, c);
      const double mi = mutual_information(joint);
      CHECK(mi <= chi + 1e-9);
      CHECK(mi >= -1e-9);
      CHECK(mi <= shannon_entropy(c.priors()) + 1e-9);
      const RealVector<double> cols = joint.label_marginal();
      for (std::size_t j = 0; j < c.n_paths(); ++j) CHECK(std::abs(cols(static_cast<Eigen::Index>(j)) - c.priors()[j]) <= 1e-9);
    }
  }
}

TEST_CASE("merging outcomes never increases mutual information") {
  RngStream rng(44);
  for (int t = 0; t < 200; ++t) {
    const auto c = sample_config(3 + t % 4, 1 + t % 8, PriorMode::dirichlet(1.0), rng);
    const auto povm = sample_random_povm(c.n_paths(), c.detector_dim(), rng);
    const double before = mutual_information(joint_distribution(povm, c));
    const std::size_t a = rng.engine()() % c.n_paths();
    const std::size_t b = (a + 1 + rng.engine()() % (c.n_paths() - 1)) % c.n_paths();
    const double after = mutual_information(joint_distribution(merge_outcomes(povm, a, b), detector_ensemble(c)));
    CHECK(after <= before + 1e-9);
  }
}

TEST_CASE("accessible_info_lower_bound examples") {
  RngStream rng(45);
  const PathDistribution<double> p({0.1, 0.2, 0.3, 0.4});
  const auto ortho = orthonormal_config(p, 5, rng);
  CHECK(accessible_info_lower_bound(ortho, 8, 42) == doctest::Approx(shannon_entropy(p)).epsilon(1e-10));

  const ComplexVector s = sample_haar_state(3, rng);
  const auto same = build_config<double>({0.2, 0.3, 0.5}, std::vector<ComplexVector>(3, s));
  CHECK(std::abs(accessible_info_lower_bound(same, 8, 42)) < 1e-10);

  const auto pair = two_path_config(0.5, 0.6);
  const double oracle = projective_grid_oracle(pair);
  const double lb = accessible_info_lower_bound(pair, 8, 42);
  CHECK(lb >= oracle - 1e-9);
  CHECK(lb <= holevo_quantity(pair) + 1e-9);
  CHECK(std::abs(lb - (1.0 - binary_entropy(0.1))) < 1e-9);
  CHECK(std::abs(oracle - (1.0 - binary_entropy(0.1))) < 1e-8);
}

TEST_CASE("accessible information search: deterministic, monotone in restarts, below Holevo") {
  RngStream rng(46);
  for (int t = 0; t < 12; ++t) {
    const auto c = sample_config(2 + t % 5, 1 + t % 7, PriorMode::dirichlet(1.0), rng);
    double previous = -1.0;
    for (std::size_t restarts : {0, 1, 2, 4, 8}) {
      const double v = accessible_info_lower_bound(c, restarts, 7);
      CHECK(v >= previous);
      CHECK(v <= holevo_quantity(c) + 1e-9);
      previous = v;
    }
    CHECK(accessible_info_lower_bound(c, 4, 7) == accessible_info_lower_bound(c, 4, 7));
    CHECK(accessible_info_lower_bound(c, 4, 7) >= best_reference_povm(c).mutual_information);
    const auto best = optimize_accessible_info(c, AccessibleInfoOptions{4, 7});
    CHECK(validate_povm(best.povm, c.detector_dim()).ok());
  }
}
