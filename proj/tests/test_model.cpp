#include <doctest.h>

#include "cohdual/cohdual.hpp"
#include "support/generators.hpp"

using namespace cohdual;

namespace {

ComplexVector vec(std::initializer_list<std::complex<double>> values) {
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (auto x : values) v(k++) = x;
  return v;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("build_config: valid and invalid inputs") {
  const auto ok = build_config<double>({0.5, 0.5}, {vec({1.0, 0.0}), vec({0.0, 1.0})});
  CHECK(ok.n_paths() == 2);
  CHECK(ok.detector_dim() == 2);

  CHECK(kind_of([] { build_config<double>({0.5, 0.6}, {vec({1.0}), vec({1.0})}); }) == ErrorKind::NotNormalized);
  CHECK(kind_of([] { build_config<double>({1.2, -0.2}, {vec({1.0}), vec({1.0})}); }) ==
        ErrorKind::NegativeProbability);
  CHECK(kind_of([] { build_config<double>({0.5, 0.5}, {vec({1.0})}); }) == ErrorKind::LengthMismatch);
  CHECK(kind_of([] { build_config<double>({0.5, 0.5}, {vec({1.0}), vec({1.0, 0.0})}); }) ==
        ErrorKind::LengthMismatch);
  CHECK(kind_of([] { build_config<double>({0.5, 0.5}, {vec({1.0}), vec({0.0})}); }) == ErrorKind::NotNormalized);
  CHECK(kind_of([] { build_config<double>({0.5, 0.5}, {vec({1.0}), vec({0.9})}); }) == ErrorKind::NotNormalized);
  CHECK(kind_of([] { build_config<double>({1.0}, {vec({1.0})}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("build_config: linearly dependent detectors in d = 1") {
  const double third = 1.0 / 3.0;
  const auto c = build_config<double>({third, third, third}, {vec({1.0}), vec({1.0}), vec({1.0})});
  CHECK(c.n_paths() == 3);
  CHECK(c.detector_dim() == 1);
}

TEST_CASE("build_config: repairs within 1e-6 and counts them") {
  BuildStats stats;
  const auto c = build_config<double>({0.5 + 4e-7, 0.5}, {vec({1.0 + 5e-7, 0.0}), vec({0.0, 1.0})}, &stats);
  CHECK(stats.repaired_probabilities == 1);
  CHECK(stats.repaired_states == 1);
  CHECK(std::abs(c.priors()[0] + c.priors()[1] - 1.0) < 1e-15);
  CHECK(std::abs(c.detectors().state(0).norm() - 1.0) < 1e-15);

  BuildStats clean;
  build_config<double>({0.25, 0.75}, {vec({1.0, 0.0}), vec({0.0, 1.0})}, &clean);
  CHECK(clean.repairs() == 0);
}

TEST_CASE("particle_density examples") {
  const auto ortho = build_config<double>({0.2, 0.3, 0.5}, {vec({1.0, 0.0, 0.0}), vec({0.0, 1.0, 0.0}),
                                                            vec({0.0, 0.0, 1.0})});
  const ComplexMatrix rho = particle_density(ortho).matrix();
  CHECK((rho - ComplexMatrix(Eigen::Vector3d(0.2, 0.3, 0.5).cast<std::complex<double>>().asDiagonal()))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // ρ_12 = √(0.25)·0.6 = 0.3
  const auto pair = cohdual::testing::two_path_config(0.5, 0.6);
  const ComplexMatrix r2 = particle_density(pair).matrix();
  CHECK(r2(0, 0).real() == 0.5);
  CHECK(std::abs(r2(0, 1) - 0.3) < 1e-15);
  CHECK(std::abs(r2(1, 0) - 0.3) < 1e-15);

  const std::size_t n = 4;
  std::vector<ComplexVector> same(n, vec({std::complex<double>(0.6, 0.0), std::complex<double>(0.0, 0.8)}));
  const auto identical = build_config<double>(std::vector<double>(n, 0.25), same);
  const ComplexMatrix pure = particle_density(identical).matrix();
  CHECK((pure - ComplexMatrix::Constant(4, 4, 0.25)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("particle_density diagonal is bitwise the priors") {
  RngStream rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto c = sample_config(2 + t % 5, 1 + t % 7, PriorMode::dirichlet(0.7), rng);
    const ComplexMatrix rho = particle_density(c).matrix();
    for (std::size_t i = 0; i < c.n_paths(); ++i) {
      CHECK(rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real() == c.priors()[i]);
      CHECK(rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).imag() == 0.0);
    }
  }
}

TEST_CASE("detector_density examples") {
  const auto pair = cohdual::testing::two_path_config(0.5, 0.6);
  const ComplexMatrix rho = detector_density(pair).matrix();
  // 0.5·diag(1, 0) + 0.5·[[0.36, 0.48], [0.48, 0.64]]
  ComplexMatrix expected(2, 2);
  expected << 0.68, 0.24, 0.24, 0.32;
  CHECK((rho - expected).cwiseAbs().maxCoeff() < 1e-15);

  const auto identical = build_config<double>({0.3, 0.7}, {vec({0.6, 0.8}), vec({0.6, 0.8})});
  CHECK((detector_density(identical).matrix() - outer_projector(vec({0.6, 0.8}))).cwiseAbs().maxCoeff() < 1e-15);

  const auto ortho = build_config<double>({0.3, 0.7}, {vec({1.0, 0.0}), vec({0.0, 1.0})});
  const ComplexMatrix d = detector_density(ortho).matrix();
  CHECK(d(0, 0).real() == doctest::Approx(0.3));
  CHECK(d(1, 1).real() == doctest::Approx(0.7));
  CHECK(std::abs(d(0, 1)) == 0.0);
}

TEST_CASE("reduced states of the joint pure state have equal entropy") {
  RngStream rng(2);
  for (int t = 0; t < 300; ++t) {
    const auto c = sample_config(2 + t % 5, 1 + t % 11, PriorMode::dirichlet(1.0), rng);
    CHECK(std::abs(von_neumann_entropy(particle_density(c)) - von_neumann_entropy(detector_density(c))) <= 1e-8);
  }
}

TEST_CASE("global phases on detector states change no scalar") {
  RngStream rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto c = sample_config(2 + t % 5, 1 + t % 6, PriorMode::dirichlet(1.0), rng);
    std::vector<ComplexVector> rotated;
    for (std::size_t i = 0; i < c.n_paths(); ++i) {
      const double phase = 6.283185307179586 * std::uniform_real_distribution<double>()(rng.engine());
      rotated.push_back(std::polar(1.0, phase) * c.detectors().state(i));
    }
    const auto r = build_config<double>(c.priors().values(), rotated);
    const ComplexMatrix a = particle_density(c).matrix();
    const ComplexMatrix b = particle_density(r).matrix();
    CHECK((a.cwiseAbs() - b.cwiseAbs()).cwiseAbs().maxCoeff() <= 1e-10);
    const auto ra = duality_report(c);
    const auto rb = duality_report(r);
    CHECK(std::abs(ra.x - rb.x) <= 1e-10);
    CHECK(std::abs(ra.ps_bound - rb.ps_bound) <= 1e-10);
    CHECK(std::abs(ra.c_rel - rb.c_rel) <= 1e-10);
    CHECK(std::abs(holevo_quantity(c) - holevo_quantity(r)) <= 1e-10);
  }
}

TEST_CASE("zero-probability paths are allowed") {
  const auto c = build_config<double>({0.0, 0.4, 0.6}, {vec({1.0, 0.0}), vec({0.6, 0.8}), vec({0.0, 1.0})});
  const ComplexMatrix rho = particle_density(c).matrix();
  CHECK(rho.row(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(rho.col(0).cwiseAbs().maxCoeff() == 0.0);
  const auto r = duality_report(c);
  CHECK(r.gap_l1 >= -1e-9);
  CHECK(r.gap_entropic >= -1e-9);
}

TEST_CASE("DensityMatrix rejects invalid matrices") {
  ComplexMatrix bad_trace = ComplexMatrix::Identity(2, 2);
  CHECK(kind_of([&] { DensityMatrix<double>{bad_trace}; }) == ErrorKind::NotNormalized);
  ComplexMatrix negative(2, 2);
  negative << 1.5, 0.0, 0.0, -0.5;
  CHECK(kind_of([&] { DensityMatrix<double>{negative}; }) == ErrorKind::NotPsd);
}

TEST_CASE("validate_povm") {
  const ComplexMatrix e0 = outer_projector(vec({1.0, 0.0}));
  const ComplexMatrix e1 = outer_projector(vec({0.0, 1.0}));
  CHECK(validate_povm(Povm<double>{{e0, e1}}, 2).ok());

  const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  CHECK(validate_povm(Povm<double>{{half, half}}, 2).ok());

  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const auto doubled = validate_povm(Povm<double>{{id, id}}, 2);
  REQUIRE(doubled.violations.size() == 1);
  CHECK(doubled.violations[0].kind == PovmViolationKind::Incomplete);
  CHECK(doubled.violations[0].magnitude == doctest::Approx(1.0));

  ComplexMatrix neg(2, 2);
  neg << 1.5, 0.0, 0.0, -0.5;
  ComplexMatrix rest = id - neg;
  const auto not_psd = validate_povm(Povm<double>{{neg, rest}}, 2);
  REQUIRE(not_psd.violations.size() == 2);
  CHECK(not_psd.violations[0].kind == PovmViolationKind::NotPsd);
  CHECK(not_psd.violations[0].element == 0);

  CHECK(validate_povm(Povm<double>{{ComplexMatrix::Identity(3, 3)}}, 2).violations.at(0).kind ==
        PovmViolationKind::WrongDimension);
  CHECK(validate_povm(Povm<double>{}, 2).violations.at(0).kind == PovmViolationKind::Empty);
}
