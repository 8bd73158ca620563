#pragma once

// Both coherence/path-information duality relations for one configuration:
//   l1:       (P_s − 1/N)² + X² ≤ (1 − 1/N)²
//   entropic: C_rel + H(M:D) ≤ H({p})
// Gaps are signed (rhs − lhs) so sweeps can report the worst slack.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cohdual/coherence.hpp"
#include "cohdual/discrimination.hpp"
#include "cohdual/information.hpp"
#include "cohdual/model.hpp"

namespace cohdual {

/// A violation below -1e-9 is a math bug, not float noise.
inline constexpr double kGapTol = 1e-9;

/// Fields not computed by a partial report are NaN.
template <class Real>
struct DualityReport {
  static constexpr Real unset() { return std::numeric_limits<Real>::quiet_NaN(); }

  std::size_t n_paths = 0;
  Real x = unset();
  Real c_l1 = unset();
  Real ps_bound = unset();
  Real lhs_l1 = unset();
  Real rhs_l1 = unset();
  Real gap_l1 = unset();
  Real c_rel = unset();
  Real mi = unset();
  Real h_priors = unset();
  Real gap_entropic = unset();
};

template <class Real>
DualityReport<Real> l1_duality_report(const InterferometerConfig<Real>& config) {
  const Real n = static_cast<Real>(config.n_paths());
  const auto rho = particle_density(config);
  DualityReport<Real> r;
  r.n_paths = config.n_paths();
  r.c_l1 = l1_coherence(rho);
  r.x = r.c_l1 / n;
  r.ps_bound = success_upper_bound(config);
  const Real excess = r.ps_bound - Real(1) / n;
  r.lhs_l1 = excess * excess + r.x * r.x;
  const Real radius = Real(1) - Real(1) / n;
  r.rhs_l1 = radius * radius;
  r.gap_l1 = r.rhs_l1 - r.lhs_l1;
  return r;
}

namespace detail {
template <class Real>
DualityReport<Real> entropic_from_mi(const InterferometerConfig<Real>& config, Real mi) {
  DualityReport<Real> r;
  r.n_paths = config.n_paths();
  r.c_rel = rel_ent_coherence(particle_density(config));
  r.mi = mi;
  r.h_priors = shannon_entropy(config.priors());
  r.gap_entropic = r.h_priors - r.c_rel - r.mi;
  return r;
}
}  // namespace detail

template <class Real>
DualityReport<Real> entropic_duality_report(const InterferometerConfig<Real>& config, const Povm<Real>& povm) {
  return detail::entropic_from_mi(config, mutual_information(joint_distribution(povm, config)));
}

/// Entropic report with the mutual information replaced by an accessible-information lower bound.
template <class Real>
DualityReport<Real> entropic_duality_report(const InterferometerConfig<Real>& config, Real mutual_info) {
  return detail::entropic_from_mi(config, mutual_info);
}

template <class Real>
DualityReport<Real> merge_reports(const DualityReport<Real>& l1, const DualityReport<Real>& entropic) {
  DualityReport<Real> r = l1;
  r.c_rel = entropic.c_rel;
  r.mi = entropic.mi;
  r.h_priors = entropic.h_priors;
  r.gap_entropic = entropic.gap_entropic;
  return r;
}

template <class Real>
DualityReport<Real> duality_report(const InterferometerConfig<Real>& config, const Povm<Real>& povm) {
  return merge_reports(l1_duality_report(config), entropic_duality_report(config, povm));
}

/// Full report using the best closed-form measurement (pretty-good, or Helstrom for N = 2).
template <class Real>
DualityReport<Real> duality_report(const InterferometerConfig<Real>& config) {
  return merge_reports(l1_duality_report(config),
                       entropic_duality_report(config, best_reference_povm(config).mutual_information));
}

/// Each link of the l1 derivation evaluated numerically. With pair vectors
/// v_ij = (‖Λ_ij‖_1 / 2, √(p_i p_j) |⟨η_i|η_j⟩|):
///   lhs_achieved  (P_s − 1/N)² + X² for the best concrete measurement
///   lhs_bound     the same with P_s replaced by the upper bound
///   pairwise_sum  (1/N²) Σ_{i≠j} Σ_{k≠l} ⟨v_ij|v_kl⟩
///   schwarz_bound (1/N²) (Σ_{i≠j} |v_ij|)²
///   rhs_l1        (1 − 1/N)²
template <class Real>
struct SchwarzChain {
  Real ps_achieved = 0;
  Real lhs_achieved = 0;
  Real lhs_bound = 0;
  Real pairwise_sum = 0;
  Real schwarz_bound = 0;
  Real rhs_l1 = 0;

  Real slack_bound() const { return lhs_bound - lhs_achieved; }
  Real slack_pairwise() const { return pairwise_sum - lhs_bound; }
  Real slack_schwarz() const { return schwarz_bound - pairwise_sum; }
  Real slack_closed_form() const { return rhs_l1 - schwarz_bound; }
  Real worst_slack() const {
    return std::min({slack_bound(), slack_pairwise(), slack_schwarz(), slack_closed_form()});
  }
};

template <class Real>
SchwarzChain<Real> schwarz_chain_check(const InterferometerConfig<Real>& config) {
  const std::size_t n = config.n_paths();
  const Real inv_n = Real(1) / static_cast<Real>(n);
  const auto ensemble = detector_ensemble(config);
  const Matrix<Real> gram = config.detectors().gram();

  std::vector<Real> half_norm;  // ‖Λ_ij‖_1 / 2 over ordered pairs i ≠ j
  std::vector<Real> weighted_overlap;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      half_norm.push_back(trace_norm(helstrom_matrix(ensemble, i, j)) / Real(2));
      weighted_overlap.push_back(std::sqrt(config.priors()[i] * config.priors()[j]) *
                                 std::abs(gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    }
  }

  SchwarzChain<Real> chain;
  const auto l1 = l1_duality_report(config);
  chain.lhs_bound = l1.lhs_l1;
  chain.rhs_l1 = l1.rhs_l1;

  // Always-guess-the-likeliest-path is a valid measurement, so P_s ≥ max p_i ≥ 1/N.
  Real ps = *std::max_element(config.priors().values().begin(), config.priors().values().end());
  ps = std::max(ps, povm_success_probability(pretty_good_measurement(ensemble), ensemble));
  if (n == 2) ps = std::max(ps, povm_success_probability(helstrom_povm_two(ensemble), ensemble));
  chain.ps_achieved = ps;
  chain.lhs_achieved = (ps - inv_n) * (ps - inv_n) + l1.x * l1.x;

  Real pairwise = 0;
  Real norms = 0;
  for (std::size_t a = 0; a < half_norm.size(); ++a) {
    for (std::size_t b = 0; b < half_norm.size(); ++b) {
      pairwise += half_norm[a] * half_norm[b] + weighted_overlap[a] * weighted_overlap[b];
    }
    norms += std::hypot(half_norm[a], weighted_overlap[a]);
  }
  chain.pairwise_sum = inv_n * inv_n * pairwise;
  chain.schwarz_bound = inv_n * inv_n * norms * norms;
  return chain;
}

}  // namespace cohdual
