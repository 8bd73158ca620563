#include "cohdual/analysis.hpp"

#include <vector>

#include "cohdual/coherence.hpp"
#include "cohdual/information.hpp"
#include "cohdual/io.hpp"
#include "cohdual/sampling.hpp"
#include "cohdual/version.hpp"

namespace cohdual {
namespace {

std::vector<double> to_std(const RealVector<double>& v) { return {v.data(), v.data() + v.size()}; }

nlohmann::json chain_to_json(const SchwarzChain<double>& c) {
  return {{"ps_achieved", c.ps_achieved},     {"lhs_achieved", c.lhs_achieved},
          {"lhs_bound", c.lhs_bound},         {"pairwise_sum", c.pairwise_sum},
          {"schwarz_bound", c.schwarz_bound}, {"rhs_l1", c.rhs_l1},
          {"worst_slack", c.worst_slack()}};
}

}  // namespace

Analysis analyze(const InterferometerConfig<double>& config, const AnalyzeOptions& options) {
  Analysis a;
  const auto rho = particle_density(config);
  const auto rho_det = detector_density(config);
  const auto ensemble = detector_ensemble(config);

  a.particle_spectrum = eigenvalues_hermitian(rho.matrix());
  a.detector_spectrum = eigenvalues_hermitian(rho_det.matrix());
  a.c_l1 = l1_coherence(rho);
  a.x = normalized_coherence(rho);
  a.ps_bound = success_upper_bound(ensemble);
  a.pgm_success = povm_success_probability(pretty_good_measurement(ensemble), ensemble);
  a.c_rel = rel_ent_coherence(rho);
  a.holevo = holevo_quantity(config);

  AccessibleInfoOptions acc;
  acc.restarts = options.restarts;
  acc.seed = options.seed;
  const auto best = optimize_accessible_info(config, acc);
  a.accessible_info_lower_bound = best.mutual_information;
  a.accessible_info_source = best.source;

  a.reference_povm = best_reference_povm(config).source;
  a.report = duality_report(config);
  a.accessible_report = merge_reports(a.report, entropic_duality_report(config, a.accessible_info_lower_bound));
  a.chain = schwarz_chain_check(config);
  return a;
}

nlohmann::json analysis_to_json(const InterferometerConfig<double>& config, const Analysis& a,
                                const AnalyzeOptions& options) {
  return {{"tool", std::string(kToolName)},
          {"version", std::string(kToolVersion)},
          {"seed", options.seed},
          {"rng", std::string(kRngAlgorithm)},
          {"restarts", options.restarts},
          {"config", io::config_to_json(config)},
          {"n_paths", config.n_paths()},
          {"detector_dim", config.detector_dim()},
          {"particle_spectrum", to_std(a.particle_spectrum)},
          {"detector_spectrum", to_std(a.detector_spectrum)},
          {"x", a.x},
          {"c_l1", a.c_l1},
          {"ps_bound", a.ps_bound},
          {"pgm_success", a.pgm_success},
          {"c_rel", a.c_rel},
          {"holevo", a.holevo},
          {"accessible_info_lower_bound", a.accessible_info_lower_bound},
          {"accessible_info_source", a.accessible_info_source},
          {"reference_povm", a.reference_povm},
          {"report", io::report_to_json(a.report)},
          {"accessible_report", io::report_to_json(a.accessible_report)},
          {"schwarz_chain", chain_to_json(a.chain)}};
}

}  // namespace cohdual
