#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cohdual/duality.hpp"
#include "cohdual/model.hpp"

namespace cohdual {

struct AnalyzeOptions {
  std::size_t restarts = 8;
  std::uint64_t seed = 42;
};

/// Everything the CLI reports for one configuration.
struct Analysis {
  RealVector<double> particle_spectrum;
  RealVector<double> detector_spectrum;
  double x = 0;
  double c_l1 = 0;
  double ps_bound = 0;
  double pgm_success = 0;
  double c_rel = 0;
  double holevo = 0;
  double accessible_info_lower_bound = 0;
  std::string accessible_info_source;
  std::string reference_povm;
  DualityReport<double> report;             // mi from the reference measurement
  DualityReport<double> accessible_report;  // mi replaced by the accessible-info lower bound
  SchwarzChain<double> chain;

  bool holds(double tolerance) const {
    return report.gap_l1 >= -tolerance && report.gap_entropic >= -tolerance;
  }
};

Analysis analyze(const InterferometerConfig<double>& config, const AnalyzeOptions& options = {});
nlohmann::json analysis_to_json(const InterferometerConfig<double>& config, const Analysis& analysis,
                                const AnalyzeOptions& options);

}  // namespace cohdual
