#pragma once

// JSON configuration files and report serialization (JSON and CSV).
//
// Config schema:
//   {"probs": [p_1, ...],
//    "detectors": {"dim": d, "states": [[[re, im], ...], ...]}}

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cohdual/duality.hpp"
#include "cohdual/model.hpp"

namespace cohdual::io {

inline constexpr std::string_view kCsvHeader =
    "param,x,ps_bound,lhs_l1,rhs_l1,gap_l1,c_rel,mi,h_priors,gap_entropic";

/// Malformed JSON or a schema violation. `location` is "line L, column C" for
/// syntax errors and a JSON path such as "detectors.states[1][0]" otherwise.
class InputError : public std::runtime_error {
 public:
  InputError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// Parses and validates a configuration. Throws InputError for syntax/schema
/// problems and cohdual::Error when the values fail validation.
InterferometerConfig<double> parse_config(std::string_view text);
InterferometerConfig<double> load_config(const std::string& path);

nlohmann::json config_to_json(const InterferometerConfig<double>& config);
nlohmann::json report_to_json(const DualityReport<double>& report);

/// 17 significant digits, '.' decimal point, independent of the C locale.
std::string format_double(double value);
std::string csv_row(double param, const DualityReport<double>& report);

}  // namespace cohdual::io
