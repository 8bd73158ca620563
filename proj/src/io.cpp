#include "cohdual/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace cohdual::io {
namespace {

using nlohmann::json;

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  std::ostringstream os;
  os << "line " << line << ", column " << column;
  return os.str();
}

const char* type_name(const json& j) { return j.type_name(); }

double expect_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw InputError(path, std::string("expected a number, got ") + type_name(j));
  return j.get<double>();
}

const json& expect_member(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

}  // namespace

InterferometerConfig<double> parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw InputError(line_column(text, byte), "malformed JSON");
  }
  if (!doc.is_object()) throw InputError("$", std::string("expected an object, got ") + type_name(doc));

  const json& probs_json = expect_member(doc, "probs", "");
  if (!probs_json.is_array()) throw InputError("probs", "expected an array");
  std::vector<double> probs;
  for (std::size_t i = 0; i < probs_json.size(); ++i) {
    probs.push_back(expect_number(probs_json[i], "probs[" + std::to_string(i) + "]"));
  }

  const json& det = expect_member(doc, "detectors", "");
  if (!det.is_object()) throw InputError("detectors", "expected an object");
  const json& dim_json = expect_member(det, "dim", "detectors");
  if (!dim_json.is_number_integer() || dim_json.get<long long>() < 1) {
    throw InputError("detectors.dim", "expected a positive integer");
  }
  const auto dim = static_cast<Eigen::Index>(dim_json.get<long long>());
  const json& states_json = expect_member(det, "states", "detectors");
  if (!states_json.is_array()) throw InputError("detectors.states", "expected an array");

  std::vector<ComplexVector> states;
  for (std::size_t i = 0; i < states_json.size(); ++i) {
    const std::string path = "detectors.states[" + std::to_string(i) + "]";
    const json& s = states_json[i];
    if (!s.is_array()) throw InputError(path, "expected an array of [re, im] pairs");
    if (static_cast<Eigen::Index>(s.size()) != dim) {
      throw InputError(path, "has " + std::to_string(s.size()) + " amplitudes, dim is " + std::to_string(dim));
    }
    ComplexVector v(dim);
    for (std::size_t k = 0; k < s.size(); ++k) {
      const std::string entry = path + "[" + std::to_string(k) + "]";
      const json& amp = s[k];
      if (!amp.is_array() || amp.size() != 2) throw InputError(entry, "expected a [re, im] pair");
      v(static_cast<Eigen::Index>(k)) = {expect_number(amp[0], entry + "[0]"), expect_number(amp[1], entry + "[1]")};
    }
    states.push_back(std::move(v));
  }
  return build_config<double>(probs, states);
}

InterferometerConfig<double> load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

nlohmann::json config_to_json(const InterferometerConfig<double>& config) {
  json states = json::array();
  for (std::size_t i = 0; i < config.n_paths(); ++i) {
    json amps = json::array();
    const auto s = config.detectors().state(i);
    for (Eigen::Index k = 0; k < s.size(); ++k) amps.push_back({s(k).real(), s(k).imag()});
    states.push_back(std::move(amps));
  }
  return {{"probs", config.priors().values()},
          {"detectors", {{"dim", config.detector_dim()}, {"states", std::move(states)}}}};
}

nlohmann::json report_to_json(const DualityReport<double>& r) {
  return {{"n_paths", r.n_paths}, {"x", r.x},       {"c_l1", r.c_l1},         {"ps_bound", r.ps_bound},
          {"lhs_l1", r.lhs_l1},   {"rhs_l1", r.rhs_l1}, {"gap_l1", r.gap_l1},   {"c_rel", r.c_rel},
          {"mi", r.mi},           {"h_priors", r.h_priors}, {"gap_entropic", r.gap_entropic}};
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string csv_row(double param, const DualityReport<double>& r) {
  std::string row = format_double(param);
  for (const double v : {r.x, r.ps_bound, r.lhs_l1, r.rhs_l1, r.gap_l1, r.c_rel, r.mi, r.h_priors, r.gap_entropic}) {
    row += ',';
    row += format_double(v);
  }
  return row;
}

}  // namespace cohdual::io
