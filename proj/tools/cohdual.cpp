// cohdual: coherence / path-information duality checks for N-path interferometers.
//
// Exit codes: 0 success, 1 duality violation beyond --tolerance, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cohdual/analysis.hpp"
#include "cohdual/io.hpp"
#include "cohdual/sweep.hpp"
#include "cohdual/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string input;
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 42;
  std::size_t samples = 100;
  std::string n_range = "2:6";
  std::string d_range;
  std::optional<std::size_t> n;
  std::optional<long> d;
  double alpha = 1.0;
  std::string priors = "dirichlet";
  double tolerance = cohdual::kGapTol;
  std::string family;
  std::size_t steps = 11;
  double overlap = 0.0;
  std::size_t restarts = 8;
  unsigned threads = 0;
};

long parse_long(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError(flag + ": '" + text + "' is not an integer");
  return value;
}

/// "lo:hi" or a single value. hi may be "2N" when allow_2n is set (returns nullopt for it).
std::pair<long, std::optional<long>> parse_range(const std::string& text, const std::string& flag, bool allow_2n) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const long v = parse_long(text, flag);
    return {v, v};
  }
  const long lo = parse_long(text.substr(0, colon), flag);
  const std::string hi = text.substr(colon + 1);
  if (allow_2n && hi == "2N") return {lo, std::nullopt};
  return {lo, parse_long(hi, flag)};
}

cohdual::PriorMode prior_mode(const Options& opt) {
  if (opt.priors == "uniform") return cohdual::PriorMode::uniform();
  if (opt.priors == "dirichlet") {
    if (!(opt.alpha > 0)) throw UsageError("--alpha must be positive");
    return cohdual::PriorMode::dirichlet(opt.alpha);
  }
  throw UsageError("--priors must be 'uniform' or 'dirichlet'");
}

/// Writes to --output when given, else stdout.
void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + opt.output);
  out << text;
}

int run_analyze(const Options& opt) {
  if (opt.input.empty()) throw UsageError("analyze needs --input");
  const auto config = cohdual::io::load_config(opt.input);
  const cohdual::AnalyzeOptions options{opt.restarts, opt.seed};
  const auto analysis = cohdual::analyze(config, options);
  if (opt.format == "csv") {
    emit(opt, std::string(cohdual::io::kCsvHeader) + "\n" + cohdual::io::csv_row(0.0, analysis.report) + "\n");
  } else {
    emit(opt, cohdual::analysis_to_json(config, analysis, options).dump(2) + "\n");
  }
  return analysis.holds(opt.tolerance) ? kExitOk : kExitViolation;
}

int run_verify(const Options& opt) {
  cohdual::SweepSpec spec;
  if (opt.n) {
    spec.n_min = spec.n_max = *opt.n;
  } else {
    const auto [lo, hi] = parse_range(opt.n_range, "--n-range", false);
    if (lo < 2 || *hi < lo) throw UsageError("--n-range must satisfy 2 <= lo <= hi");
    spec.n_min = static_cast<std::size_t>(lo);
    spec.n_max = static_cast<std::size_t>(*hi);
  }
  if (opt.d) {
    spec.d_min = *opt.d;
    spec.d_max = *opt.d;
  } else if (!opt.d_range.empty()) {
    const auto [lo, hi] = parse_range(opt.d_range, "--d-range", true);
    spec.d_min = lo;
    if (hi) spec.d_max = *hi;
  }
  spec.samples = opt.samples;
  spec.seed = opt.seed;
  spec.priors = prior_mode(opt);
  try {
    spec.validate();
  } catch (const cohdual::Error& e) {
    throw UsageError(e.what());
  }

  const auto result = cohdual::run_verify(spec, opt.tolerance, opt.threads);
  cohdual::write_verify_summary(result, std::cout);
  if (!opt.output.empty()) {
    std::ostringstream csv;
    cohdual::write_verify_csv(result, csv);
    emit(opt, csv.str());
  }
  if (result.ok()) return kExitOk;

  const std::size_t index = *result.first_violation;
  const auto& row = result.rows[index];
  const std::size_t cell = index / spec.samples;
  nlohmann::json offender = {{"seed", spec.seed},
                             {"cell", cell},
                             {"sample", row.sample},
                             {"n", row.n},
                             {"d", row.d},
                             {"config", cohdual::io::config_to_json(cohdual::verify_config(spec, cell, row.sample))},
                             {"report", cohdual::io::report_to_json(row.report)}};
  std::cout << "first violation:\n" << offender.dump(2) << '\n';
  return kExitViolation;
}

int run_sweep(const Options& opt) {
  const auto family = cohdual::parse_family(opt.family);
  if (!family) throw UsageError("--family must be overlap-scan, prior-scan or dimension-scan");
  cohdual::FamilySpec spec;
  spec.family = *family;
  spec.steps = opt.steps;
  spec.overlap = opt.overlap;
  spec.seed = opt.seed;
  spec.priors = prior_mode(opt);
  if (opt.n) spec.n = *opt.n;
  if (opt.d) {
    spec.d_min = spec.d_max = *opt.d;
  } else if (!opt.d_range.empty()) {
    const auto [lo, hi] = parse_range(opt.d_range, "--d-range", false);
    spec.d_min = lo;
    spec.d_max = *hi;
  }

  cohdual::SweepTrace trace;
  try {
    trace = cohdual::run_sweep(spec);
  } catch (const cohdual::Error& e) {
    if (e.kind() == cohdual::ErrorKind::InvalidArgument) throw UsageError(e.what());
    throw;
  }
  if (opt.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < trace.reports.size(); ++k) {
      auto r = cohdual::io::report_to_json(trace.reports[k]);
      r["param"] = trace.params[k];
      rows.push_back(std::move(r));
    }
    emit(opt, nlohmann::json{{"tool", std::string(cohdual::kToolName)},
                             {"version", std::string(cohdual::kToolVersion)},
                             {"family", std::string(cohdual::family_name(spec.family))},
                             {"seed", spec.seed},
                             {"rows", rows}}
                      .dump(2) +
                  "\n");
  } else {
    std::ostringstream csv;
    cohdual::write_sweep_csv(trace, csv);
    emit(opt, csv.str());
  }
  for (const auto& r : trace.reports) {
    if (!(r.gap_l1 >= -opt.tolerance) || !(r.gap_entropic >= -opt.tolerance)) return kExitViolation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence / path-information duality checks for N-path interferometers"};
  app.set_version_flag("--version", std::string(cohdual::kToolVersion));
  Options opt;
  bool format_set = false;
  app.add_option("--command", opt.command, "analyze | verify | sweep")
      ->required()
      ->check(CLI::IsMember({"analyze", "verify", "sweep"}));
  app.add_option("--input", opt.input, "configuration JSON (analyze)");
  app.add_option("--output", opt.output, "output file (default: stdout; verify: CSV of every configuration)");
  app.add_option_function<std::string>(
         "--format",
         [&](const std::string& f) {
           opt.format = f;
           format_set = true;
         },
         "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", opt.seed, "master RNG seed")->capture_default_str();
  app.add_option("--samples", opt.samples, "samples per (N, d) cell")->capture_default_str();
  app.add_option("--n-range", opt.n_range, "path counts lo:hi")->capture_default_str();
  app.add_option("--d-range", opt.d_range, "detector dimensions lo:hi (verify default 1:2N, dimension-scan 1:8)");
  app.add_option("--n", opt.n, "single path count");
  app.add_option("--d", opt.d, "single detector dimension");
  app.add_option("--alpha", opt.alpha, "Dirichlet concentration for priors")->capture_default_str();
  app.add_option("--priors", opt.priors, "dirichlet | uniform")->capture_default_str();
  app.add_option("--tolerance", opt.tolerance, "allowed negative gap")->capture_default_str()->check(
      CLI::PositiveNumber);
  app.add_option("--family", opt.family, "overlap-scan | prior-scan | dimension-scan (sweep)");
  app.add_option("--steps", opt.steps, "points in overlap-scan / prior-scan")->capture_default_str();
  app.add_option("--overlap", opt.overlap, "fixed overlap for prior-scan")->capture_default_str();
  app.add_option("--restarts", opt.restarts, "accessible-information search restarts (analyze)")
      ->capture_default_str();
  app.add_option("--threads", opt.threads, "worker threads for verify (0: all cores)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!format_set) opt.format = opt.command == "analyze" ? "json" : "csv";

  try {
    if (opt.command == "analyze") return run_analyze(opt);
    if (opt.command == "verify") return run_verify(opt);
    return run_sweep(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const cohdual::io::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
  } catch (const cohdual::Error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
  }
  return kExitUsage;
}
