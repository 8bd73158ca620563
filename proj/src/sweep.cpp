#include "cohdual/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <thread>

#include "cohdual/io.hpp"
#include "cohdual/version.hpp"

namespace cohdual {
namespace {

std::string prior_label(const PriorMode& mode) {
  if (mode.kind == PriorMode::Kind::Uniform) return "uniform";
  return "dirichlet(" + io::format_double(mode.alpha) + ")";
}

std::string d_range_label(const SweepSpec& spec) {
  return std::to_string(spec.d_min) + ":" + (spec.d_max ? std::to_string(*spec.d_max) : std::string("2N"));
}

bool violates(const DualityReport<double>& r, double tolerance) {
  // NaN gaps count as violations.
  return !(r.gap_l1 >= -tolerance) || !(r.gap_entropic >= -tolerance);
}

/// Runs task(i) for i in [0, count) on `threads` workers; rethrows the first failure.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, Task&& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

double VerifyResult::worst_gap_l1() const {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& c : cells) worst = std::min(worst, c.worst_gap_l1);
  return worst;
}

double VerifyResult::worst_gap_entropic() const {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& c : cells) worst = std::min(worst, c.worst_gap_entropic);
  return worst;
}

InterferometerConfig<double> verify_config(const SweepSpec& spec, std::size_t cell_index, std::size_t sample) {
  const auto cells = spec.cells();
  if (cell_index >= cells.size()) throw Error(ErrorKind::IndexOutOfRange, "cell index out of range");
  const auto [n, d] = cells[cell_index];
  RngStream rng(spec.seed, {cell_index, sample});
  return sample_config<double>(n, d, spec.priors, rng);
}

VerifyResult run_verify(const SweepSpec& spec, double tolerance, unsigned threads) {
  spec.validate();
  if (!(tolerance > 0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const auto cells = spec.cells();

  VerifyResult result;
  result.spec = spec;
  result.tolerance = tolerance;
  result.rows.resize(cells.size() * spec.samples);

  parallel_for(result.rows.size(), threads, [&](std::size_t index) {
    const std::size_t cell = index / spec.samples;
    const std::size_t sample = index % spec.samples;
    VerifyRow& row = result.rows[index];
    row.n = cells[cell].first;
    row.d = cells[cell].second;
    row.sample = sample;
    row.report = duality_report(verify_config(spec, cell, sample));
  });

  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    CellSummary summary{cells[cell].first, cells[cell].second, spec.samples,
                        std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (std::size_t s = 0; s < spec.samples; ++s) {
      const std::size_t index = cell * spec.samples + s;
      const auto& r = result.rows[index].report;
      summary.worst_gap_l1 = std::min(summary.worst_gap_l1, r.gap_l1);
      summary.worst_gap_entropic = std::min(summary.worst_gap_entropic, r.gap_entropic);
      if (violates(r, tolerance)) {
        ++result.violations;
        if (!result.first_violation) result.first_violation = index;
      }
    }
    result.cells.push_back(summary);
  }
  return result;
}

void write_verify_csv(const VerifyResult& result, std::ostream& out) {
  const auto& spec = result.spec;
  out << "# " << kToolName << ' ' << kToolVersion << " verify seed=" << spec.seed << " rng=" << kRngAlgorithm
      << " n_range=" << spec.n_min << ':' << spec.n_max << " d_range=" << d_range_label(spec)
      << " samples=" << spec.samples << " priors=" << prior_label(spec.priors)
      << " param=config_index(cell-major)\n";
  out << io::kCsvHeader << '\n';
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    out << io::csv_row(static_cast<double>(i), result.rows[i].report) << '\n';
  }
}

void write_verify_summary(const VerifyResult& result, std::ostream& out) {
  const auto& spec = result.spec;
  out << kToolName << ' ' << kToolVersion << " verify\n"
      << "seed: " << spec.seed << "  rng: " << kRngAlgorithm << "  priors: " << prior_label(spec.priors)
      << "  tolerance: " << io::format_double(result.tolerance) << '\n';
  out << std::setw(4) << "N" << std::setw(5) << "d" << std::setw(9) << "configs" << std::setw(26) << "worst gap_l1"
      << std::setw(26) << "worst gap_entropic" << '\n';
  for (const auto& c : result.cells) {
    out << std::setw(4) << c.n << std::setw(5) << c.d << std::setw(9) << c.count << std::setw(26)
        << io::format_double(c.worst_gap_l1) << std::setw(26) << io::format_double(c.worst_gap_entropic) << '\n';
  }
  out << "total configs: " << result.rows.size() << '\n'
      << "worst gap_l1: " << io::format_double(result.worst_gap_l1()) << '\n'
      << "worst gap_entropic: " << io::format_double(result.worst_gap_entropic()) << '\n'
      << "violations: " << result.violations << '\n';
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "overlap-scan") return Family::OverlapScan;
  if (name == "prior-scan") return Family::PriorScan;
  if (name == "dimension-scan") return Family::DimensionScan;
  return std::nullopt;
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::OverlapScan: return "overlap-scan";
    case Family::PriorScan: return "prior-scan";
    case Family::DimensionScan: return "dimension-scan";
  }
  return "unknown";
}

namespace {

double grid_point(std::size_t k, std::size_t steps) {
  return steps > 1 ? static_cast<double>(k) / static_cast<double>(steps - 1) : 0.0;
}

/// Two real detector states (1, 0) and (c, √(1 − c²)).
InterferometerConfig<double> two_path_config(double p1, double overlap) {
  ComplexVector first(2);
  first << 1.0, 0.0;
  ComplexVector second(2);
  second << overlap, std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
  return build_config<double>(std::vector<double>{p1, 1.0 - p1}, std::vector<ComplexVector>{first, second});
}

}  // namespace

SweepTrace run_sweep(const FamilySpec& spec) {
  SweepTrace trace;
  trace.spec = spec;
  switch (spec.family) {
    case Family::OverlapScan:
    case Family::PriorScan:
      if (spec.steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be >= 1");
      if (!(spec.overlap >= 0.0 && spec.overlap <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "overlap must lie in [0, 1]");
      }
      for (std::size_t k = 0; k < spec.steps; ++k) {
        const double t = grid_point(k, spec.steps);
        trace.params.push_back(t);
        trace.configs.push_back(spec.family == Family::OverlapScan ? two_path_config(0.5, t)
                                                                   : two_path_config(t, spec.overlap));
      }
      break;
    case Family::DimensionScan:
      if (spec.n < 2) throw Error(ErrorKind::InvalidArgument, "dimension-scan needs N >= 2");
      if (spec.d_min < 1 || spec.d_max < spec.d_min) throw Error(ErrorKind::InvalidArgument, "invalid d range");
      for (Eigen::Index d = spec.d_min; d <= spec.d_max; ++d) {
        RngStream rng(spec.seed, {static_cast<std::uint64_t>(d)});
        trace.params.push_back(static_cast<double>(d));
        trace.configs.push_back(sample_config<double>(spec.n, d, spec.priors, rng));
      }
      break;
  }
  for (const auto& config : trace.configs) trace.reports.push_back(duality_report(config));
  return trace;
}

void write_sweep_csv(const SweepTrace& trace, std::ostream& out) {
  const auto& spec = trace.spec;
  out << "# " << kToolName << ' ' << kToolVersion << " sweep family=" << family_name(spec.family)
      << " seed=" << spec.seed << " rng=" << kRngAlgorithm;
  switch (spec.family) {
    case Family::OverlapScan: out << " steps=" << spec.steps << " param=overlap"; break;
    case Family::PriorScan:
      out << " steps=" << spec.steps << " overlap=" << io::format_double(spec.overlap) << " param=p1";
      break;
    case Family::DimensionScan:
      out << " n=" << spec.n << " priors=" << prior_label(spec.priors) << " param=d";
      break;
  }
  out << '\n' << io::kCsvHeader << '\n';
  for (std::size_t k = 0; k < trace.reports.size(); ++k) out << io::csv_row(trace.params[k], trace.reports[k]) << '\n';
}

}  // namespace cohdual
