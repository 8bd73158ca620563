#pragma once

// Bulk verification over a sampled (N, d) grid and one-parameter sweep families.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cohdual/duality.hpp"
#include "cohdual/model.hpp"
#include "cohdual/sampling.hpp"

namespace cohdual {

struct VerifyRow {
  std::size_t n = 0;
  Eigen::Index d = 0;
  std::size_t sample = 0;
  DualityReport<double> report;
};

struct CellSummary {
  std::size_t n = 0;
  Eigen::Index d = 0;
  std::size_t count = 0;
  double worst_gap_l1 = 0;
  double worst_gap_entropic = 0;
};

struct VerifyResult {
  SweepSpec spec;
  double tolerance = kGapTol;
  std::vector<VerifyRow> rows;  // cell-major, then sample order
  std::vector<CellSummary> cells;
  std::size_t violations = 0;
  std::optional<std::size_t> first_violation;  // index into rows

  bool ok() const noexcept { return violations == 0; }
  double worst_gap_l1() const;
  double worst_gap_entropic() const;
};

/// The configuration used for (cell, sample); identical to what run_verify evaluated.
InterferometerConfig<double> verify_config(const SweepSpec& spec, std::size_t cell_index, std::size_t sample);

/// Evaluates every cell/sample. Output order is fixed by the grid, independent of `threads`.
VerifyResult run_verify(const SweepSpec& spec, double tolerance = kGapTol, unsigned threads = 0);

void write_verify_csv(const VerifyResult& result, std::ostream& out);
void write_verify_summary(const VerifyResult& result, std::ostream& out);

enum class Family { OverlapScan, PriorScan, DimensionScan };

std::optional<Family> parse_family(std::string_view name);
std::string_view family_name(Family family);

struct FamilySpec {
  Family family = Family::OverlapScan;
  std::size_t steps = 11;
  double overlap = 0.0;          // prior-scan: fixed overlap between the two detector states
  std::size_t n = 4;             // dimension-scan: number of paths
  Eigen::Index d_min = 1;        // dimension-scan range
  Eigen::Index d_max = 8;
  PriorMode priors = PriorMode::dirichlet(1.0);  // dimension-scan priors
  std::uint64_t seed = 42;
};

struct SweepTrace {
  FamilySpec spec;
  std::vector<double> params;
  std::vector<InterferometerConfig<double>> configs;
  std::vector<DualityReport<double>> reports;
};

SweepTrace run_sweep(const FamilySpec& spec);
void write_sweep_csv(const SweepTrace& trace, std::ostream& out);

}  // namespace cohdual
