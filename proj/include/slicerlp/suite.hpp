#ifndef SLICERLP_SUITE_HPP
#define SLICERLP_SUITE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slicerlp/baselines.hpp"
#include "slicerlp/generator.hpp"
#include "slicerlp/lpdrr.hpp"

namespace slicerlp {

inline constexpr int kRowSchemaVersion = 1;

struct ExperimentRow {
  std::string instance_id;
  int services = 0;
  std::string algorithm;
  std::string status;
  int activated_nodes = 0;
  double total_delay = 0.0;
  int lp_solves = 0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
  // Extra diagnostics carried outside the CSV schema.
  double objective = 0.0;
  bool feasible = false;
};

struct SuiteConfig {
  GeneratorConfig gen;                 // per-instance overrides applied on top
  std::vector<int> service_counts{1, 2, 3, 4, 5};
  int instances_per_count = 20;
  std::uint64_t seed_base = 1;
  AlgoParams params;
  OracleLimits oracle_limits;
  int jobs = 1;
};

// Algorithms accepted by run_suite: lpdrr, lpsrr, lpr, lprr-lp1, exact.
bool known_algorithm(const std::string& name);

// Runs every (instance, algorithm) pair; rows come back ordered by
// (instance, algorithm) regardless of the worker count. Every feasible
// run is re-validated through the independent checker; a violation turns
// the row's status into CheckFailed (and is a bug by construction).
std::vector<ExperimentRow> run_suite(const SuiteConfig& cfg,
                                     const std::vector<std::string>& algorithms);

// One row for a single pre-built instance.
ExperimentRow run_algorithm(const Instance& inst, const std::string& algorithm,
                            const std::string& instance_id, std::uint64_t seed,
                            const AlgoParams& params, const OracleLimits& oracle_limits);

std::string csv_header();
// Header, one line per row, then '#'-prefixed per-algorithm summary lines
// (feasible count, mean activated nodes / delay over the commonly-feasible
// instances, mean wall time).
void write_csv(const std::vector<ExperimentRow>& rows, std::ostream& out);

}  // namespace slicerlp

#endif  // SLICERLP_SUITE_HPP
