#include "slicerlp/suite.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <thread>

#include "slicerlp/checker.hpp"

namespace slicerlp {

bool known_algorithm(const std::string& name) {
  return name == "lpdrr" || name == "lpsrr" || name == "lpr" || name == "lprr-lp1" ||
         name == "exact";
}

namespace {

ExperimentRow row_from_report(const SolveReport& report, const Instance& inst,
                              const std::string& instance_id, const std::string& algorithm,
                              std::uint64_t seed) {
  ExperimentRow row;
  row.instance_id = instance_id;
  row.services = inst.service_count();
  row.algorithm = algorithm;
  row.status = to_string(report.status);
  row.activated_nodes = report.activated_nodes;
  row.total_delay = report.total_delay;
  row.lp_solves = report.lp_solves;
  row.wall_ms = report.wall_ms;
  row.seed = seed;
  row.objective = report.objective;
  row.feasible = report.status == SolveStatus::Feasible;
  if (row.feasible) {
    auto bad = verify_full_solution(inst, *report.placement, *report.routing);
    if (!bad.empty()) {
      row.status = "CheckFailed";
      row.feasible = false;
    }
  }
  return row;
}

}  // namespace

ExperimentRow run_algorithm(const Instance& inst, const std::string& algorithm,
                            const std::string& instance_id, std::uint64_t seed,
                            const AlgoParams& params, const OracleLimits& oracle_limits) {
  if (algorithm == "lpdrr") {
    return row_from_report(solve(inst, params), inst, instance_id, algorithm, seed);
  }
  if (algorithm == "lpsrr") {
    return row_from_report(lpsrr_round(inst, params), inst, instance_id, algorithm, seed);
  }
  if (algorithm == "lpr") {
    return row_from_report(lpr_round(inst, params), inst, instance_id, algorithm, seed);
  }
  if (algorithm == "lprr-lp1") {
    return row_from_report(lprr_lp1(inst, params), inst, instance_id, algorithm, seed);
  }
  if (algorithm == "exact") {
    auto t0 = std::chrono::steady_clock::now();
    OracleResult oracle = exact_enumerate(inst, params, oracle_limits);
    ExperimentRow row;
    row.instance_id = instance_id;
    row.services = inst.service_count();
    row.algorithm = algorithm;
    row.seed = seed;
    row.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    switch (oracle.status) {
      case OracleStatus::Optimal:
        row.status = "Feasible";
        row.feasible = true;
        row.activated_nodes = oracle.activated_nodes;
        row.total_delay = oracle.total_delay;
        row.objective = oracle.objective;
        break;
      case OracleStatus::Infeasible:
        row.status = "Infeasible";
        break;
      case OracleStatus::LimitExceeded:
        row.status = "LimitExceeded";
        break;
    }
    return row;
  }
  throw std::invalid_argument("unknown algorithm: " + algorithm);
}

std::vector<ExperimentRow> run_suite(const SuiteConfig& cfg,
                                     const std::vector<std::string>& algorithms) {
  for (const auto& a : algorithms) {
    if (!known_algorithm(a)) throw std::invalid_argument("unknown algorithm: " + a);
  }

  struct Job {
    GeneratorConfig gen;
    std::string id;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  int index = 0;
  for (int count : cfg.service_counts) {
    for (int i = 0; i < cfg.instances_per_count; ++i) {
      GeneratorConfig gen = cfg.gen;
      gen.services = count;
      gen.seed = cfg.seed_base + static_cast<std::uint64_t>(index);
      jobs.push_back({gen, "inst" + std::to_string(index), gen.seed});
      ++index;
    }
  }

  std::vector<std::vector<ExperimentRow>> per_job(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t mine = next.fetch_add(1);
      if (mine >= jobs.size()) return;
      const Job& job = jobs[mine];
      Instance inst = generate_instance(job.gen);
      for (const auto& algorithm : algorithms) {
        try {
          per_job[mine].push_back(run_algorithm(inst, algorithm, job.id, job.seed, cfg.params,
                                                cfg.oracle_limits));
        } catch (const std::exception& e) {
          // Per-row failures are recorded; the run continues.
          ExperimentRow row;
          row.instance_id = job.id;
          row.services = inst.service_count();
          row.algorithm = algorithm;
          row.status = std::string("Error:") + e.what();
          row.seed = job.seed;
          per_job[mine].push_back(row);
        }
      }
    }
  };

  int workers = std::max(1, cfg.jobs);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<ExperimentRow> rows;
  for (auto& group : per_job) {
    for (auto& row : group) rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_header() {
  return "instance,services,algorithm,status,activated_nodes,total_delay,lp_solves,"
         "wall_ms,seed,schema";
}

void write_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  out << csv_header() << "\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.6f", r.total_delay);
    out << r.instance_id << ',' << r.services << ',' << r.algorithm << ',' << r.status << ','
        << r.activated_nodes << ',' << buf << ',' << r.lp_solves << ',';
    std::snprintf(buf, sizeof(buf), "%.3f", r.wall_ms);
    out << buf << ',' << r.seed << ',' << kRowSchemaVersion << "\n";
  }

  // Aggregates; the activated-node and delay means only average instances
  // every algorithm solved, so algorithms stay comparable.
  std::set<std::string> algorithms;
  std::map<std::string, std::set<std::string>> feasible_by_algo;
  for (const auto& r : rows) {
    algorithms.insert(r.algorithm);
    if (r.feasible) feasible_by_algo[r.algorithm].insert(r.instance_id);
  }
  std::set<std::string> common;
  bool first = true;
  for (const auto& a : algorithms) {
    const auto& f = feasible_by_algo[a];
    if (first) {
      common = f;
      first = false;
    } else {
      std::set<std::string> inter;
      for (const auto& id : common) {
        if (f.count(id)) inter.insert(id);
      }
      common = std::move(inter);
    }
  }
  for (const auto& a : algorithms) {
    int feasible = static_cast<int>(feasible_by_algo[a].size());
    double mean_act = 0.0, mean_delay = 0.0, mean_wall = 0.0;
    int n_common = 0, n_all = 0;
    for (const auto& r : rows) {
      if (r.algorithm != a) continue;
      mean_wall += r.wall_ms;
      ++n_all;
      if (r.feasible && common.count(r.instance_id)) {
        mean_act += r.activated_nodes;
        mean_delay += r.total_delay;
        ++n_common;
      }
    }
    if (n_common > 0) {
      mean_act /= n_common;
      mean_delay /= n_common;
    }
    if (n_all > 0) mean_wall /= n_all;
    out << "# summary algorithm=" << a << " feasible=" << feasible
        << " common_feasible=" << n_common << " mean_activated=" << mean_act
        << " mean_delay=" << mean_delay << " mean_wall_ms=" << mean_wall << "\n";
  }
}

}  // namespace slicerlp
