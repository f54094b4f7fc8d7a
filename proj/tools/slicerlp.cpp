#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "slicerlp/instance_io.hpp"
#include "slicerlp/suite.hpp"

using namespace slicerlp;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

SuiteConfig suite_config_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  SuiteConfig cfg;
  if (doc.contains("generator")) {
    cfg.gen = generator_config_from_json(doc.at("generator").dump());
  }
  if (doc.contains("service_counts")) {
    cfg.service_counts = doc.at("service_counts").get<std::vector<int>>();
  }
  if (doc.contains("instances_per_count")) {
    cfg.instances_per_count = doc.at("instances_per_count").get<int>();
  }
  if (doc.contains("seed_base")) cfg.seed_base = doc.at("seed_base").get<std::uint64_t>();
  if (doc.contains("jobs")) cfg.jobs = doc.at("jobs").get<int>();
  if (doc.contains("rho")) cfg.params.rho = doc.at("rho").get<double>();
  if (doc.contains("itermax")) cfg.params.iter_max = doc.at("itermax").get<int>();
  if (doc.contains("oracle_max_placements")) {
    cfg.oracle_limits.max_placements = doc.at("oracle_max_placements").get<long>();
  }
  return cfg;
}

int cmd_gen(const std::string& config_path, std::uint64_t seed, int count,
            const std::string& out_dir) {
  GeneratorConfig cfg;
  if (!config_path.empty()) cfg = generator_config_from_json(read_file(config_path));
  std::filesystem::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    cfg.seed = seed + static_cast<std::uint64_t>(i);
    Instance inst = generate_instance(cfg);
    std::string path = out_dir + "/instance_" + std::to_string(cfg.seed) + ".json";
    save_instance(inst, path);
    std::cout << path << "\n";
  }
  return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& algo, double sigma, int p,
              double rho, int itermax, const std::string& out_path) {
  if (!known_algorithm(algo)) {
    std::cerr << "unknown algorithm: " << algo << "\n";
    return 2;
  }
  Instance inst = load_instance(instance_path);
  if (sigma > 0) inst.sigma = sigma;
  if (p >= 1) inst.path_budget = p;
  AlgoParams params;
  params.rho = rho;
  params.iter_max = itermax;

  ExperimentRow row = run_algorithm(inst, algo, instance_path, 0, params, OracleLimits{});
  std::vector<ExperimentRow> rows{row};
  if (out_path.empty()) {
    write_csv(rows, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    write_csv(rows, out);
  }
  std::cerr << algo << ": " << row.status << ", activated=" << row.activated_nodes
            << ", delay=" << row.total_delay << ", lp_solves=" << row.lp_solves << ", "
            << row.wall_ms << " ms\n";
  return row.status == "Feasible" || row.status == "Infeasible" ? 0 : 1;
}

int cmd_suite(const std::string& config_path, const std::string& algos,
              const std::string& out_path, int jobs_override) {
  SuiteConfig cfg;
  if (!config_path.empty()) cfg = suite_config_from_json(read_file(config_path));
  if (jobs_override > 0) cfg.jobs = jobs_override;
  auto algorithms = split_list(algos);
  auto rows = run_suite(cfg, algorithms);
  if (out_path.empty()) {
    write_csv(rows, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    write_csv(rows, out);
    std::cerr << rows.size() << " rows -> " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network-slicing LP rounding-and-refinement toolkit"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate random instances");
  std::string gen_config, gen_out = ".";
  std::uint64_t gen_seed = 1;
  int gen_count = 1;
  gen->add_option("--config", gen_config, "generator config JSON");
  gen->add_option("--seed", gen_seed, "base seed");
  gen->add_option("--count", gen_count, "number of instances");
  gen->add_option("--out", gen_out, "output directory")->required();

  auto* solve = app.add_subcommand("solve", "run one algorithm on one instance");
  std::string solve_instance, solve_algo = "lpdrr", solve_out;
  double solve_sigma = 0.0, solve_rho = 5.0;
  int solve_p = 0, solve_itermax = 10;
  solve->add_option("--instance", solve_instance, "instance JSON")->required();
  solve->add_option("--algo", solve_algo, "lpdrr|lpsrr|lpr|lprr-lp1|exact");
  solve->add_option("--sigma", solve_sigma, "objective delay weight override");
  solve->add_option("--p", solve_p, "path budget override");
  solve->add_option("--rho", solve_rho, "refinement weight factor");
  solve->add_option("--itermax", solve_itermax, "refinement iteration cap");
  solve->add_option("--out", solve_out, "CSV output path (default stdout)");

  auto* suite = app.add_subcommand("suite", "run an experiment suite");
  std::string suite_config, suite_algos = "lpdrr,lpsrr,lpr", suite_out;
  int suite_jobs = 0;
  suite->add_option("--config", suite_config, "suite config JSON");
  suite->add_option("--algos", suite_algos, "comma-separated algorithm list");
  suite->add_option("--out", suite_out, "CSV output path (default stdout)");
  suite->add_option("--jobs", suite_jobs, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_config, gen_seed, gen_count, gen_out);
    if (solve->parsed()) {
      return cmd_solve(solve_instance, solve_algo, solve_sigma, solve_p, solve_rho,
                       solve_itermax, solve_out);
    }
    if (suite->parsed()) return cmd_suite(suite_config, suite_algos, suite_out, suite_jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
