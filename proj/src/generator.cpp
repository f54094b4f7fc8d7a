#include "slicerlp/generator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "slicerlp/instance_io.hpp"

namespace slicerlp {

namespace {

// mt19937_64 output is pinned by the standard; these keepers avoid the
// library-defined distributions so instances reproduce across toolchains.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  int uniform_int(int lo, int hi) {  // inclusive on both ends
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw;
    do {
      draw = engine();
    } while (draw >= limit);
    return lo + static_cast<int>(draw % span);
  }

  double uniform_real(double lo, double hi) {
    const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[uniform_int(0, i)]);
    }
  }
};

void add_edge(Network& net, int a, int b) {
  net.links.push_back({a, b, 0.0, 0.0});
  net.links.push_back({b, a, 0.0, 0.0});
}

}  // namespace

Network builtin_topology() {
  // A 20-node ring with 6 shortcut chords and 8 access spurs; the 6 cloud
  // nodes sit on the ring, sources/destinations use the spurs.
  Network net;
  const int ring = 20;
  const int spurs = 8;
  for (int i = 0; i < ring; ++i) net.node_names.push_back("r" + std::to_string(i));
  for (int i = 0; i < spurs; ++i) net.node_names.push_back("a" + std::to_string(i));

  for (int i = 0; i < ring; ++i) add_edge(net, i, (i + 1) % ring);
  const std::pair<int, int> chords[] = {{0, 10}, {3, 13}, {6, 16}, {9, 19}, {2, 12},
                                        {5, 15},  {1, 8},  {4, 11}, {7, 14}, {11, 18},
                                        {1, 15},  {4, 18}, {8, 12}, {2, 6}};
  for (auto [a, b] : chords) add_edge(net, a, b);
  const int spur_anchor[] = {0, 2, 5, 7, 10, 12, 14, 17};
  for (int i = 0; i < spurs; ++i) add_edge(net, ring + i, spur_anchor[i]);

  const int cloud_nodes[] = {1, 4, 8, 11, 15, 18};
  for (int v : cloud_nodes) net.cloud.push_back({v, 0.0});
  return net;
}

Network tiny_topology() {
  // A 6-node ring with two access spurs and 3 cloud nodes; small enough
  // for exhaustive placement enumeration.
  Network net;
  for (int i = 0; i < 6; ++i) net.node_names.push_back("r" + std::to_string(i));
  net.node_names.push_back("a0");
  net.node_names.push_back("a1");
  for (int i = 0; i < 6; ++i) add_edge(net, i, (i + 1) % 6);
  add_edge(net, 6, 0);
  add_edge(net, 7, 3);
  for (int v : {1, 2, 4}) net.cloud.push_back({v, 0.0});
  return net;
}

Instance generate_instance(const GeneratorConfig& cfg) {
  Rng rng(cfg.seed);

  Instance inst;
  if (cfg.topology.empty() || cfg.topology == "synth28") {
    inst.network = builtin_topology();
  } else if (cfg.topology == "tiny8") {
    inst.network = tiny_topology();
  } else {
    inst.network = load_instance(cfg.topology).network;
  }
  Network& net = inst.network;
  inst.path_budget = cfg.path_budget;
  inst.sigma = cfg.sigma;

  if (net.cloud.empty()) throw std::invalid_argument("generate_instance: topology has no cloud nodes");

  std::vector<NodeId> plain_nodes;  // candidates for S(k)/D(k)
  for (NodeId i = 0; i < net.node_count(); ++i) {
    if (!net.is_cloud(i)) plain_nodes.push_back(i);
  }
  if (static_cast<int>(plain_nodes.size()) < 2) {
    throw std::invalid_argument("generate_instance: topology too small for services");
  }

  for (auto& link : net.links) {
    link.delay = cfg.zero_link_delay ? 0.0
                                     : rng.uniform_int(cfg.link_delay_min, cfg.link_delay_max);
    link.capacity = cfg.infinite_link_capacity
                        ? 1e9
                        : rng.uniform_int(cfg.link_capacity_min, cfg.link_capacity_max);
  }
  for (auto& c : net.cloud) {
    c.mu = cfg.fixed_node_capacity.has_value()
               ? *cfg.fixed_node_capacity
               : rng.uniform_int(cfg.node_capacity_min, cfg.node_capacity_max);
  }

  // Per (cloud node, function type) processing delay table.
  std::vector<std::vector<double>> nfv_delay(net.cloud.size(),
                                             std::vector<double>(cfg.function_types, 0.0));
  for (size_t ci = 0; ci < net.cloud.size(); ++ci) {
    for (int f = 0; f < cfg.function_types; ++f) {
      nfv_delay[ci][f] =
          cfg.zero_nfv_delay ? 0.0 : rng.uniform_int(cfg.nfv_delay_min, cfg.nfv_delay_max);
    }
  }

  // The shared destination gets the best-connected non-cloud node so the
  // converging final segments are not throttled by a single access link.
  NodeId common_dst = plain_nodes.front();
  {
    std::vector<int> degree(net.node_count(), 0);
    for (const auto& l : net.links) {
      ++degree[l.from];
      ++degree[l.to];
    }
    for (NodeId v : plain_nodes) {
      if (degree[v] > degree[common_dst]) common_dst = v;
    }
  }
  const int rate_lo = cfg.rate_min_override.value_or(cfg.rate_min);
  const int rate_hi = cfg.rate_max_override.value_or(cfg.rate_max);

  for (int k = 0; k < cfg.services; ++k) {
    ServiceRequest svc;
    svc.id = k + 1;
    svc.dst = cfg.dest_mode == DestMode::CommonFixed
                  ? common_dst
                  : plain_nodes[rng.uniform_int(0, static_cast<int>(plain_nodes.size()) - 1)];
    do {
      svc.src = plain_nodes[rng.uniform_int(0, static_cast<int>(plain_nodes.size()) - 1)];
    } while (svc.src == svc.dst);

    if (cfg.sfc_length > cfg.function_types) {
      throw std::invalid_argument("generate_instance: chain longer than the function pool");
    }
    std::vector<int> pool(cfg.function_types);
    for (int f = 0; f < cfg.function_types; ++f) pool[f] = f;
    rng.shuffle(pool);
    std::vector<int> chain(pool.begin(), pool.begin() + cfg.sfc_length);

    const double rate = rng.uniform_int(rate_lo, rate_hi);
    svc.rates.assign(cfg.sfc_length + 1, rate);

    for (int s = 1; s <= cfg.sfc_length; ++s) {
      Stage stage;
      std::vector<size_t> cloud_idx(net.cloud.size());
      for (size_t ci = 0; ci < net.cloud.size(); ++ci) cloud_idx[ci] = ci;
      if (cfg.admissible_count > 0 &&
          cfg.admissible_count < static_cast<int>(net.cloud.size())) {
        rng.shuffle(cloud_idx);
        cloud_idx.resize(cfg.admissible_count);
        std::sort(cloud_idx.begin(), cloud_idx.end());
      }
      for (size_t ci : cloud_idx) {
        stage.admissible.push_back(
            {net.cloud[ci].node, nfv_delay[ci][chain[s - 1]]});
      }
      svc.stages.push_back(std::move(stage));
    }

    auto dist = shortest_delay(net, svc.src, svc.dst);
    if (!dist.has_value()) {
      throw std::invalid_argument("generate_instance: destination unreachable from source");
    }
    double alpha = rng.uniform_real(0.0, cfg.deadline_alpha_max);
    svc.deadline = cfg.slack_deadlines
                       ? 1e9
                       : cfg.deadline_base + cfg.deadline_dist_factor * (*dist) + alpha;

    inst.services.push_back(std::move(svc));
  }

  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    throw std::logic_error("generate_instance: produced an invalid instance: " +
                           violations.front().entity + ": " + violations.front().rule);
  }
  return inst;
}

namespace {

using nlohmann::json;

template <typename T>
void maybe_read(const json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

}  // namespace

GeneratorConfig generator_config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("generator config: ") + e.what());
  }
  GeneratorConfig cfg;
  maybe_read(doc, "topology", cfg.topology);
  maybe_read(doc, "services", cfg.services);
  maybe_read(doc, "seed", cfg.seed);
  maybe_read(doc, "function_types", cfg.function_types);
  maybe_read(doc, "sfc_length", cfg.sfc_length);
  maybe_read(doc, "rate_min", cfg.rate_min);
  maybe_read(doc, "rate_max", cfg.rate_max);
  maybe_read(doc, "node_capacity_min", cfg.node_capacity_min);
  maybe_read(doc, "node_capacity_max", cfg.node_capacity_max);
  maybe_read(doc, "link_capacity_min", cfg.link_capacity_min);
  maybe_read(doc, "link_capacity_max", cfg.link_capacity_max);
  maybe_read(doc, "link_delay_min", cfg.link_delay_min);
  maybe_read(doc, "link_delay_max", cfg.link_delay_max);
  maybe_read(doc, "nfv_delay_min", cfg.nfv_delay_min);
  maybe_read(doc, "nfv_delay_max", cfg.nfv_delay_max);
  maybe_read(doc, "deadline_base", cfg.deadline_base);
  maybe_read(doc, "deadline_dist_factor", cfg.deadline_dist_factor);
  maybe_read(doc, "deadline_alpha_max", cfg.deadline_alpha_max);
  maybe_read(doc, "admissible_count", cfg.admissible_count);
  maybe_read(doc, "path_budget", cfg.path_budget);
  maybe_read(doc, "sigma", cfg.sigma);
  maybe_read(doc, "zero_link_delay", cfg.zero_link_delay);
  maybe_read(doc, "zero_nfv_delay", cfg.zero_nfv_delay);
  maybe_read(doc, "infinite_link_capacity", cfg.infinite_link_capacity);
  maybe_read(doc, "slack_deadlines", cfg.slack_deadlines);
  if (doc.contains("fixed_node_capacity")) {
    cfg.fixed_node_capacity = doc.at("fixed_node_capacity").get<double>();
  }
  if (doc.contains("rate_min_override")) {
    cfg.rate_min_override = doc.at("rate_min_override").get<int>();
  }
  if (doc.contains("rate_max_override")) {
    cfg.rate_max_override = doc.at("rate_max_override").get<int>();
  }
  if (doc.contains("dest_mode")) {
    std::string mode = doc.at("dest_mode").get<std::string>();
    if (mode == "common") cfg.dest_mode = DestMode::CommonFixed;
    else if (mode == "random") cfg.dest_mode = DestMode::Random;
    else throw ParseError("generator config: unknown dest_mode '" + mode + "'");
  }
  return cfg;
}

std::string generator_config_to_json(const GeneratorConfig& cfg) {
  json doc;
  doc["topology"] = cfg.topology;
  doc["services"] = cfg.services;
  doc["seed"] = cfg.seed;
  doc["function_types"] = cfg.function_types;
  doc["sfc_length"] = cfg.sfc_length;
  doc["rate_min"] = cfg.rate_min;
  doc["rate_max"] = cfg.rate_max;
  doc["node_capacity_min"] = cfg.node_capacity_min;
  doc["node_capacity_max"] = cfg.node_capacity_max;
  doc["link_capacity_min"] = cfg.link_capacity_min;
  doc["link_capacity_max"] = cfg.link_capacity_max;
  doc["link_delay_min"] = cfg.link_delay_min;
  doc["link_delay_max"] = cfg.link_delay_max;
  doc["nfv_delay_min"] = cfg.nfv_delay_min;
  doc["nfv_delay_max"] = cfg.nfv_delay_max;
  doc["deadline_base"] = cfg.deadline_base;
  doc["deadline_dist_factor"] = cfg.deadline_dist_factor;
  doc["deadline_alpha_max"] = cfg.deadline_alpha_max;
  doc["admissible_count"] = cfg.admissible_count;
  doc["path_budget"] = cfg.path_budget;
  doc["sigma"] = cfg.sigma;
  doc["zero_link_delay"] = cfg.zero_link_delay;
  doc["zero_nfv_delay"] = cfg.zero_nfv_delay;
  doc["infinite_link_capacity"] = cfg.infinite_link_capacity;
  doc["slack_deadlines"] = cfg.slack_deadlines;
  if (cfg.fixed_node_capacity) doc["fixed_node_capacity"] = *cfg.fixed_node_capacity;
  if (cfg.rate_min_override) doc["rate_min_override"] = *cfg.rate_min_override;
  if (cfg.rate_max_override) doc["rate_max_override"] = *cfg.rate_max_override;
  doc["dest_mode"] = cfg.dest_mode == DestMode::CommonFixed ? "common" : "random";
  return doc.dump(2) + "\n";
}

}  // namespace slicerlp
