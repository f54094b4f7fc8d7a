#ifndef SLICERLP_GENERATOR_HPP
#define SLICERLP_GENERATOR_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "slicerlp/model.hpp"

namespace slicerlp {

// Destination choice for generated services.
enum class DestMode { CommonFixed, Random };

// Random-instance protocol. Defaults reproduce the reference experiment
// ranges: node capacities in [50,100], link capacities in [5,55], NFV
// delays in {3..6}, link delays in {1,2}, chains of 3 functions out of 4
// types, one service rate drawn from [1,11], and deadlines of
// 20 + 3*dist + alpha with alpha in [0,5].
struct GeneratorConfig {
  // "" or "synth28" = built-in synthetic; "tiny8" = the small enumeration
  // topology; anything else is read as an instance file's network section.
  std::string topology;
  int services = 3;              // |K|
  std::uint64_t seed = 1;

  int function_types = 4;
  int sfc_length = 3;
  int rate_min = 1, rate_max = 11;
  int node_capacity_min = 50, node_capacity_max = 100;
  int link_capacity_min = 5, link_capacity_max = 55;
  int link_delay_min = 1, link_delay_max = 2;
  int nfv_delay_min = 3, nfv_delay_max = 6;
  double deadline_base = 20.0;
  double deadline_dist_factor = 3.0;
  double deadline_alpha_max = 5.0;
  DestMode dest_mode = DestMode::CommonFixed;

  // 0 keeps every cloud node admissible for every stage; a positive value
  // restricts each stage to that many randomly drawn hosts.
  int admissible_count = 0;

  int path_budget = 2;
  double sigma = 0.001;

  // Overrides for the special instance families (zero-delay links,
  // effectively unlimited capacities, slack deadlines).
  bool zero_link_delay = false;
  bool zero_nfv_delay = false;
  bool infinite_link_capacity = false;
  bool slack_deadlines = false;
  std::optional<double> fixed_node_capacity;  // mu_v for every cloud node
  std::optional<int> rate_min_override;
  std::optional<int> rate_max_override;
};

// The built-in ~28-node ring-with-chords topology with 6 cloud nodes.
// Link delays/capacities are placeholders until the generator draws them.
Network builtin_topology();

// Deterministic under identical config (the seed lives in the config).
// The result always passes validate_instance. Throws std::invalid_argument
// when the topology cannot host the requested services.
Instance generate_instance(const GeneratorConfig& cfg);

// Serialization of GeneratorConfig (used by the CLI config files).
GeneratorConfig generator_config_from_json(const std::string& text);
std::string generator_config_to_json(const GeneratorConfig& cfg);

}  // namespace slicerlp

#endif  // SLICERLP_GENERATOR_HPP
