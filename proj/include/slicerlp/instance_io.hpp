#ifndef SLICERLP_INSTANCE_IO_HPP
#define SLICERLP_INSTANCE_IO_HPP

#include <stdexcept>
#include <string>

#include "slicerlp/model.hpp"

namespace slicerlp {

// Malformed document: names the offending section/field.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally parseable but invariant-violating instance.
struct InvalidInstanceError : std::runtime_error {
  std::vector<Violation> violations;
  InvalidInstanceError(std::string msg, std::vector<Violation> v)
      : std::runtime_error(std::move(msg)), violations(std::move(v)) {}
};

// Document layout (JSON):
//   nodes:    ["S", "D", ...]
//   links:    [{i, j, delay, capacity}, ...]
//   cloud:    [{v, mu}, ...]
//   services: [{id, src, dst, stages: [{admissible: [{v, delay}]}],
//               rates: [..], deadline}, ...]
//   params:   {P, sigma}
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace slicerlp

#endif  // SLICERLP_INSTANCE_IO_HPP
