#ifndef SLICERLP_CHECKER_HPP
#define SLICERLP_CHECKER_HPP

#include <string>
#include <vector>

#include "slicerlp/model.hpp"

namespace slicerlp {

// Independent re-verification of a complete solution against the raw
// instance data: hosting constraints, node and link capacities, path
// validity and conservation, delay accounting and deadlines. Works purely
// from the placement and the path decomposition; shares no code with the
// solver pipeline. Empty result = verified.
std::vector<std::string> verify_full_solution(const Instance& inst, const Placement& placement,
                                              const RoutingPlan& plan, double tol = 1e-6);

}  // namespace slicerlp

#endif  // SLICERLP_CHECKER_HPP
