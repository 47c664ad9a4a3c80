#pragma once

#include <optional>
#include <vector>

#include "grassland/dynamics.hpp"

namespace grassland {

// Ground-truth result of the safe-route search.
struct PlanResult {
  std::optional<ActionSequence> route;

  bool solvable() const { return route.has_value(); }
  int length() const { return route ? static_cast<int>(route->size()) : 0; }

  bool operator==(const PlanResult&) const = default;
};

// Breadth-first search over the time-expanded state space (cell, tick) from
// (start, 0), expanding the four actions with the tick simulator's semantics
// so moving lava becomes static per layer. Returns a shortest route by tick
// count; among equally short routes the expansion order Up < Down < Left <
// Right makes the result unique (lexicographically smallest). There is no
// explicit wait action: waiting is only achievable by bumping a wall or the
// map edge, which the search reaches through blocked moves.
// Throws ErrorKind::Horizon when step_limit exceeds the scenario horizon.
PlanResult safe_route(const DynamicScenario& scenario, int step_limit);

bool is_solvable(const DynamicScenario& scenario, int step_limit);

struct RouteStats {
  std::size_t count_solvable = 0;
  std::optional<double> mean_length;  // empty when no route is present
};

RouteStats route_stats(const std::vector<PlanResult>& results);

}  // namespace grassland
