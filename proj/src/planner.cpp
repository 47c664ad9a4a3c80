#include "grassland/planner.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>

namespace grassland {

namespace {

constexpr std::array<Action, 4> kExpansionOrder = {Action::Up, Action::Down, Action::Left,
                                                   Action::Right};

}  // namespace

PlanResult safe_route(const DynamicScenario& scenario, int step_limit) {
  if (step_limit < 0 || step_limit > scenario.horizon()) {
    fail(ErrorKind::Horizon, "safe_route: step limit " + std::to_string(step_limit) +
                                 " exceeds horizon " + std::to_string(scenario.horizon()));
  }
  const GridWorld& w = scenario.world;
  const int cells = w.width * w.height;

  // One visited layer per tick; parent links reconstruct the route.
  struct Link {
    std::int32_t parent = -1;  // parent state index, -1 = unvisited / root
    Action action = Action::Up;
  };
  const auto state_index = [&](Coord c, int t) { return t * cells + c.row * w.width + c.col; };
  std::vector<Link> links(static_cast<std::size_t>(cells) * (step_limit + 1));
  std::vector<bool> visited(links.size(), false);

  std::deque<std::pair<Coord, int>> queue;
  queue.emplace_back(w.start, 0);
  visited[static_cast<std::size_t>(state_index(w.start, 0))] = true;

  const auto reconstruct = [&](int final_state, Action final_action) {
    ActionSequence route{final_action};
    int state = final_state;
    while (links[static_cast<std::size_t>(state)].parent >= 0) {
      route.push_back(links[static_cast<std::size_t>(state)].action);
      state = links[static_cast<std::size_t>(state)].parent;
    }
    std::reverse(route.begin(), route.end());
    return route;
  };

  while (!queue.empty()) {
    const auto [pos, t] = queue.front();
    queue.pop_front();
    if (t == step_limit) continue;
    const int from = state_index(pos, t);

    for (Action a : kExpansionOrder) {
      const StepResult r = step(pos, a, scenario, t + 1);
      if (r.outcome == Outcome::Success) {
        return PlanResult{reconstruct(from, a)};
      }
      if (r.outcome) continue;  // hazard: dead branch
      const auto next = static_cast<std::size_t>(state_index(r.new_pos, t + 1));
      if (!visited[next]) {
        visited[next] = true;
        links[next] = {static_cast<std::int32_t>(from), a};
        queue.emplace_back(r.new_pos, t + 1);
      }
    }
  }
  return PlanResult{std::nullopt};
}

bool is_solvable(const DynamicScenario& scenario, int step_limit) {
  return safe_route(scenario, step_limit).solvable();
}

RouteStats route_stats(const std::vector<PlanResult>& results) {
  RouteStats stats;
  double total = 0.0;
  for (const PlanResult& r : results) {
    if (r.solvable()) {
      ++stats.count_solvable;
      total += r.length();
    }
  }
  if (stats.count_solvable > 0) {
    stats.mean_length = total / static_cast<double>(stats.count_solvable);
  }
  return stats;
}

}  // namespace grassland
