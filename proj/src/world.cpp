#include "grassland/world.hpp"

#include <algorithm>

namespace grassland {

CoordSet make_coord_set(std::vector<Coord> coords) {
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  return coords;
}

bool contains(const CoordSet& set, Coord c) {
  return std::binary_search(set.begin(), set.end(), c);
}

GridWorld make_grass_world(int height, int width, Coord start, Coord dest) {
  GridWorld w;
  w.width = width;
  w.height = height;
  w.cells.assign(static_cast<std::size_t>(width) * height, Cell::Grass);
  w.start = start;
  w.dest = dest;
  return w;
}

Coord shifted(Coord pos, Action a) {
  switch (a) {
    case Action::Up: return {pos.row - 1, pos.col};
    case Action::Down: return {pos.row + 1, pos.col};
    case Action::Left: return {pos.row, pos.col - 1};
    case Action::Right: return {pos.row, pos.col + 1};
  }
  return pos;
}

MoveResult neighbor(Coord pos, Action a, const GridWorld& world) {
  if (!world.in_bounds(pos)) {
    fail(ErrorKind::Contract, "neighbor: position " + to_string(pos) + " outside grid");
  }
  const Coord target = shifted(pos, a);
  if (!world.in_bounds(target) || world.at(target) == Cell::Wall) {
    return {pos, true};
  }
  return {target, false};
}

const CoordSet& lava_at(const DynamicScenario& scenario, int t) {
  if (t < 0 || t > scenario.horizon()) {
    fail(ErrorKind::Horizon,
         "lava_at: tick " + std::to_string(t) + " outside 0.." + std::to_string(scenario.horizon()));
  }
  return scenario.lava_frames[static_cast<std::size_t>(t)];
}

std::vector<Violation> validate(const DynamicScenario& scenario, int step_limit) {
  std::vector<Violation> out;
  const GridWorld& w = scenario.world;
  auto breach = [&out](std::string invariant, Coord where, int tick, std::string detail) {
    out.push_back({std::move(invariant), where, tick, std::move(detail)});
  };

  if (w.width < 3 || w.width > 32 || w.height < 3 || w.height > 32) {
    breach("grid bounds in [3,32]", {}, -1,
           std::to_string(w.height) + "x" + std::to_string(w.width));
    return out;  // further checks would index out of range
  }
  if (w.cells.size() != static_cast<std::size_t>(w.width) * w.height) {
    breach("cells size = height*width", {}, -1, std::to_string(w.cells.size()) + " cells");
    return out;
  }
  if (!w.in_bounds(w.start)) breach("start inside grid", w.start, -1, "");
  if (!w.in_bounds(w.dest)) breach("dest inside grid", w.dest, -1, "");
  if (!out.empty()) return out;

  if (w.start == w.dest) breach("start != dest", w.start, -1, "");
  if (w.at(w.start) != Cell::Grass) breach("cells[start] = Grass", w.start, -1, "");
  if (w.at(w.dest) != Cell::Grass) breach("cells[dest] = Grass", w.dest, -1, "");

  if (scenario.lava_frames.empty()) {
    breach("lava_frames non-empty", {}, -1, "");
    return out;
  }
  if (step_limit >= 0 && scenario.horizon() < step_limit) {
    breach("horizon >= step limit", {}, scenario.horizon(),
           "L=" + std::to_string(step_limit));
  }

  const std::size_t trap_count = scenario.lava_frames[0].size();
  for (int t = 0; t <= scenario.horizon(); ++t) {
    const CoordSet& frame = scenario.lava_frames[static_cast<std::size_t>(t)];
    if (frame.size() != trap_count) {
      breach("|lava_frames[t]| constant", {}, t,
             std::to_string(frame.size()) + " vs " + std::to_string(trap_count));
    }
    if (!std::is_sorted(frame.begin(), frame.end()) ||
        std::adjacent_find(frame.begin(), frame.end()) != frame.end()) {
      breach("lava frame is a sorted set", {}, t, "");
    }
    for (const Coord& c : frame) {
      if (!w.in_bounds(c)) {
        breach("lava inside grid", c, t, "");
      } else if (w.at(c) != Cell::Grass) {
        breach("lava on Grass cell", c, t, std::string(to_string(w.at(c))));
      }
    }
  }
  if (contains(scenario.lava_frames[0], w.start)) {
    breach("lava_frames[0] excludes start", w.start, 0, "");
  }
  return out;
}

std::string_view to_string(Cell c) {
  switch (c) {
    case Cell::Grass: return "Grass";
    case Cell::Wall: return "Wall";
    case Cell::Water: return "Water";
  }
  return "?";
}

std::string_view to_string(Action a) {
  switch (a) {
    case Action::Up: return "Up";
    case Action::Down: return "Down";
    case Action::Left: return "Left";
    case Action::Right: return "Right";
  }
  return "?";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Success: return "Success";
    case Outcome::FailWater: return "FailWater";
    case Outcome::FailLava: return "FailLava";
    case Outcome::Unfinished: return "Unfinished";
  }
  return "?";
}

std::optional<Action> action_from_string(std::string_view name) {
  if (name == "Up") return Action::Up;
  if (name == "Down") return Action::Down;
  if (name == "Left") return Action::Left;
  if (name == "Right") return Action::Right;
  return std::nullopt;
}

std::optional<Outcome> outcome_from_string(std::string_view name) {
  if (name == "Success") return Outcome::Success;
  if (name == "FailWater") return Outcome::FailWater;
  if (name == "FailLava") return Outcome::FailLava;
  if (name == "Unfinished") return Outcome::Unfinished;
  return std::nullopt;
}

std::string to_string(Coord c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

}  // namespace grassland
