#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grassland/error.hpp"

namespace grassland {

// Grid position, origin at the top-left corner. Up decreases row, Right
// increases col. This convention is fixed project-wide.
struct Coord {
  int row = 0;
  int col = 0;
  auto operator<=>(const Coord&) const = default;
};

// Static cell kinds. Lava is not a cell kind: it moves every tick and is held
// per tick by DynamicScenario.
enum class Cell : std::uint8_t { Grass, Wall, Water };

// The four absolute move directions.
enum class Action : std::uint8_t { Up, Down, Left, Right };

// Terminal states of a run, one per answer choice A/B/C/D.
enum class Outcome : std::uint8_t { Success, FailWater, FailLava, Unfinished };

using ActionSequence = std::vector<Action>;

// Sorted, duplicate-free coordinate set (row-major order).
using CoordSet = std::vector<Coord>;

CoordSet make_coord_set(std::vector<Coord> coords);
bool contains(const CoordSet& set, Coord c);

// Static map: cell grid plus start and destination. Immutable by convention
// after construction; all operations take it by const reference.
struct GridWorld {
  int width = 0;   // [3, 32]
  int height = 0;  // [3, 32]
  std::vector<Cell> cells;  // row-major, height * width
  Coord start;
  Coord dest;

  bool in_bounds(Coord c) const {
    return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width;
  }
  Cell at(Coord c) const { return cells[static_cast<std::size_t>(c.row) * width + c.col]; }

  bool operator==(const GridWorld&) const = default;
};

// All-grass world, for tests and hand-built scenarios.
GridWorld make_grass_world(int height, int width, Coord start, Coord dest);

// Static map plus one lava occupancy set per tick t = 0..horizon().
struct DynamicScenario {
  GridWorld world;
  std::vector<CoordSet> lava_frames;

  int horizon() const { return static_cast<int>(lava_frames.size()) - 1; }

  bool operator==(const DynamicScenario&) const = default;
};

struct MoveResult {
  Coord target;
  bool blocked = false;
};

// One-step displacement without any clipping or wall rule.
Coord shifted(Coord pos, Action a);

// Tick-free movement rule: off-map edges are air walls, Wall cells cannot be
// entered. Blocked moves return the original position with blocked=true.
// Throws ErrorKind::Contract when pos is outside the grid.
MoveResult neighbor(Coord pos, Action a, const GridWorld& world);

// Lava occupancy at tick t. Throws ErrorKind::Horizon when t is out of range.
const CoordSet& lava_at(const DynamicScenario& scenario, int t);

// One named invariant breach. Violations are data, not errors.
struct Violation {
  std::string invariant;
  Coord where;
  int tick = -1;
  std::string detail;
};

// Checks every type invariant of the scenario; empty result iff well formed.
// The optional step limit additionally checks horizon >= step_limit.
std::vector<Violation> validate(const DynamicScenario& scenario, int step_limit = -1);

// Names for (de)serialization and messages.
std::string_view to_string(Cell c);
std::string_view to_string(Action a);
std::string_view to_string(Outcome o);
std::optional<Action> action_from_string(std::string_view name);
std::optional<Outcome> outcome_from_string(std::string_view name);
std::string to_string(Coord c);

}  // namespace grassland
