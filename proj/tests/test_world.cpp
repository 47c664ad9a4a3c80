#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "grassland/world.hpp"

#include "test_support.hpp"

using namespace grassland;
using namespace grassland::testing;

TEST_CASE("grass world construction") {
  const GridWorld w = make_grass_world(5, 7, {0, 0}, {4, 6});
  CHECK(w.height == 5);
  CHECK(w.width == 7);
  CHECK(w.cells.size() == 35);
  for (const Cell c : w.cells) CHECK(c == Cell::Grass);
  CHECK(w.start == Coord{0, 0});
  CHECK(w.dest == Coord{4, 6});
  CHECK(w.in_bounds({4, 6}));
  CHECK_FALSE(w.in_bounds({5, 0}));
  CHECK_FALSE(w.in_bounds({0, -1}));
}

TEST_CASE("coord set sorts and dedups") {
  const CoordSet set = make_coord_set({{2, 1}, {0, 3}, {2, 1}, {1, 0}});
  CHECK(set == CoordSet{{0, 3}, {1, 0}, {2, 1}});
  CHECK(contains(set, {1, 0}));
  CHECK_FALSE(contains(set, {3, 3}));
}

TEST_CASE("shifted follows the screen convention") {
  CHECK(shifted({2, 2}, Action::Up) == Coord{1, 2});
  CHECK(shifted({2, 2}, Action::Down) == Coord{3, 2});
  CHECK(shifted({2, 2}, Action::Left) == Coord{2, 1});
  CHECK(shifted({2, 2}, Action::Right) == Coord{2, 3});
}

TEST_CASE("neighbor blocks edges and walls") {
  GridWorld w = make_grass_world(3, 3, {2, 0}, {0, 2});
  w.cells[1 * 3 + 0] = Cell::Wall;  // (1,0)

  SUBCASE("open move") {
    const MoveResult r = neighbor({2, 1}, Action::Up, w);
    CHECK(r.target == Coord{1, 1});
    CHECK_FALSE(r.blocked);
  }
  SUBCASE("map edge is an air wall") {
    const MoveResult r = neighbor({2, 0}, Action::Down, w);
    CHECK(r.target == Coord{2, 0});
    CHECK(r.blocked);
  }
  SUBCASE("wall cell cannot be entered") {
    const MoveResult r = neighbor({2, 0}, Action::Up, w);
    CHECK(r.target == Coord{2, 0});
    CHECK(r.blocked);
  }
  SUBCASE("water is enterable (the hazard is dynamics' business)") {
    GridWorld v = w;
    v.cells[2 * 3 + 1] = Cell::Water;
    const MoveResult r = neighbor({2, 0}, Action::Right, v);
    CHECK(r.target == Coord{2, 1});
    CHECK_FALSE(r.blocked);
  }
  SUBCASE("out-of-grid position is a contract breach") {
    CHECK_THROWS_AS(neighbor({5, 5}, Action::Up, w), Error);
  }
}

TEST_CASE("lava_at bounds") {
  const DynamicScenario s =
      static_scenario(make_grass_world(3, 3, {2, 0}, {0, 2}), {{1, 1}}, 4);
  CHECK(lava_at(s, 0) == CoordSet{{1, 1}});
  CHECK(lava_at(s, 4) == CoordSet{{1, 1}});
  CHECK_THROWS_AS(lava_at(s, 5), Error);
  CHECK_THROWS_AS(lava_at(s, -1), Error);
}

TEST_CASE("validate accepts a well-formed scenario") {
  const DynamicScenario s =
      static_scenario(make_grass_world(5, 5, {4, 0}, {0, 4}), {{2, 2}}, 8);
  CHECK(validate(s).empty());
  CHECK(validate(s, 6).empty());
}

TEST_CASE("validate names each breach") {
  auto invariants = [](const std::vector<Violation>& vs) {
    std::vector<std::string> names;
    for (const Violation& v : vs) names.push_back(v.invariant);
    return names;
  };

  SUBCASE("grid too small") {
    DynamicScenario s = static_scenario(make_grass_world(3, 3, {2, 0}, {0, 2}));
    s.world.height = 2;
    s.world.width = 2;
    s.world.cells.resize(4);
    CHECK(invariants(validate(s)) == std::vector<std::string>{"grid bounds in [3,32]"});
  }
  SUBCASE("start equals dest") {
    const DynamicScenario s = static_scenario(make_grass_world(3, 3, {1, 1}, {1, 1}));
    CHECK(invariants(validate(s)) == std::vector<std::string>{"start != dest"});
  }
  SUBCASE("start not on grass") {
    DynamicScenario s = static_scenario(make_grass_world(3, 3, {2, 0}, {0, 2}));
    s.world.cells[2 * 3 + 0] = Cell::Water;
    CHECK(invariants(validate(s)) == std::vector<std::string>{"cells[start] = Grass"});
  }
  SUBCASE("short horizon against the step limit") {
    const DynamicScenario s = static_scenario(make_grass_world(3, 3, {2, 0}, {0, 2}), {}, 4);
    CHECK(validate(s).empty());
    CHECK(invariants(validate(s, 6)) == std::vector<std::string>{"horizon >= step limit"});
  }
  SUBCASE("lava on a wall cell") {
    DynamicScenario s = static_scenario(make_grass_world(3, 3, {2, 0}, {0, 2}), {{1, 1}});
    s.world.cells[1 * 3 + 1] = Cell::Wall;
    const auto names = invariants(validate(s));
    CHECK(std::count(names.begin(), names.end(), "lava on Grass cell") ==
          static_cast<long>(s.lava_frames.size()));
  }
  SUBCASE("lava starting on the agent") {
    const DynamicScenario s =
        static_scenario(make_grass_world(3, 3, {2, 0}, {0, 2}), {{2, 0}});
    const auto names = invariants(validate(s));
    CHECK(std::count(names.begin(), names.end(), "lava_frames[0] excludes start") == 1);
  }
  SUBCASE("trap count changing mid-trajectory") {
    DynamicScenario s = static_scenario(make_grass_world(3, 3, {2, 0}, {0, 2}), {{1, 1}});
    s.lava_frames[3] = {};
    const auto names = invariants(validate(s));
    CHECK(std::count(names.begin(), names.end(), "|lava_frames[t]| constant") == 1);
  }
}

TEST_CASE("name round-trips") {
  CHECK(to_string(Action::Up) == "Up");
  CHECK(action_from_string("Right") == Action::Right);
  CHECK_FALSE(action_from_string("Sideways").has_value());
  CHECK(to_string(Outcome::FailWater) == "FailWater");
  CHECK(outcome_from_string("Unfinished") == Outcome::Unfinished);
  CHECK_FALSE(outcome_from_string("Meh").has_value());
  CHECK(to_string(Coord{3, 4}) == "(3,4)");
}
