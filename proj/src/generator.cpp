#include "grassland/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "grassland/dynamics.hpp"
#include "grassland/hash.hpp"

namespace grassland {

namespace {

constexpr int kRejectionCap = 10000;

int manhattan(Coord a, Coord b) { return std::abs(a.row - b.row) + std::abs(a.col - b.col); }

struct DistanceBand {
  int lo = 0;
  int hi = 0;
};

// Start/dest separation, tuned so mean route lengths land near the difficulty
// table's published statistics while staying within the step limit.
DistanceBand separation(const DifficultyConfig& c) {
  if (c.task == Task::Judgment) return {5, 6};
  if (c.level == Level::Hard) return {4, 5};
  return {3, 5};
}

Coord cell_of(int index, int width) { return {index / width, index % width}; }

// Draws `count` distinct indices from `pool` (consumed in place).
std::vector<int> draw(std::vector<int>& pool, int count, RandomSource& rng) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    int i = rng.uniform_int(0, static_cast<int>(pool.size()) - 1);
    out.push_back(pool[static_cast<std::size_t>(i)]);
    pool.erase(pool.begin() + i);
  }
  return out;
}

// Per-trap patrol state: ping-pong along one axis, at most `span` cells from
// the anchor, reversing at the ends or when the next cell is unusable.
struct PatrolState {
  Coord anchor;
  bool horizontal = false;
  int span = 1;
  int dir = 1;
  int offset = 0;
};

class LavaMotion {
 public:
  LavaMotion(const GridWorld& world, std::vector<Coord> initial, MoverKind kind,
             double stay_prob, RandomSource& rng)
      : world_(world), positions_(std::move(initial)), kind_(kind), stay_prob_(stay_prob) {
    if (kind_ == MoverKind::Patrol) {
      for (Coord c : positions_) {
        PatrolState p;
        p.anchor = c;
        p.horizontal = rng.bernoulli(0.5);
        p.span = rng.uniform_int(1, 2);
        p.dir = rng.bernoulli(0.5) ? 1 : -1;
        patrol_.push_back(p);
      }
    }
  }

  CoordSet frame() const { return make_coord_set(positions_); }

  // Advances every trap one tick. Traps move one at a time; a trap may not
  // enter a cell already taken by a trap that moved this tick nor one still
  // held by a trap that has not. Staying put is always legal, so the step
  // never deadlocks.
  void advance(RandomSource& rng) {
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      if (kind_ == MoverKind::RandomWalk) {
        positions_[i] = walk_step(positions_[i], i, rng);
      } else {
        positions_[i] = patrol_step(i, patrol_[i]);
      }
    }
  }

 private:
  bool usable(Coord c, std::size_t self) const {
    if (!world_.in_bounds(c) || world_.at(c) != Cell::Grass) return false;
    for (std::size_t j = 0; j < positions_.size(); ++j) {
      if (j != self && positions_[j] == c) return false;
    }
    return true;
  }

  Coord walk_step(Coord pos, std::size_t self, RandomSource& rng) {
    if (rng.bernoulli(stay_prob_)) return pos;
    std::vector<Coord> options;
    for (Action a : {Action::Up, Action::Down, Action::Left, Action::Right}) {
      Coord c = shifted(pos, a);
      if (usable(c, self)) options.push_back(c);
    }
    if (options.empty()) return pos;
    return options[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(options.size()) - 1))];
  }

  Coord patrol_step(std::size_t self, PatrolState& p) {
    for (int attempt = 0; attempt < 2; ++attempt) {
      int next_offset = p.offset + p.dir;
      Coord c = p.anchor;
      (p.horizontal ? c.col : c.row) += next_offset;
      if (std::abs(next_offset) <= p.span && usable(c, self)) {
        p.offset = next_offset;
        return c;
      }
      p.dir = -p.dir;
    }
    return positions_[self];
  }

  const GridWorld& world_;
  std::vector<Coord> positions_;  // trap order, stable across ticks
  MoverKind kind_;
  double stay_prob_;
  std::vector<PatrolState> patrol_;
};

// One full board draw: static cells, start/dest, initial lava, trajectories.
DynamicScenario roll_scenario(const DifficultyConfig& cfg, RandomSource& rng) {
  const int cells_total = cfg.grid_h * cfg.grid_w;
  const DistanceBand band = separation(cfg);

  Coord start, dest;
  while (true) {
    start = cell_of(rng.uniform_int(0, cells_total - 1), cfg.grid_w);
    std::vector<Coord> candidates;
    for (int i = 0; i < cells_total; ++i) {
      Coord c = cell_of(i, cfg.grid_w);
      int d = manhattan(start, c);
      if (d >= band.lo && d <= band.hi) candidates.push_back(c);
    }
    if (candidates.empty()) continue;
    dest = candidates[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(candidates.size()) - 1))];
    break;
  }

  GridWorld world = make_grass_world(cfg.grid_h, cfg.grid_w, start, dest);

  std::vector<int> open;
  for (int i = 0; i < cells_total; ++i) {
    Coord c = cell_of(i, cfg.grid_w);
    if (c != start && c != dest) open.push_back(i);
  }
  for (int i : draw(open, cfg.n_walls, rng)) {
    world.cells[static_cast<std::size_t>(i)] = Cell::Wall;
  }
  const int n_water = cfg.water_min == cfg.water_max
                          ? cfg.water_min
                          : rng.uniform_int(cfg.water_min, cfg.water_max);
  for (int i : draw(open, n_water, rng)) {
    world.cells[static_cast<std::size_t>(i)] = Cell::Water;
  }

  // Initial lava: any grass cell except the start. The destination is fair
  // game; a trap squatting there just makes the solvability rejection fire.
  std::vector<int> lava_pool;
  for (int i = 0; i < cells_total; ++i) {
    Coord c = cell_of(i, cfg.grid_w);
    if (c != start && world.at(c) == Cell::Grass) lava_pool.push_back(i);
  }
  std::vector<Coord> lava0;
  for (int i : draw(lava_pool, cfg.n_lava, rng)) lava0.push_back(cell_of(i, cfg.grid_w));

  DynamicScenario scenario;
  scenario.world = std::move(world);
  LavaMotion motion(scenario.world, std::move(lava0), cfg.mover, cfg.stay_prob, rng);
  scenario.lava_frames.push_back(motion.frame());
  for (int t = 1; t <= cfg.horizon; ++t) {
    motion.advance(rng);
    scenario.lava_frames.push_back(motion.frame());
  }
  return scenario;
}

std::string row_string(const GridWorld& world, int row) {
  std::string out;
  for (int col = 0; col < world.width; ++col) {
    switch (world.at({row, col})) {
      case Cell::Grass: out += 'G'; break;
      case Cell::Wall: out += 'W'; break;
      case Cell::Water: out += '~'; break;
    }
  }
  return out;
}

nlohmann::ordered_json coord_json(Coord c) { return nlohmann::ordered_json::array({c.row, c.col}); }

Coord coord_from(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    fail(ErrorKind::Parse, field + ": expected [row, col]");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

[[noreturn]] void bad_field(const std::string& where, const std::string& field,
                            const std::string& why) {
  std::string at = where.empty() ? "" : where + ": ";
  fail(ErrorKind::Parse, at + "field '" + field + "': " + why);
}

}  // namespace

std::string to_string(Task task) {
  return task == Task::Judgment ? "judgment" : "navigation";
}

std::string to_string(Level level) {
  switch (level) {
    case Level::Easy: return "easy";
    case Level::Normal: return "normal";
    case Level::Hard: return "hard";
  }
  return "?";
}

Task task_from_string(const std::string& text) {
  if (text == "judgment") return Task::Judgment;
  if (text == "navigation") return Task::Navigation;
  fail(ErrorKind::Parse, "unknown task '" + text + "' (expected judgment|navigation)");
}

Level level_from_string(const std::string& text) {
  if (text == "easy") return Level::Easy;
  if (text == "normal") return Level::Normal;
  if (text == "hard") return Level::Hard;
  fail(ErrorKind::Parse, "unknown level '" + text + "' (expected easy|normal|hard)");
}

DifficultyConfig default_config(Task task, Level level) {
  DifficultyConfig c;
  c.task = task;
  c.level = level;
  const int i = static_cast<int>(level);
  if (task == Task::Judgment) {
    c.grid_h = c.grid_w = 7;
    c.n_walls = i;                      // 0 / 1 / 2
    c.n_lava = 2 + i;                   // 2 / 3 / 4
    c.water_min = c.water_max = i;      // 0 / 1 / 2
  } else {
    c.grid_h = c.grid_w = 5;
    c.n_walls = 1 + i;                  // 1 / 2 / 3
    c.n_lava = level == Level::Easy ? 1 : 2;  // 1 / 2 / 2
    c.water_min = 0;
    c.water_max = level == Level::Hard ? 6 : 4;  // 0-4 / 0-4 / 0-6
  }
  return c;
}

std::uint64_t config_digest(const DifficultyConfig& c) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s|%s|%dx%d|w%d|l%d|s%d-%d|L%d|H%d|m%d|p%.6g|q%.6g",
                to_string(c.task).c_str(), to_string(c.level).c_str(), c.grid_h, c.grid_w,
                c.n_walls, c.n_lava, c.water_min, c.water_max, c.step_limit, c.horizon,
                static_cast<int>(c.mover), c.stay_prob, c.perturb_rate);
  return fnv1a64(std::string_view(buf));
}

std::vector<Outcome> feasible_buckets(const DifficultyConfig& config) {
  std::vector<Outcome> out{Outcome::Success};
  if (config.water_max > 0) out.push_back(Outcome::FailWater);
  out.push_back(Outcome::FailLava);
  out.push_back(Outcome::Unfinished);
  return out;
}

ActionSequence sample_judgment_actions(const DynamicScenario& scenario, RandomSource& rng,
                                       int step_limit, double perturb_rate) {
  const PlanResult plan = safe_route(scenario, step_limit);
  ActionSequence seq = plan.route.value_or(ActionSequence{});
  if (perturb_rate <= 0.0) return seq;

  auto random_action = [&rng] {
    return static_cast<Action>(rng.uniform_int(0, 3));
  };
  for (Action& a : seq) {
    if (rng.bernoulli(perturb_rate)) a = random_action();
  }
  const int hi = std::min(6, step_limit);
  const int lo = std::min(5, hi);
  const auto target = static_cast<std::size_t>(rng.uniform_int(lo, hi));
  while (seq.size() < target) seq.push_back(random_action());
  if (seq.size() > target) seq.resize(target);
  return seq;
}

Instance generate(const DifficultyConfig& config, std::uint64_t seed,
                  std::optional<Outcome> target_bucket) {
  RandomSource rng(seed);
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    DynamicScenario scenario = roll_scenario(config, rng);
    if (auto violations = validate(scenario, config.step_limit); !violations.empty()) {
      fail(ErrorKind::Contract, "generator emitted an invalid board: " +
                                    violations.front().invariant + " " +
                                    violations.front().detail);
    }

    Instance inst;
    inst.config = config;
    inst.seed = seed;
    inst.scenario = std::move(scenario);
    inst.id = to_string(config.task) + "-" + to_string(config.level) + "-" + to_hex(seed);

    if (config.task == Task::Navigation) {
      PlanResult plan = safe_route(inst.scenario, config.step_limit);
      if (!plan.solvable()) continue;
      inst.route_truth = std::move(plan);
      return inst;
    }

    // Judgment boards must themselves be solvable so the Success bucket is
    // reachable and route prefixes are meaningful.
    if (!is_solvable(inst.scenario, config.step_limit)) continue;
    inst.actions =
        sample_judgment_actions(inst.scenario, rng, config.step_limit, config.perturb_rate);
    inst.judgment_truth = simulate(inst.scenario, inst.actions).outcome;
    if (target_bucket && inst.judgment_truth != *target_bucket) continue;
    return inst;
  }
  fail(ErrorKind::Generation,
       "gave up after " + std::to_string(kRejectionCap) + " attempts for " +
           to_string(config.task) + "-" + to_string(config.level) +
           (target_bucket ? " targeting outcome " + std::string(to_string(*target_bucket))
                          : std::string{}) +
           " (seed " + to_hex(seed) + ")");
}

std::vector<Instance> generate_batch(const DifficultyConfig& config, std::uint64_t master_seed,
                                     int count) {
  const std::vector<Outcome> buckets = feasible_buckets(config);
  std::vector<Instance> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::optional<Outcome> target;
    if (config.task == Task::Judgment) {
      target = buckets[static_cast<std::size_t>(i) % buckets.size()];
    }
    out.push_back(generate(config, derive_seed(master_seed, static_cast<std::uint64_t>(i)),
                           target));
  }
  return out;
}

nlohmann::ordered_json instance_to_json(const Instance& inst) {
  nlohmann::ordered_json doc;
  doc["id"] = inst.id;
  doc["task"] = to_string(inst.config.task);
  doc["level"] = to_string(inst.config.level);
  doc["seed"] = inst.seed;
  nlohmann::ordered_json grid;
  grid["h"] = inst.scenario.world.height;
  grid["w"] = inst.scenario.world.width;
  auto rows = nlohmann::ordered_json::array();
  for (int r = 0; r < inst.scenario.world.height; ++r) {
    rows.push_back(row_string(inst.scenario.world, r));
  }
  grid["cells"] = rows;
  doc["grid"] = grid;
  doc["start"] = coord_json(inst.scenario.world.start);
  doc["dest"] = coord_json(inst.scenario.world.dest);
  auto frames = nlohmann::ordered_json::array();
  for (const CoordSet& frame : inst.scenario.lava_frames) {
    auto f = nlohmann::ordered_json::array();
    for (Coord c : frame) f.push_back(coord_json(c));
    frames.push_back(f);
  }
  doc["lava_frames"] = frames;
  if (inst.config.task == Task::Judgment) {
    auto acts = nlohmann::ordered_json::array();
    for (Action a : inst.actions) acts.push_back(std::string(to_string(a)));
    doc["actions"] = acts;
    doc["ground_truth"] = std::string(to_string(inst.judgment_truth));
  } else {
    nlohmann::ordered_json gt;
    gt["solvable"] = inst.route_truth.solvable();
    auto route = nlohmann::ordered_json::array();
    if (inst.route_truth.route) {
      for (Action a : *inst.route_truth.route) route.push_back(std::string(to_string(a)));
    }
    gt["route"] = route;
    doc["ground_truth"] = gt;
  }
  doc["step_limit"] = inst.config.step_limit;
  return doc;
}

Instance instance_from_json(const nlohmann::json& doc, const std::string& where) {
  auto need = [&](const char* field) -> const nlohmann::json& {
    if (!doc.contains(field)) bad_field(where, field, "missing");
    return doc.at(field);
  };

  Instance inst;
  if (!need("id").is_string()) bad_field(where, "id", "expected string");
  inst.id = doc["id"].get<std::string>();
  const Task task = task_from_string(need("task").get<std::string>());
  const Level level = level_from_string(need("level").get<std::string>());
  inst.config = default_config(task, level);
  if (!need("seed").is_number_unsigned() && !doc["seed"].is_number_integer()) {
    bad_field(where, "seed", "expected integer");
  }
  inst.seed = doc["seed"].get<std::uint64_t>();
  if (!need("step_limit").is_number_integer()) bad_field(where, "step_limit", "expected integer");
  inst.config.step_limit = doc["step_limit"].get<int>();

  const nlohmann::json& grid = need("grid");
  if (!grid.is_object()) bad_field(where, "grid", "expected object");
  const int h = grid.value("h", -1);
  const int w = grid.value("w", -1);
  if (h <= 0 || w <= 0) bad_field(where, "grid", "bad h/w");
  if (!grid.contains("cells") || !grid["cells"].is_array() ||
      grid["cells"].size() != static_cast<std::size_t>(h)) {
    bad_field(where, "grid.cells", "expected " + std::to_string(h) + " row strings");
  }
  GridWorld world;
  world.height = h;
  world.width = w;
  world.cells.resize(static_cast<std::size_t>(h) * w, Cell::Grass);
  for (int r = 0; r < h; ++r) {
    const auto& rowj = grid["cells"][static_cast<std::size_t>(r)];
    if (!rowj.is_string()) bad_field(where, "grid.cells", "row " + std::to_string(r));
    const std::string row = rowj.get<std::string>();
    if (row.size() != static_cast<std::size_t>(w)) {
      bad_field(where, "grid.cells",
                "row " + std::to_string(r) + " has length " + std::to_string(row.size()));
    }
    for (int c = 0; c < w; ++c) {
      Cell cell = Cell::Grass;
      switch (row[static_cast<std::size_t>(c)]) {
        case 'G': cell = Cell::Grass; break;
        case 'W': cell = Cell::Wall; break;
        case '~': cell = Cell::Water; break;
        default:
          bad_field(where, "grid.cells", std::string("unknown cell glyph '") +
                                             row[static_cast<std::size_t>(c)] + "' at row " +
                                             std::to_string(r));
      }
      world.cells[static_cast<std::size_t>(r) * w + c] = cell;
    }
  }
  world.start = coord_from(need("start"), where + " start");
  world.dest = coord_from(need("dest"), where + " dest");

  const nlohmann::json& frames = need("lava_frames");
  if (!frames.is_array() || frames.empty()) bad_field(where, "lava_frames", "expected frames");
  DynamicScenario scenario;
  scenario.world = std::move(world);
  for (const auto& framej : frames) {
    if (!framej.is_array()) bad_field(where, "lava_frames", "frame is not an array");
    std::vector<Coord> frame;
    for (const auto& cj : framej) frame.push_back(coord_from(cj, where + " lava_frames"));
    scenario.lava_frames.push_back(make_coord_set(std::move(frame)));
  }
  inst.config.horizon = scenario.horizon();
  inst.scenario = std::move(scenario);

  // The document claims a difficulty; hold it to that difficulty's counts.
  if (auto violations = validate(inst.scenario, inst.config.step_limit); !violations.empty()) {
    bad_field(where, "grid", "invariant '" + violations.front().invariant + "' broken: " +
                                 violations.front().detail);
  }
  int walls = 0, water = 0;
  for (Cell c : inst.scenario.world.cells) {
    walls += c == Cell::Wall;
    water += c == Cell::Water;
  }
  if (walls != inst.config.n_walls) {
    bad_field(where, "grid.cells", "wall count " + std::to_string(walls) + " != " +
                                       std::to_string(inst.config.n_walls));
  }
  if (water < inst.config.water_min || water > inst.config.water_max) {
    bad_field(where, "grid.cells", "water count " + std::to_string(water) + " outside [" +
                                       std::to_string(inst.config.water_min) + "," +
                                       std::to_string(inst.config.water_max) + "]");
  }
  if (static_cast<int>(inst.scenario.lava_frames[0].size()) != inst.config.n_lava) {
    bad_field(where, "lava_frames", "trap count " +
                                        std::to_string(inst.scenario.lava_frames[0].size()) +
                                        " != " + std::to_string(inst.config.n_lava));
  }

  const nlohmann::json& gt = need("ground_truth");
  if (task == Task::Judgment) {
    if (!doc.contains("actions") || !doc["actions"].is_array()) {
      bad_field(where, "actions", "judgment instance without actions");
    }
    for (const auto& aj : doc["actions"]) {
      auto a = action_from_string(aj.is_string() ? aj.get<std::string>() : "");
      if (!a) bad_field(where, "actions", "unknown action " + aj.dump());
      inst.actions.push_back(*a);
    }
    if (!gt.is_string()) bad_field(where, "ground_truth", "expected outcome name");
    auto stored = outcome_from_string(gt.get<std::string>());
    if (!stored) bad_field(where, "ground_truth", "unknown outcome " + gt.dump());
    inst.judgment_truth = simulate(inst.scenario, inst.actions).outcome;
    if (inst.judgment_truth != *stored) {
      bad_field(where, "ground_truth",
                "stored " + gt.get<std::string>() + " but replay gives " +
                    std::string(to_string(inst.judgment_truth)));
    }
  } else {
    if (!gt.is_object() || !gt.contains("route") || !gt["route"].is_array()) {
      bad_field(where, "ground_truth", "expected {solvable, route}");
    }
    ActionSequence stored_route;
    for (const auto& aj : gt["route"]) {
      auto a = action_from_string(aj.is_string() ? aj.get<std::string>() : "");
      if (!a) bad_field(where, "ground_truth.route", "unknown action " + aj.dump());
      stored_route.push_back(*a);
    }
    const bool stored_solvable = gt.value("solvable", false);
    inst.route_truth = safe_route(inst.scenario, inst.config.step_limit);
    if (inst.route_truth.solvable() != stored_solvable ||
        inst.route_truth.route.value_or(ActionSequence{}) != stored_route) {
      bad_field(where, "ground_truth", "stored route does not match replanned route");
    }
    if (!inst.route_truth.solvable()) {
      bad_field(where, "ground_truth", "navigation instance is not solvable within L");
    }
  }

  const std::string expect_id =
      to_string(task) + "-" + to_string(level) + "-" + to_hex(inst.seed);
  if (inst.id != expect_id) {
    bad_field(where, "id", "'" + inst.id + "' does not match '" + expect_id + "'");
  }
  return inst;
}

void export_instances(const std::vector<Instance>& instances, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir / "manifest.jsonl", std::ios::binary);
  if (!manifest) fail(ErrorKind::Io, "cannot write " + (dir / "manifest.jsonl").string());
  for (const Instance& inst : instances) {
    const std::string file = inst.id + ".json";
    std::ofstream out(dir / file, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + (dir / file).string());
    out << instance_to_json(inst).dump(2) << '\n';
    nlohmann::ordered_json row;
    row["id"] = inst.id;
    row["seed"] = inst.seed;
    row["file"] = file;
    row["config_digest"] = to_hex(config_digest(inst.config));
    manifest << row.dump() << '\n';
  }
}

Instance load_instance(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot read " + file.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, file.string() + ": " + e.what());
  }
  return instance_from_json(doc, file.string());
}

std::vector<Instance> import_instances(const std::filesystem::path& dir) {
  const std::filesystem::path manifest_path = dir / "manifest.jsonl";
  std::ifstream manifest(manifest_path);
  if (!manifest) fail(ErrorKind::Io, "cannot read " + manifest_path.string());
  std::vector<Instance> out;
  std::string line;
  int line_no = 0;
  while (std::getline(manifest, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = manifest_path.string() + ":" + std::to_string(line_no);
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::Parse, where + ": " + e.what());
    }
    if (!row.contains("file") || !row["file"].is_string()) {
      fail(ErrorKind::Parse, where + ": manifest row without file");
    }
    Instance inst = load_instance(dir / row["file"].get<std::string>());
    if (row.value("id", "") != inst.id) {
      fail(ErrorKind::Parse, where + ": manifest id does not match instance id");
    }
    if (row.value("config_digest", "") != to_hex(config_digest(inst.config))) {
      fail(ErrorKind::Parse, where + ": config digest mismatch for " + inst.id);
    }
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace grassland
