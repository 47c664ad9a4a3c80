#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grassland/planner.hpp"
#include "grassland/rng.hpp"
#include "grassland/world.hpp"

#include "json.hpp"

namespace grassland {

enum class Task : std::uint8_t { Judgment, Navigation };
enum class Level : std::uint8_t { Easy, Normal, Hard };

std::string to_string(Task task);
std::string to_string(Level level);
Task task_from_string(const std::string& text);
Level level_from_string(const std::string& text);

// How the dynamic traps move from one tick to the next.
enum class MoverKind : std::uint8_t { RandomWalk, Patrol };

struct DifficultyConfig {
  Task task = Task::Judgment;
  Level level = Level::Easy;
  int grid_h = 7;
  int grid_w = 7;
  int n_walls = 0;
  int n_lava = 0;
  // Water is an exact count when min == max, otherwise sampled per instance.
  int water_min = 0;
  int water_max = 0;
  int step_limit = 6;
  int horizon = 8;
  MoverKind mover = MoverKind::RandomWalk;
  // RandomWalk: chance a trap stays put on a given tick.
  double stay_prob = 0.2;
  // Judgment action sampling: per-index chance of swapping in a random action.
  double perturb_rate = 0.35;

  bool operator==(const DifficultyConfig&) const = default;
};

// The stock difficulty table. Judgment plays on 7x7 boards, navigation on
// 5x5; wall/trap counts step up with the level.
DifficultyConfig default_config(Task task, Level level);

// Stable digest of a config, suitable for manifests.
std::uint64_t config_digest(const DifficultyConfig& config);

struct Instance {
  std::string id;
  DifficultyConfig config;
  std::uint64_t seed = 0;
  DynamicScenario scenario;
  // Judgment: the action sequence under test plus its simulated outcome.
  ActionSequence actions;
  Outcome judgment_truth = Outcome::Unfinished;
  // Navigation: the planner's certified route.
  PlanResult route_truth;

  bool operator==(const Instance&) const = default;
};

// Which judgment outcomes this config can actually produce. Boards without
// water cannot yield FailWater, so that bucket drops out on easy.
std::vector<Outcome> feasible_buckets(const DifficultyConfig& config);

// Draws an action sequence for a judgment instance: the planner route with
// per-index random substitutions, then trimmed or padded to a target length.
// A perturb_rate of zero reproduces the route verbatim.
ActionSequence sample_judgment_actions(const DynamicScenario& scenario, RandomSource& rng,
                                       int step_limit, double perturb_rate);

// Builds one instance, rejection-sampling boards until the constraints hold
// (navigation: solvable within L; judgment: outcome lands in target_bucket
// when given). Deterministic for (config, seed). Throws ErrorKind::Generation
// when the attempt cap is exhausted.
Instance generate(const DifficultyConfig& config, std::uint64_t seed,
                  std::optional<Outcome> target_bucket = std::nullopt);

// Builds `count` instances from per-index seeds derived off master_seed.
// Judgment batches round-robin the feasible outcome buckets so per-choice
// accuracy has support everywhere.
std::vector<Instance> generate_batch(const DifficultyConfig& config, std::uint64_t master_seed,
                                     int count);

nlohmann::ordered_json instance_to_json(const Instance& instance);

// Parses and fully re-checks an instance document: world invariants, entity
// counts against the embedded config, and ground truth re-derived from the
// scenario. Any mismatch is a parse error naming the field.
Instance instance_from_json(const nlohmann::json& doc, const std::string& where = "");

// One file per instance ("<id>.json") plus "manifest.jsonl" rows of
// {id, seed, file, config_digest}. Import reads the manifest in order.
void export_instances(const std::vector<Instance>& instances, const std::filesystem::path& dir);
std::vector<Instance> import_instances(const std::filesystem::path& dir);
Instance load_instance(const std::filesystem::path& file);

}  // namespace grassland
