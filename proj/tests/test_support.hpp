#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grassland/dynamics.hpp"
#include "grassland/reasoner.hpp"
#include "grassland/world.hpp"

namespace grassland::testing {

// A static scenario: the same lava set on every tick.
inline DynamicScenario static_scenario(GridWorld world, CoordSet lava = {}, int horizon = 8) {
  DynamicScenario s;
  s.world = std::move(world);
  s.lava_frames.assign(static_cast<std::size_t>(horizon) + 1, make_coord_set(lava));
  return s;
}

// Cells-by-hand scenario: per-tick lava sets given explicitly.
inline DynamicScenario moving_scenario(GridWorld world, std::vector<CoordSet> lava_frames) {
  DynamicScenario s;
  s.world = std::move(world);
  for (CoordSet& frame : lava_frames) s.lava_frames.push_back(make_coord_set(frame));
  return s;
}

struct BruteResult {
  bool solvable = false;
  int optimal_length = 0;
  // Lexicographically smallest successful prefix (Up < Down < Left < Right)
  // among the shortest ones.
  ActionSequence best;
};

// Exhaustive ground truth: replays every length-`limit` action sequence (all
// 4^limit of them) and keeps the best successful prefix.
inline BruteResult brute_force(const DynamicScenario& scenario, int limit) {
  BruteResult result;
  const std::uint64_t total = 1ULL << (2 * limit);  // 4^limit
  ActionSequence seq(static_cast<std::size_t>(limit));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t v = code;
    for (int i = 0; i < limit; ++i) {
      seq[static_cast<std::size_t>(i)] = static_cast<Action>(v & 3);
      v >>= 2;
    }
    const Trace trace = simulate(scenario, seq);
    if (trace.outcome != Outcome::Success) continue;
    ActionSequence prefix(seq.begin(), seq.begin() + trace.steps_executed);
    if (!result.solvable || trace.steps_executed < result.optimal_length ||
        (trace.steps_executed == result.optimal_length && prefix < result.best)) {
      result.solvable = true;
      result.optimal_length = trace.steps_executed;
      result.best = std::move(prefix);
    }
  }
  return result;
}

// Wraps a reasoner and logs every request it sees, for context inspection.
class RecordingReasoner : public Reasoner {
 public:
  RecordingReasoner(Reasoner& inner, std::vector<ReasonerRequest>& log)
      : inner_(inner), log_(log) {}

  std::string name() const override { return inner_.name(); }
  std::string complete(const ReasonerRequest& request) override {
    log_.push_back(request);
    return inner_.complete(request);
  }

 private:
  Reasoner& inner_;
  std::vector<ReasonerRequest>& log_;
};

inline int count_images(const ReasonerRequest& request) {
  int n = 0;
  for (const Part& part : request.parts) {
    if (part.kind == Part::Kind::Image) ++n;
  }
  return n;
}

inline int count_texts(const ReasonerRequest& request) {
  int n = 0;
  for (const Part& part : request.parts) {
    if (part.kind == Part::Kind::Text) ++n;
  }
  return n;
}

}  // namespace grassland::testing
