#pragma once

#include <optional>
#include <vector>

#include "grassland/world.hpp"

namespace grassland {

// Result of one executed tick. outcome empty means the run continues.
struct StepResult {
  Coord new_pos;
  bool blocked = false;
  std::optional<Outcome> outcome;
};

// Full simulated run. positions[0] is always the start cell; positions has
// steps_executed + 1 entries and the trace ends at the first terminal tick.
struct Trace {
  std::vector<Coord> positions;
  Outcome outcome = Outcome::Unfinished;
  int steps_executed = 0;
  std::vector<bool> blocked_flags;
};

// Tick-t semantics, the agent moving first within the second:
//   1. attempt the move (edge or Wall blocks => stay in place),
//   2. landing on Water fails,
//   3. landing on a cell lava occupied at t-1 fails (stepped into lava),
//   4. landing on a cell lava occupies at t fails (lava moved onto the agent;
//      this also catches lava running over a blocked, stationary agent),
//   5. landing on the destination succeeds.
// Destination is checked after the hazards: arriving together with lava is
// FailLava, not Success. pos must be the agent position after tick t-1.
StepResult step(Coord pos, Action a, const DynamicScenario& scenario, int t);

// Folds step over ticks 1..|actions|, stopping at the first terminal outcome.
// An exhausted sequence away from the destination yields Unfinished. Blocked
// moves are legal no-ops that still consume a tick (and a lava frame).
// Throws ErrorKind::Horizon when |actions| exceeds the scenario horizon.
Trace simulate(const DynamicScenario& scenario, const ActionSequence& actions);

// Success->A, FailWater->B, FailLava->C, Unfinished->D.
char outcome_to_choice(Outcome o);
std::optional<Outcome> choice_to_outcome(char letter);

}  // namespace grassland
