#include "grassland/dynamics.hpp"

namespace grassland {

StepResult step(Coord pos, Action a, const DynamicScenario& scenario, int t) {
  if (t < 1 || t > scenario.horizon()) {
    fail(ErrorKind::Horizon,
         "step: tick " + std::to_string(t) + " outside 1.." + std::to_string(scenario.horizon()));
  }
  const MoveResult move = neighbor(pos, a, scenario.world);
  StepResult result{move.target, move.blocked, std::nullopt};

  if (scenario.world.at(move.target) == Cell::Water) {
    result.outcome = Outcome::FailWater;
  } else if (contains(lava_at(scenario, t - 1), move.target) ||
             contains(lava_at(scenario, t), move.target)) {
    result.outcome = Outcome::FailLava;
  } else if (move.target == scenario.world.dest) {
    result.outcome = Outcome::Success;
  }
  return result;
}

Trace simulate(const DynamicScenario& scenario, const ActionSequence& actions) {
  if (static_cast<int>(actions.size()) > scenario.horizon()) {
    fail(ErrorKind::Horizon, "simulate: " + std::to_string(actions.size()) +
                                 " actions exceed horizon " + std::to_string(scenario.horizon()));
  }
  Trace trace;
  trace.positions.push_back(scenario.world.start);

  Coord pos = scenario.world.start;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const StepResult r = step(pos, actions[i], scenario, static_cast<int>(i) + 1);
    pos = r.new_pos;
    trace.positions.push_back(pos);
    trace.blocked_flags.push_back(r.blocked);
    trace.steps_executed = static_cast<int>(i) + 1;
    if (r.outcome) {
      trace.outcome = *r.outcome;
      return trace;
    }
  }
  trace.outcome = Outcome::Unfinished;
  return trace;
}

char outcome_to_choice(Outcome o) {
  switch (o) {
    case Outcome::Success: return 'A';
    case Outcome::FailWater: return 'B';
    case Outcome::FailLava: return 'C';
    case Outcome::Unfinished: return 'D';
  }
  return '?';
}

std::optional<Outcome> choice_to_outcome(char letter) {
  switch (letter) {
    case 'A': return Outcome::Success;
    case 'B': return Outcome::FailWater;
    case 'C': return Outcome::FailLava;
    case 'D': return Outcome::Unfinished;
    default: return std::nullopt;
  }
}

}  // namespace grassland
