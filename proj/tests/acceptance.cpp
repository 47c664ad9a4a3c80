// Acceptance run: one line per criterion, nonzero exit when any fails. Covers
// planner/brute-force equivalence, generation conformance, the hand-traced
// dynamics suite, render round-trips, the oracle-driven loop closure, prompt
// fidelity, metric exactness, and the context ablations.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "grassland/d2r.hpp"
#include "grassland/dynamics.hpp"
#include "grassland/eval.hpp"
#include "grassland/generator.hpp"
#include "grassland/hash.hpp"
#include "grassland/planner.hpp"
#include "grassland/prompts.hpp"
#include "grassland/render.hpp"

#include "test_support.hpp"

using namespace grassland;
using namespace grassland::testing;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& message) {
    ok = false;
    if (detail.empty()) detail = message;  // keep the first failure
  }
  void note(const std::string& message) {
    if (ok && detail.empty()) detail = message;
  }
};

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, value);
  return buf;
}

// Unconstrained 5x5 board sampler: unlike the generator it skips the
// solvability rejection, so the planner gets judged on unsolvable boards too.
DynamicScenario random_board(std::uint64_t seed) {
  RandomSource rng(seed);
  const int h = 5;
  const int w = 5;
  GridWorld world = make_grass_world(h, w, {0, 0}, {h - 1, w - 1});
  do {
    world.start = {rng.uniform_int(0, h - 1), rng.uniform_int(0, w - 1)};
    world.dest = {rng.uniform_int(0, h - 1), rng.uniform_int(0, w - 1)};
  } while (world.start == world.dest);

  auto free_cells = [&] {
    std::vector<Coord> out;
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        const Coord p{r, c};
        if (p == world.start || p == world.dest) continue;
        if (world.at(p) != Cell::Grass) continue;
        out.push_back(p);
      }
    }
    return out;
  };
  auto sprinkle = [&](Cell kind, int count) {
    for (int i = 0; i < count; ++i) {
      const Coord p = rng.pick(free_cells());
      world.cells[static_cast<std::size_t>(p.row) * w + p.col] = kind;
    }
  };
  sprinkle(Cell::Wall, rng.uniform_int(0, 3));
  sprinkle(Cell::Water, rng.uniform_int(0, 2));

  std::vector<Coord> traps;
  {
    std::vector<Coord> free = free_cells();
    const int n_lava = rng.uniform_int(1, 2);
    for (int i = 0; i < n_lava && !free.empty(); ++i) {
      const auto k = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(free.size()) - 1));
      traps.push_back(free[k]);
      free.erase(free.begin() + k);
    }
  }

  DynamicScenario s;
  s.world = world;
  s.lava_frames.push_back(make_coord_set(traps));
  const int horizon = 8;
  for (int t = 1; t <= horizon; ++t) {
    std::vector<Coord> next;
    for (std::size_t i = 0; i < traps.size(); ++i) {
      const Coord cur = traps[i];
      // Staying is always a legal choice; neighbors must be free grass and
      // must not collide with an already-moved or still-unmoved trap.
      std::vector<Coord> cand{cur};
      const Coord around[4] = {{cur.row - 1, cur.col},
                               {cur.row + 1, cur.col},
                               {cur.row, cur.col - 1},
                               {cur.row, cur.col + 1}};
      for (const Coord m : around) {
        if (!world.in_bounds(m) || world.at(m) != Cell::Grass) continue;
        bool clash = contains(make_coord_set(next), m);
        for (std::size_t j = i + 1; j < traps.size() && !clash; ++j) {
          clash = traps[j] == m;
        }
        if (!clash) cand.push_back(m);
      }
      next.push_back(rng.pick(cand));
    }
    traps = next;
    s.lava_frames.push_back(make_coord_set(traps));
  }
  return s;
}

// --- criterion 1: planner vs exhaustive enumeration ---

Check planner_equals_brute_force() {
  Check check;
  int solvable = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const DynamicScenario scenario = random_board(derive_seed(0xACC1, i));
    const PlanResult plan = safe_route(scenario, 6);
    const BruteResult brute = brute_force(scenario, 6);
    if (plan.solvable() != brute.solvable) {
      check.fail("board " + std::to_string(i) + ": solvability disagrees");
      continue;
    }
    if (!plan.solvable()) continue;
    ++solvable;
    if (plan.length() != brute.optimal_length) {
      check.fail("board " + std::to_string(i) + ": length " +
                 std::to_string(plan.length()) + " vs brute " +
                 std::to_string(brute.optimal_length));
    } else if (*plan.route != brute.best) {
      check.fail("board " + std::to_string(i) + ": tie-break differs from brute force");
    }
  }
  check.note(std::to_string(solvable) + "/100 boards solvable, routes identical");
  return check;
}

// --- criterion 2: planner soundness across generated instances ---

Check planner_soundness() {
  Check check;
  int replayed = 0;
  for (const Level level : {Level::Easy, Level::Normal, Level::Hard}) {
    const DifficultyConfig config = default_config(Task::Navigation, level);
    const std::vector<Instance> batch =
        generate_batch(config, derive_seed(0xACC2, static_cast<std::uint64_t>(level)), 200);
    for (const Instance& instance : batch) {
      if (!instance.route_truth.solvable()) {
        check.fail(instance.id + ": no route on a generated instance");
        continue;
      }
      const Trace trace = simulate(instance.scenario, *instance.route_truth.route);
      if (trace.outcome != Outcome::Success || trace.steps_executed > config.step_limit) {
        check.fail(instance.id + ": route does not replay to success within the limit");
      }
      ++replayed;
    }
  }
  check.note(std::to_string(replayed) + "/600 routes replay to success");
  return check;
}

// --- criterion 3: difficulty table conformance + route-length report ---

struct TableRow {
  Task task;
  Level level;
  int grid, walls, lava, water_min, water_max;
  double reference_mean;  // published mean ground-truth route length
};

Check difficulty_table() {
  Check check;
  const TableRow rows[] = {
      {Task::Judgment, Level::Easy, 7, 0, 2, 0, 0, 5.32},
      {Task::Judgment, Level::Normal, 7, 1, 3, 1, 1, 6.00},
      {Task::Judgment, Level::Hard, 7, 2, 4, 2, 2, 5.67},
      {Task::Navigation, Level::Easy, 5, 1, 1, 0, 4, 3.47},
      {Task::Navigation, Level::Normal, 5, 2, 2, 0, 4, 3.75},
      {Task::Navigation, Level::Hard, 5, 3, 2, 0, 6, 4.34},
  };
  std::string report;
  for (const TableRow& row : rows) {
    const DifficultyConfig config = default_config(row.task, row.level);
    const std::string name = to_string(row.task) + "-" + to_string(row.level);
    if (config.grid_h != row.grid || config.grid_w != row.grid ||
        config.n_walls != row.walls || config.n_lava != row.lava ||
        config.water_min != row.water_min || config.water_max != row.water_max ||
        config.step_limit != 6 || config.horizon != 8) {
      check.fail(name + ": config drifts from the difficulty table");
      continue;
    }

    const std::vector<Instance> batch =
        generate_batch(config, derive_seed(0xACC3, config_digest(config)), 60);
    std::vector<PlanResult> plans;
    for (const Instance& instance : batch) {
      const GridWorld& world = instance.scenario.world;
      int walls = 0;
      int water = 0;
      for (const Cell cell : world.cells) {
        walls += cell == Cell::Wall;
        water += cell == Cell::Water;
      }
      if (walls != config.n_walls || water < config.water_min || water > config.water_max) {
        check.fail(instance.id + ": wall/water counts off the table");
      }
      for (const CoordSet& frame : instance.scenario.lava_frames) {
        if (static_cast<int>(frame.size()) != config.n_lava) {
          check.fail(instance.id + ": lava count off the table");
          break;
        }
      }
      plans.push_back(safe_route(instance.scenario, config.step_limit));
    }
    const RouteStats stats = route_stats(plans);
    if (stats.count_solvable != batch.size() || !stats.mean_length) {
      check.fail(name + ": generated boards must all be solvable");
      continue;
    }
    const double mean = *stats.mean_length;
    report += name + " " + fmt("%.2f", mean) + " (ref " + fmt("%.2f", row.reference_mean) + ") ";
    if (std::abs(mean - row.reference_mean) > 1.5) {
      check.fail(name + ": mean route length " + fmt("%.2f", mean) +
                 " strays more than 1.5 from the reference " +
                 fmt("%.2f", row.reference_mean));
    }
  }
  check.note(report);
  return check;
}

// --- criterion 4: hand-traced dynamics and planner examples ---

Check hand_traces() {
  Check check;
  const GridWorld climb = make_grass_world(3, 3, {2, 0}, {0, 0});

  {  // E1: two ups reach the destination
    const Trace t = simulate(static_scenario(climb), {Action::Up, Action::Up});
    const std::vector<Coord> want{{2, 0}, {1, 0}, {0, 0}};
    if (t.outcome != Outcome::Success || t.steps_executed != 2 || t.positions != want) {
      check.fail("E1: forced climb does not succeed in two steps");
    }
  }
  {  // E2: stepping into a cell lava held on the previous tick
    std::vector<CoordSet> frames{make_coord_set({{1, 0}})};
    for (int t = 1; t <= 8; ++t) frames.push_back(make_coord_set({{1, 1}}));
    const Trace t = simulate(moving_scenario(climb, frames), {Action::Up});
    if (t.outcome != Outcome::FailLava || t.steps_executed != 1) {
      check.fail("E2: stepping into existing lava must fail");
    }
  }
  {  // E3: lava arrives on the agent's landing cell the same tick
    std::vector<CoordSet> frames{make_coord_set({{1, 1}})};
    for (int t = 1; t <= 8; ++t) frames.push_back(make_coord_set({{1, 0}}));
    const Trace t = simulate(moving_scenario(climb, frames), {Action::Up});
    if (t.outcome != Outcome::FailLava || t.steps_executed != 1) {
      check.fail("E3: move-first collision with arriving lava must fail");
    }
  }
  {  // E4: wall bumps consume ticks, then the run is unfinished
    GridWorld walled = climb;
    walled.cells[1 * 3 + 0] = Cell::Wall;
    const Trace t =
        simulate(static_scenario(walled), {Action::Up, Action::Up, Action::Right});
    const std::vector<Coord> want{{2, 0}, {2, 0}, {2, 0}, {2, 1}};
    const std::vector<bool> flags{true, true, false};
    if (t.outcome != Outcome::Unfinished || t.positions != want || t.blocked_flags != flags) {
      check.fail("E4: wall-block trace drifted");
    }
  }
  {  // water trace
    GridWorld wet = climb;
    wet.cells[2 * 3 + 1] = Cell::Water;
    const Trace t = simulate(static_scenario(wet), {Action::Right});
    if (t.outcome != Outcome::FailWater || t.steps_executed != 1) {
      check.fail("water: stepping into water must fail on tick 1");
    }
  }
  {  // P1: open line wants four rights
    const PlanResult plan =
        safe_route(static_scenario(make_grass_world(5, 5, {4, 0}, {4, 4})), 6);
    if (!plan.solvable() || *plan.route != ActionSequence(4, Action::Right)) {
      check.fail("P1: open line is not the four-right route");
    }
  }
  {  // P2: destination walled in on all four sides
    GridWorld boxed = make_grass_world(5, 5, {4, 0}, {2, 2});
    for (const Coord p : {Coord{1, 2}, Coord{3, 2}, Coord{2, 1}, Coord{2, 3}}) {
      boxed.cells[static_cast<std::size_t>(p.row) * 5 + p.col] = Cell::Wall;
    }
    if (safe_route(static_scenario(boxed), 6).solvable()) {
      check.fail("P2: boxed-in destination must be unsolvable");
    }
  }
  check.note("E1-E4, water, P1, P2 as traced");
  return check;
}

// --- criterion 5: render round-trip and stability ---

Check render_round_trip() {
  Check check;
  int frames_checked = 0;
  std::uint64_t digest = 1469598103934665603ULL;
  for (const Task task : {Task::Judgment, Task::Navigation}) {
    for (std::uint64_t i = 0; i < 25; ++i) {
      const Instance instance = generate(default_config(task, Level::Hard),
                                         derive_seed(0xACC5, i * 2 + (task == Task::Navigation)));
      for (int t = 0; t <= 5; ++t) {
        const Frame frame = render_frame(instance.scenario, t);
        const ParsedFrame parsed = parse_frame(frame);
        ParsedFrame expected;
        expected.height = instance.scenario.world.height;
        expected.width = instance.scenario.world.width;
        expected.cells = instance.scenario.world.cells;
        expected.start = instance.scenario.world.start;
        expected.dest = instance.scenario.world.dest;
        expected.lava = instance.scenario.lava_frames[static_cast<std::size_t>(t)];
        if (!(parsed == expected)) {
          check.fail(instance.id + " tick " + std::to_string(t) +
                     ": parse_frame does not invert render_frame");
          continue;
        }
        const Frame again = render_frame(instance.scenario, t);
        const std::vector<std::uint8_t> png = encode_png(frame);
        const std::vector<std::uint8_t> png_again = encode_png(again);
        if (!(frame == again) || png != png_again) {
          check.fail(instance.id + " tick " + std::to_string(t) +
                     ": two renders are not byte-identical");
        }
        digest ^= fnv1a64(png.data(), png.size());
        ++frames_checked;
      }
    }
  }
  if (frames_checked != 300) check.fail("expected 300 frames, saw " + std::to_string(frames_checked));
  char hex[32];
  std::snprintf(hex, sizeof(hex), "0x%016llx",
                static_cast<unsigned long long>(digest));
  check.note("300 frames round-tripped, png digest " + std::string(hex));
  return check;
}

// --- criterion 6: oracle closes the loop at 100% ---

Check oracle_closure() {
  Check check;
  RunOptions options;
  options.method = Method::D2RTask;

  int judged = 0;
  for (const Instance& instance :
       generate_batch(default_config(Task::Judgment, Level::Easy), 0xACC6, 100)) {
    OracleReasoner mllm(instance);
    RuleHub hub;
    const EpisodeResult r = run_episode(instance, options, mllm, &hub);
    if (r.errored()) {
      check.fail(instance.id + ": " + r.error);
      continue;
    }
    if (!r.transcript || r.transcript->steps.size() > 16) {
      check.fail(instance.id + ": loop ran past 16 iterations");
    }
    if (r.answer.judgment != outcome_to_choice(instance.judgment_truth)) {
      check.fail(instance.id + ": oracle answer missed the gold letter");
    }
    ++judged;
  }

  int arrived = 0;
  for (const Instance& instance :
       generate_batch(default_config(Task::Navigation, Level::Easy), 0xACC7, 100)) {
    OracleReasoner mllm(instance);
    RuleHub hub;
    const EpisodeResult r = run_episode(instance, options, mllm, &hub);
    if (r.errored()) {
      check.fail(instance.id + ": " + r.error);
      continue;
    }
    if (!r.transcript || r.transcript->steps.size() > 16) {
      check.fail(instance.id + ": loop ran past 16 iterations");
    }
    const NavigationScore score = score_navigation(instance, r.answer);
    if (score.status != NavigationScore::Status::Arrived) {
      check.fail(instance.id + ": oracle route did not arrive");
      continue;
    }
    ++arrived;
  }
  check.note(std::to_string(judged) + "/100 judged correctly, " + std::to_string(arrived) +
             "/100 arrived");
  return check;
}

// --- criterion 7: prompt fidelity and parser round-trip ---

Check prompt_fidelity() {
  Check check;
  const Instance judgment = generate(default_config(Task::Judgment, Level::Normal), 0xACC8);
  const Instance navigation = generate(default_config(Task::Navigation, Level::Normal), 0xACC9);
  for (const Method method :
       {Method::Direct, Method::CoT, Method::OneShotCoT, Method::DraftCoTGT, Method::D2RTask,
        Method::D2RIteration, Method::D2RManager, Method::D2RFinalize}) {
    for (const Task task : {Task::Judgment, Task::Navigation}) {
      const Instance& instance = task == Task::Judgment ? judgment : navigation;
      const PromptBundle bundle = build(method, task, instance);
      std::string all_text = bundle.system;
      for (const Part& part : bundle.user_parts) {
        if (part.kind == Part::Kind::Text) all_text += "\n" + part.text;
      }
      for (const std::string& sentinel : sentinels(method, task)) {
        if (all_text.find(sentinel) == std::string::npos) {
          check.fail(to_string(method) + "/" + to_string(task) +
                     ": missing sentinel \"" + sentinel + "\"");
        }
      }
    }
  }

  RandomSource rng(0xACCA);
  for (int i = 0; i < 1000; ++i) {
    ActionSequence seq(static_cast<std::size_t>(rng.uniform_int(0, 6)));
    for (Action& a : seq) a = static_cast<Action>(rng.uniform_int(0, 3));
    const auto parsed = parse_actions(format_actions(seq));
    if (!parsed || *parsed != seq) {
      check.fail("sequence " + std::to_string(i) + " does not round-trip through the format");
      break;
    }
  }
  check.note("16 prompt shapes carry their sentinels; 1000 sequences round-trip");
  return check;
}

// --- criterion 8: metric exactness on a hand-counted synthetic set ---

Check metric_exactness() {
  Check check;

  // 20 judgment episodes: 8 gold-A (6 right), 4 gold-B (2), 4 gold-C (4),
  // 4 gold-D (1) -> 13/20 overall.
  std::vector<JudgmentScore> judgment;
  auto add = [&](char gold, int total, int correct) {
    for (int i = 0; i < total; ++i) {
      judgment.push_back({gold, gold, i < correct});
      if (i >= correct) judgment.back().answer = 'X';  // any wrong letter
      judgment.back().correct = i < correct;
    }
  };
  add('A', 8, 6);
  add('B', 4, 2);
  add('C', 4, 4);
  add('D', 4, 1);
  const JudgmentMetrics jm = aggregate_judgment(judgment);
  if (jm.total != 20 || jm.total_acc != 13.0 / 20.0 ||
      jm.per_choice_acc.at('A') != 6.0 / 8.0 || jm.per_choice_acc.at('B') != 2.0 / 4.0 ||
      jm.per_choice_acc.at('C') != 4.0 / 4.0 || jm.per_choice_acc.at('D') != 1.0 / 4.0) {
    check.fail("judgment aggregates disagree with the hand count");
  }

  // 20 navigation episodes: 12 arrived (steps 40 effective / 52 answered),
  // 5 failed (one truncated), 3 unfinished.
  using Status = NavigationScore::Status;
  std::vector<NavigationScore> navigation;
  int eff_left = 40;
  int ans_left = 52;
  for (int i = 0; i < 12; ++i) {
    const int eff = i < 11 ? 3 : eff_left;       // 11x3 + 7 = 40
    const int ans = i < 11 ? 4 : ans_left;       // 11x4 + 8 = 52
    navigation.push_back({Status::Arrived, eff, ans, false});
    eff_left -= eff;
    ans_left -= ans;
  }
  for (int i = 0; i < 5; ++i) navigation.push_back({Status::Failed, 0, 6, i == 0});
  for (int i = 0; i < 3; ++i) navigation.push_back({Status::Unfinished, 0, 0, false});
  const NavigationMetrics nm = aggregate_navigation(navigation);
  if (nm.total != 20 || nm.arrived != 12 || nm.failed != 5 || nm.unfinished != 3 ||
      nm.truncated != 1 || nm.arrived_pct != 12.0 / 20.0 || nm.failed_pct != 5.0 / 20.0 ||
      nm.unfinished_pct != 3.0 / 20.0 || nm.ave_step_effective != 40.0 / 12.0 ||
      nm.ave_step_answer != 52.0 / 12.0) {
    check.fail("navigation aggregates disagree with the hand count");
  }
  for (const NavigationScore& s : navigation) {
    if (s.status == Status::Arrived && s.effective_steps > s.answer_steps) {
      check.fail("effective steps exceeded the declared answer length");
    }
  }

  // The same bound on real scored episodes, not just synthetic structs.
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Instance instance =
        generate(default_config(Task::Navigation, Level::Normal), derive_seed(0xACCB, i));
    ParsedAnswer answer;
    answer.navigation = instance.route_truth.route;
    const NavigationScore s = score_navigation(instance, answer);
    if (s.effective_steps > s.answer_steps) {
      check.fail(instance.id + ": effective steps exceeded the answer length");
    }
  }
  check.note("40 synthetic episodes match the hand computation exactly");
  return check;
}

// --- criterion 9: ablations change the context and nothing else ---

Check ablation_exactness() {
  Check check;
  Instance instance;
  instance.id = "judgment-easy-ablation0000000000";
  instance.config = default_config(Task::Judgment, Level::Easy);
  instance.scenario = static_scenario(make_grass_world(3, 3, {2, 0}, {0, 0}));
  instance.actions = {Action::Up, Action::Up};
  instance.judgment_truth = Outcome::Success;

  const Plan tool_plan{canonical_tool_order(), {}, false};
  const std::vector<std::string> replies{"Go up", "Go up", "A. <finish>"};

  auto run = [&](bool no_draft, bool no_text, std::vector<ReasonerRequest>& log) {
    RunOptions options;
    options.method = Method::D2RTask;
    options.no_draft = no_draft;
    options.no_text = no_text;
    ScriptedReasoner inner(replies);
    RecordingReasoner mllm(inner, log);
    return iterate(mllm, nullptr, instance, tool_plan, options);
  };

  std::vector<ReasonerRequest> base_log;
  const Transcript base = run(false, false, base_log);
  if (base_log.size() != 3 || count_images(base_log[2]) != 8 || count_texts(base_log[2]) != 3) {
    check.fail("full context must grow by one draft and one thought per step");
  }

  std::vector<ReasonerRequest> no_draft_log;
  const Transcript no_draft = run(true, false, no_draft_log);
  for (const ReasonerRequest& r : no_draft_log) {
    if (count_images(r) != 6) {
      check.fail("--no-draft context must hold exactly the six base frames");
      break;
    }
  }

  std::vector<ReasonerRequest> no_text_log;
  const Transcript no_text = run(false, true, no_text_log);
  for (const ReasonerRequest& r : no_text_log) {
    if (count_texts(r) != 1) {
      check.fail("--no-text context must hold only the task instruction");
      break;
    }
  }

  // The walk itself must be identical in all three runs.
  for (const Transcript* t : {&no_draft, &no_text}) {
    if (t->steps.size() != base.steps.size() || t->answer != base.answer) {
      check.fail("an ablation changed the walk, not just the context");
      break;
    }
    for (std::size_t i = 0; i < base.steps.size(); ++i) {
      if (t->steps[i].tracked_pos != base.steps[i].tracked_pos ||
          t->steps[i].draft != base.steps[i].draft) {
        check.fail("an ablation changed tracked positions or transcript drafts");
        break;
      }
    }
  }
  check.note("context counts exact; transcripts unchanged");
  return check;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<Check()> run;
    double budget_seconds;  // hard per-criterion runtime bound, 0 = none
  };
  const std::vector<Criterion> criteria = {
      {"planner agrees with exhaustive 4^6 enumeration on 100 boards",
       planner_equals_brute_force, 60.0},
      {"600 generated routes replay to success within 6 steps", planner_soundness, 0.0},
      {"difficulty table conformance and route-length report", difficulty_table, 0.0},
      {"hand-traced dynamics and planner examples", hand_traces, 0.0},
      {"render/parse round-trip on 300 frames, byte-stable", render_round_trip, 0.0},
      {"oracle closes the loop at 100% on both tasks", oracle_closure, 120.0},
      {"prompt sentinels verbatim and parser round-trip", prompt_fidelity, 0.0},
      {"metrics match a hand-counted 40-episode set", metric_exactness, 0.0},
      {"ablations strip context parts exactly", ablation_exactness, 0.0},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Check check = criteria[i].run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].budget_seconds > 0 && seconds > criteria[i].budget_seconds) {
      check.fail("runtime " + fmt("%.1f", seconds) + " s exceeds the " +
                 fmt("%.0f", criteria[i].budget_seconds) + " s budget");
    }
    std::printf("[%zu/%zu] %s  %s (%.1f s)%s%s\n", i + 1, criteria.size(),
                check.ok ? "PASS" : "FAIL", criteria[i].label, seconds,
                check.detail.empty() ? "" : " -- ", check.detail.c_str());
    failures += check.ok ? 0 : 1;
  }
  if (failures > 0) {
    std::printf("%d of %zu acceptance criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return 0;
}
