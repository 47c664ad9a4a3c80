#include "grassland/prompts.hpp"

#include <algorithm>
#include <cctype>

#include "grassland/dynamics.hpp"

namespace grassland {

namespace {

// ---------------------------------------------------------------------------
// Template texts. Quoted sentences are kept character-for-character, typos
// included — downstream fidelity tests assert on them.
// ---------------------------------------------------------------------------

constexpr const char* kJudgmentTaskHead = R"(Task:Maze Judgment

Tile info: character can move pass the green tile(grass). The red tile(lava) and the blue tile(water) is dangerous, when player move into them, game fail. The yellow and brown tile is wall which can not be passed.

The white flag is start point, the red flag is destination point

Player can't move off the map, considering it as air walls

Actions: the lava tile change position every second, and player also move every second. Consider player move first in same time, which mean if player and lava tile move to same position, the game fail.

Determine whether the agent (elf character) can safely reach the destination following the action sequence without falling into the lava or water. If not, identify the failure reason shortly. The definitions of the actions are as below.

* In the video, the red line shows the movement path of the agent.

* Go up/left/down/right: move one grid space in the absolute up/left/down/right direction.

After analyse the actions, return A, B, C or D.

Full Action Sequence: {action_sequence}

A. Action Success.

B. Action Failed: Fall into the water.

C. Action Failed: Fall into the lava.

D. Action Failed: Agent Safe but Fail to Reach Destination.)";

constexpr const char* kNavigationTaskHead = R"(Task: Route Plan

Tile Info: The character can move across the green tile (grass). The red tile (lava) and the blue tile (water) are dangerous. If the player moves onto them, the game fails. The yellow and brown tiles are walls, which cannot be passed. The white flag represents the starting point, and the red flag represents the destination.

The player cannot move off the map; treat the edges as air walls.
Actions: The lava tiles change position every second, and the player also moves every second.

Consider the player moving first in the same time step, which means if the player and a lava tile move to the same position, the game fails.

You will receive a 6-second video showing the dynamic map. Your task is to analyze this video, apply the rules mentioned above, then determine a route that allows the player to reach the destination safely within 6 steps.

The answer should follow this format: "Action: [START] Go right, Go up, Go down, ... [END]" Each command corresponds to one move. And put it at the end of your answer.

Move Commands: Go up/left/down/right: Move one grid space in the absolute up/left/down/right direction.)";

constexpr const char* kStepByStep = "Let's think it step-by-step and make right choice.";

constexpr const char* kJudgmentExample =
    R"(Here is an example, consider video follow behind the text. The action sequence is: Go down, Go up, Go up, Go left. First, the agent move down. Check the tile agent move to, it is grass with no trap, so agent can move to. Then agent move up, it is start point, agent can move to here. Then agent move up again, it is grass, agent can move to here. Then agent move left, it is the end point, so agent arrive at the destination. So the answer is: A. Action Success.

Video: <example_video>)";

constexpr const char* kNavigationExample =
    R"(Here is an example, consider video follow behind the text. To move safely, we check the position of destination, make choice, and review the traps position in video to conform the action safe. In this example, the best action is: [START] Go right, Go right, Go right, Go right, Go right, Go down [END]

Video: <example_video>)";

constexpr const char* kManagerPrompt =
    R"(You are controlling the VideoProcessing agent, PositionGet agent, DrawPosition agent and MLLMReply agent.

1.Each time you need to extract and save the video by VideoProcessing agent, get the postion by PositionGet agent, and draw the position by DrawPosition agent.

2.you need to complete the task by MLLMReply agent until the MLLMReply agent output final answer.

3.If the MLLMReply agent do not output the final answer, you need to continue completing the task by MLLMReply agent.

4.You should follow the order in examples, and don't make any superfluous execution.

5.When MLLMReply agent output <finish>, you need to finish the task.)";

constexpr const char* kIterationPrompt =
    R"(Additionly, there are the <visualization of the thought>, you should output next action until the final answer is obtained. Here are some tips you should follow:

1.<visualization of the thought> consist of the image of now position and the text of next action.

2.The black square represents your current position.

3.Based on the <Task Description> and <visualization of the thought>, follow the next action in <Full Action Sequence>. Each action in <visualization of the thought> has already been executed, don't execute them again.

4.If the next action is wall or move off the map, append <can_not_pass> after the next action.

5.As soon as you can get the final answer, you will immediately output the final answer and append <finish> after it.

6.Each time you can only output one action or one final answer.)";

constexpr const char* kJudgmentFinalize =
    "Now output the final answer. After analyse the actions, return A, B, C or D.";

constexpr const char* kNavigationFinalize =
    "Now output the final answer. The answer should follow this format: \"Action: [START] Go "
    "right, Go up, Go down, ... [END]\"";

std::string substitute(std::string text, const std::string& placeholder,
                       const std::string& value) {
  const std::size_t at = text.find(placeholder);
  if (at != std::string::npos) text.replace(at, placeholder.size(), value);
  return text;
}

std::string task_head(Task task, const Instance& instance) {
  if (task == Task::Judgment) {
    return substitute(kJudgmentTaskHead, "{action_sequence}", action_phrases(instance.actions));
  }
  return kNavigationTaskHead;
}

// Hand-built demonstration boards matching the one-shot narratives.
Instance make_judgment_exemplar() {
  Instance inst;
  inst.id = "judgment-exemplar";
  inst.config = default_config(Task::Judgment, Level::Easy);
  inst.scenario.world = make_grass_world(7, 7, {3, 3}, {2, 2});
  // Two traps pacing the bottom corners, well away from the walked path.
  for (int t = 0; t <= 8; ++t) {
    inst.scenario.lava_frames.push_back(
        make_coord_set({{6, t % 2}, {6, 6 - t % 2}}));
  }
  inst.actions = {Action::Down, Action::Up, Action::Up, Action::Left};
  inst.judgment_truth = simulate(inst.scenario, inst.actions).outcome;
  return inst;
}

Instance make_navigation_exemplar() {
  Instance inst;
  inst.id = "navigation-exemplar";
  inst.config = default_config(Task::Navigation, Level::Easy);
  GridWorld world = make_grass_world(5, 5, {1, 0}, {2, 4});
  world.cells[static_cast<std::size_t>(3) * 5 + 2] = Cell::Wall;
  world.cells[static_cast<std::size_t>(4) * 5 + 3] = Cell::Water;
  world.cells[static_cast<std::size_t>(4) * 5 + 4] = Cell::Water;
  inst.scenario.world = std::move(world);
  // One trap pacing the bottom-left corner.
  for (int t = 0; t <= 8; ++t) {
    inst.scenario.lava_frames.push_back(make_coord_set({{4, t % 2}}));
  }
  inst.route_truth = safe_route(inst.scenario, inst.config.step_limit);
  return inst;
}

bool boundary(char c) {
  return !(std::isalnum(static_cast<unsigned char>(c)) || c == '_');
}

std::string lowered(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<Action> direction_word(const std::string& word) {
  if (word == "up") return Action::Up;
  if (word == "down") return Action::Down;
  if (word == "left") return Action::Left;
  if (word == "right") return Action::Right;
  return std::nullopt;
}

// Parses one trimmed "go <dir>" command (case-insensitive, optional trailing
// period).
std::optional<Action> parse_command(const std::string& piece) {
  std::string s = lowered(piece);
  if (!s.empty() && s.back() == '.') s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.size() < 4 || s.compare(0, 2, "go") != 0 ||
      !std::isspace(static_cast<unsigned char>(s[2]))) {
    return std::nullopt;
  }
  std::size_t at = 2;
  while (at < s.size() && std::isspace(static_cast<unsigned char>(s[at]))) ++at;
  return direction_word(s.substr(at));
}

std::string trimmed(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::Direct: return "direct";
    case Method::CoT: return "cot";
    case Method::OneShotCoT: return "oneshot";
    case Method::DraftCoTGT: return "draftcot-gt";
    case Method::D2RTask: return "d2r-task";
    case Method::D2RIteration: return "d2r-iteration";
    case Method::D2RManager: return "d2r-manager";
    case Method::D2RFinalize: return "d2r-finalize";
  }
  return "?";
}

Method method_from_string(const std::string& text) {
  for (Method m : {Method::Direct, Method::CoT, Method::OneShotCoT, Method::DraftCoTGT,
                   Method::D2RTask, Method::D2RIteration, Method::D2RManager,
                   Method::D2RFinalize}) {
    if (to_string(m) == text) return m;
  }
  fail(ErrorKind::Parse, "unknown method '" + text + "'");
}

std::string task_instruction(Task task, const Instance& instance) {
  if (task != instance.config.task) {
    fail(ErrorKind::Contract, "prompt task " + to_string(task) + " does not match instance " +
                                  instance.id);
  }
  return task_head(task, instance);
}

const Instance& oneshot_exemplar(Task task) {
  static const Instance judgment = make_judgment_exemplar();
  static const Instance navigation = make_navigation_exemplar();
  return task == Task::Judgment ? judgment : navigation;
}

const ActionSequence& oneshot_exemplar_answer(Task task) {
  static const ActionSequence judgment{Action::Down, Action::Up, Action::Up, Action::Left};
  static const ActionSequence navigation{Action::Right, Action::Right, Action::Right,
                                         Action::Right, Action::Right, Action::Down};
  return task == Task::Judgment ? judgment : navigation;
}

PromptBundle build(Method method, Task task, const Instance& instance,
                   const BuildOptions& options) {
  if (task != instance.config.task) {
    fail(ErrorKind::Contract, "prompt task " + to_string(task) + " does not match instance " +
                                  instance.id);
  }

  PromptBundle bundle;
  bundle.method = method;
  bundle.task = task;

  // System-only building blocks used by the iterative loop.
  if (method == Method::D2RManager) {
    bundle.system = kManagerPrompt;
    return bundle;
  }
  if (method == Method::D2RIteration) {
    bundle.system = kIterationPrompt;
    return bundle;
  }
  if (method == Method::D2RFinalize) {
    bundle.user_parts.push_back(
        Part::from_text(task == Task::Judgment ? kJudgmentFinalize : kNavigationFinalize));
    return bundle;
  }

  std::string text = task_head(task, instance);
  if (method == Method::CoT || method == Method::DraftCoTGT) {
    text += "\n\n";
    text += kStepByStep;
  } else if (method == Method::OneShotCoT) {
    text += "\n\n";
    text += task == Task::Judgment ? kJudgmentExample : kNavigationExample;
  }
  bundle.user_parts.push_back(Part::from_text(std::move(text)));

  if (method == Method::OneShotCoT) {
    const Instance& exemplar = oneshot_exemplar(task);
    for (Frame& f : render_video(exemplar.scenario, options.video_frames, {}, options.cell_px)) {
      bundle.user_parts.push_back(Part::from_image(std::move(f)));
    }
  }

  std::vector<std::vector<Overlay>> overlays;
  if (method == Method::DraftCoTGT) {
    // Ground-truth draft: every frame carries the full walked path.
    const ActionSequence& actions = task == Task::Judgment
                                        ? instance.actions
                                        : instance.route_truth.route.value_or(ActionSequence{});
    const Trace trace = simulate(instance.scenario, actions);
    overlays.assign(static_cast<std::size_t>(options.video_frames),
                    {Overlay::path_line(trace.positions)});
  }
  for (Frame& f :
       render_video(instance.scenario, options.video_frames, overlays, options.cell_px)) {
    bundle.user_parts.push_back(Part::from_image(std::move(f)));
  }
  return bundle;
}

std::vector<std::string> sentinels(Method method, Task task) {
  std::vector<std::string> out;
  if (method == Method::D2RManager) {
    out.push_back("You are controlling the VideoProcessing agent");
    out.push_back("When MLLMReply agent output <finish>, you need to finish the task.");
    return out;
  }
  if (method == Method::D2RIteration) {
    out.push_back("Additionly, there are the <visualization of the thought>");
    out.push_back("The black square represents your current position");
    out.push_back("append <can_not_pass> after the next action");
    out.push_back("Each time you can only output one action or one final answer.");
    return out;
  }
  if (method == Method::D2RFinalize) {
    out.push_back(task == Task::Judgment ? "return A, B, C or D"
                                         : "Action: [START] Go right, Go up, Go down, ... [END]");
    return out;
  }

  if (task == Task::Judgment) {
    out.push_back("Task:Maze Judgment");
    out.push_back("Consider player move first in same time");
    out.push_back("After analyse the actions, return A, B, C or D.");
    out.push_back("D. Action Failed: Agent Safe but Fail to Reach Destination.");
  } else {
    out.push_back("Task: Route Plan");
    out.push_back("reach the destination safely within 6 steps");
    out.push_back("The answer should follow this format: \"Action: [START] Go right, Go up, Go "
                  "down, ... [END]\"");
  }
  if (method == Method::CoT || method == Method::DraftCoTGT) {
    out.push_back(kStepByStep);
  }
  if (method == Method::OneShotCoT) {
    out.push_back("Here is an example, consider video follow");
    out.push_back("<example_video>");
    if (task == Task::Judgment) {
      out.push_back("So the answer is: A. Action Success.");
    } else {
      out.push_back(
          "[START] Go right, Go right, Go right, Go right, Go right, Go down [END]");
    }
  }
  return out;
}

ParsedAnswer parse_answer(Task task, const std::string& text) {
  ParsedAnswer out;
  out.raw = text;
  if (task == Task::Judgment) {
    out.judgment = parse_choice(text);
  } else {
    out.navigation = parse_actions(text);
  }
  return out;
}

std::optional<char> parse_choice(const std::string& text) {
  std::optional<char> last;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != 'A' && c != 'B' && c != 'C' && c != 'D') continue;
    const bool left_ok = i == 0 || boundary(text[i - 1]);
    const bool right_ok = i + 1 == text.size() || boundary(text[i + 1]);
    if (left_ok && right_ok) last = c;
  }
  return last;
}

std::optional<ActionSequence> parse_actions(const std::string& text) {
  const std::string hay = lowered(text);
  // Last "[start]" that still has an "[end]" after it.
  std::size_t start_at = std::string::npos;
  std::size_t end_at = std::string::npos;
  for (std::size_t at = hay.find("[start]"); at != std::string::npos;
       at = hay.find("[start]", at + 1)) {
    const std::size_t end = hay.find("[end]", at + 7);
    if (end != std::string::npos) {
      start_at = at;
      end_at = end;
    }
  }
  if (start_at == std::string::npos) return std::nullopt;

  const std::string body = text.substr(start_at + 7, end_at - start_at - 7);
  ActionSequence seq;
  std::size_t from = 0;
  while (from <= body.size()) {
    const std::size_t comma = body.find(',', from);
    const std::string piece =
        trimmed(body.substr(from, comma == std::string::npos ? std::string::npos : comma - from));
    if (!piece.empty()) {
      const auto action = parse_command(piece);
      if (!action) return std::nullopt;
      seq.push_back(*action);
    }
    if (comma == std::string::npos) break;
    from = comma + 1;
  }
  return seq;
}

std::optional<Action> parse_first_action(const std::string& text) {
  const std::string hay = lowered(text);
  for (std::size_t at = hay.find("go"); at != std::string::npos; at = hay.find("go", at + 1)) {
    if (at > 0 && !boundary(hay[at - 1])) continue;
    std::size_t word = at + 2;
    if (word >= hay.size() || !std::isspace(static_cast<unsigned char>(hay[word]))) continue;
    while (word < hay.size() && std::isspace(static_cast<unsigned char>(hay[word]))) ++word;
    std::size_t end = word;
    while (end < hay.size() && std::isalpha(static_cast<unsigned char>(hay[end]))) ++end;
    if (auto dir = direction_word(hay.substr(word, end - word))) return dir;
  }
  return std::nullopt;
}

std::string action_phrase(Action a) {
  return "Go " + lowered(to_string(a));
}

std::string action_phrases(const ActionSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out += ", ";
    out += action_phrase(seq[i]);
  }
  return out;
}

std::string format_actions(const ActionSequence& seq) {
  return "Action: [START] " + action_phrases(seq) + " [END]";
}

}  // namespace grassland
