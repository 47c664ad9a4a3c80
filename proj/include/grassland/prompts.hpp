#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grassland/generator.hpp"
#include "grassland/render.hpp"
#include "grassland/world.hpp"

namespace grassland {

// Prompting styles. The first four are single-call baselines; the D2R entries
// are the building blocks of the iterative loop (task context, per-iteration
// system text, scheduling-hub system text, answer-forcing suffix).
enum class Method : std::uint8_t {
  Direct,
  CoT,
  OneShotCoT,
  DraftCoTGT,
  D2RTask,
  D2RIteration,
  D2RManager,
  D2RFinalize,
};

std::string to_string(Method method);
Method method_from_string(const std::string& text);

// One piece of multimodal content.
struct Part {
  enum class Kind : std::uint8_t { Text, Image };
  Kind kind = Kind::Text;
  std::string text;
  Frame image;

  static Part from_text(std::string t) { return {Kind::Text, std::move(t), {}}; }
  static Part from_image(Frame f) { return {Kind::Image, {}, std::move(f)}; }
};

struct PromptBundle {
  Method method = Method::Direct;
  Task task = Task::Judgment;
  std::string system;            // empty for plain user-turn prompts
  std::vector<Part> user_parts;  // in send order
};

struct BuildOptions {
  int video_frames = 6;
  int cell_px = 32;
};

// Assembles the full prompt for a method/task pair: template text (quoted
// sentences kept verbatim, {action_sequence} substituted for judgment) plus
// the rendered frame sequence. OneShotCoT inserts the fixed exemplar's video
// between template and instance frames; DraftCoTGT swaps the clean frames for
// copies overlaid with the ground-truth trace. Throws ErrorKind::Contract
// when the instance's task does not match `task`.
PromptBundle build(Method method, Task task, const Instance& instance,
                   const BuildOptions& options = {});

// The bare task text (the Direct template, {action_sequence} substituted),
// used as the iterative loop's instruction without rendering any frames.
std::string task_instruction(Task task, const Instance& instance);

// Fixed hand-built demonstration instances for one-shot prompting, one per
// task. The judgment exemplar replays "Go down, Go up, Go up, Go left" to
// Success; the navigation exemplar's narrated answer is five rights (one
// bumping the map edge) then down.
const Instance& oneshot_exemplar(Task task);
const ActionSequence& oneshot_exemplar_answer(Task task);

// Verbatim sentences that must appear in every built prompt of this
// method/task, for fidelity tests.
std::vector<std::string> sentinels(Method method, Task task);

// A model's answer after extraction. At most one of the two task fields is
// set; raw always keeps the unedited reply for audit.
struct ParsedAnswer {
  std::optional<char> judgment;
  std::optional<ActionSequence> navigation;
  std::string raw;

  bool any() const { return judgment.has_value() || navigation.has_value(); }
  bool operator==(const ParsedAnswer&) const = default;
};

// Runs the task's parser over the text (judgment: last standalone letter;
// navigation: last [START]/[END] pair).
ParsedAnswer parse_answer(Task task, const std::string& text);

// Last standalone A/B/C/D letter in the text (boundaries: neither neighbor is
// alphanumeric or '_'), or nullopt when there is none. Never throws.
std::optional<char> parse_choice(const std::string& text);

// Tokens between the last well-formed [START]/[END] pair (case-insensitive):
// comma-separated "Go <dir>" commands, optional trailing period. An empty
// pair yields an empty sequence; an unknown token or missing pair yields
// nullopt. Never throws.
std::optional<ActionSequence> parse_actions(const std::string& text);

// First "Go <dir>" command anywhere in the text, or nullopt.
std::optional<Action> parse_first_action(const std::string& text);

// "Go right" / "Go up" ...
std::string action_phrase(Action a);
// "Go down, Go up, Go left"
std::string action_phrases(const ActionSequence& seq);
// "Action: [START] Go right, Go up [END]"
std::string format_actions(const ActionSequence& seq);

}  // namespace grassland
