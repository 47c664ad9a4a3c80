#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grassland/reasoner.hpp"

namespace grassland {

// The four tool roles of the iterative loop.
enum class ToolId : std::uint8_t { VideoProcessing, PositionGet, DrawPosition, MLLMReply };

std::string_view to_string(ToolId tool);

struct StopPolicy {
  std::string finish_token = "<finish>";
  int max_iterations = 16;

  bool operator==(const StopPolicy&) const = default;
};

// 2*L + 4: worst case of L actions each preceded by a blocked retry, plus
// slack for ambiguous replies and the finishing turn.
int default_max_iterations(int step_limit);

struct Plan {
  std::vector<ToolId> steps;
  StopPolicy stop;
  bool fallback = false;  // hub reply was unparseable; canonical order used

  bool operator==(const Plan&) const = default;
};

// The canonical tool order: VideoProcessing, then PositionGet -> DrawPosition
// -> MLLMReply per iteration.
std::vector<ToolId> canonical_tool_order();

// One loop iteration's record. tracked_pos is the start advanced through the
// movement rule by every accepted action so far (blocked moves stay put); the
// draft, when present, marks exactly that cell on the current tick's frame.
struct ThoughtStep {
  int index = 0;  // 1-based
  std::string text;
  std::optional<Frame> draft;
  ToolId tool_used = ToolId::MLLMReply;
  Coord tracked_pos;
  int tick = 0;
  bool blocked = false;
};

enum class StopReason : std::uint8_t { Finish, MaxIterations, HubStop };

std::string_view to_string(StopReason reason);

struct Transcript {
  std::string instruction;
  std::vector<Frame> frames;
  Plan plan;
  std::vector<ThoughtStep> steps;
  ParsedAnswer answer;  // answer.any() false when the loop produced none
  StopReason stop_reason = StopReason::MaxIterations;
};

struct RunOptions {
  Method method = Method::Direct;
  // Ablations: drop draft images / prior thought texts from the iteration
  // context. Context-only — tracking and transcripts are unchanged.
  bool no_draft = false;
  bool no_text = false;
  int video_frames = 6;
  int cell_px = 32;
  int max_iterations = 0;  // 0 -> default_max_iterations(L)
  std::filesystem::path out_dir;  // empty -> nothing persisted
  int mllm_max_tokens = 700;
  int hub_max_tokens = 400;
  double mllm_temperature = 0.0;
  double hub_temperature = 0.1;
};

struct EpisodeResult {
  std::string instance_id;
  Method method = Method::Direct;
  ParsedAnswer answer;
  std::optional<Transcript> transcript;  // loop methods only
  double wall_time_ms = 0.0;
  int calls = 0;
  int images_sent = 0;
  long long prompt_tokens = 0;  // whitespace-token estimate of text sent
  long long reply_tokens = 0;

  std::string error;  // empty = clean episode
  bool errored() const { return !error.empty(); }
};

// Stage 1: ask the hub for a tool order. Unparseable replies (or any order
// not ending in MLLMReply) fall back to the canonical order.
Plan plan(Reasoner& hub, const std::string& instruction, const StopPolicy& stop,
          const RunOptions& options);

// Stage 2: the loop. One reasoner reply per iteration: a finish token stops
// with the parsed answer; a single action advances the tracked position
// (annotating blocked moves with <can_not_pass>) and draws the next draft;
// anything else asks the hub whether to continue. Hard stop at
// stop.max_iterations.
Transcript iterate(Reasoner& mllm, Reasoner* hub, const Instance& instance, const Plan& plan,
                   const RunOptions& options);

// Stage 3: one answer-forcing call when the loop ended without an answer.
ParsedAnswer finalize(Reasoner& mllm, const Instance& instance, const Transcript& transcript,
                      const RunOptions& options);

// Runs one instance end to end: a single call for the one-shot methods, the
// plan/iterate/finalize pipeline for D2R. Never throws for per-episode
// failures; they come back as an errored result.
EpisodeResult run_episode(const Instance& instance, const RunOptions& options, Reasoner& mllm,
                          Reasoner* hub);

// Runs a set of instances with per-episode reasoners, up to `parallelism`
// episodes in flight. Results keep instance order. When options.out_dir is
// set, per-episode artifacts and an episodes.jsonl index are written there.
std::vector<EpisodeResult> run_batch(const std::vector<Instance>& instances,
                                     const RunOptions& options,
                                     const ReasonerFactory& mllm_factory,
                                     const ReasonerFactory& hub_factory, int parallelism = 1);

nlohmann::ordered_json episode_to_json(const EpisodeResult& result);

}  // namespace grassland
