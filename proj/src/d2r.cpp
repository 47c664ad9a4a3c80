#include "grassland/d2r.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "grassland/dynamics.hpp"
#include "grassland/io.hpp"

namespace grassland {

namespace {

constexpr const char* kFinishToken = "<finish>";
constexpr const char* kBlockedToken = "<can_not_pass>";

std::string lowered(const std::string& text) {
  std::string out = text;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool contains_ci(const std::string& hay, const std::string& needle) {
  return lowered(hay).find(lowered(needle)) != std::string::npos;
}

long long approx_tokens(const std::string& text) {
  long long count = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

// Tracks what one episode has sent and received, for the result's telemetry.
struct Telemetry {
  int calls = 0;
  int images_sent = 0;
  long long prompt_tokens = 0;
  long long reply_tokens = 0;

  void sent(const ReasonerRequest& request) {
    ++calls;
    prompt_tokens += approx_tokens(request.system);
    for (const Part& part : request.parts) {
      if (part.kind == Part::Kind::Text) {
        prompt_tokens += approx_tokens(part.text);
      } else {
        ++images_sent;
      }
    }
  }
  void received(const std::string& reply) { reply_tokens += approx_tokens(reply); }
};

// Persists episode artifacts under <out_dir>/<instance-id>/. A default
// (empty-path) sink writes nothing.
class EpisodeSink {
 public:
  EpisodeSink() = default;
  EpisodeSink(const std::filesystem::path& out_dir, const std::string& instance_id) {
    if (out_dir.empty()) return;
    dir_ = out_dir / instance_id;
    std::filesystem::create_directories(dir_);
  }

  bool active() const { return !dir_.empty(); }

  void context(const std::vector<Part>& parts) const {
    if (!active()) return;
    int i = 0;
    for (const Part& part : parts) {
      char name[32];
      if (part.kind == Part::Kind::Text) {
        std::snprintf(name, sizeof(name), "part_%03d.txt", i);
        write_text(dir_ / name, part.text);
      } else {
        std::snprintf(name, sizeof(name), "part_%03d.png", i);
        write_bytes(dir_ / name, encode_png(part.image));
      }
      ++i;
    }
  }

  void video(const std::vector<Frame>& frames) const {
    if (!active() || frames.empty()) return;
    write_bytes(dir_ / "video.gif", encode_gif(frames));
  }

  void reply(int index, const std::string& text) const {
    if (!active()) return;
    char name[32];
    std::snprintf(name, sizeof(name), "reply_%03d.txt", index);
    write_text(dir_ / name, text);
  }

  void draft(int index, const Frame& frame) const {
    if (!active()) return;
    char name[32];
    std::snprintf(name, sizeof(name), "draft_%03d.png", index);
    write_bytes(dir_ / name, encode_png(frame));
  }

  void record(const nlohmann::ordered_json& doc) const {
    if (!active()) return;
    write_text(dir_ / "episode.json", doc.dump(2) + "\n");
  }

 private:
  std::filesystem::path dir_;
};

// Assembles the iteration-stage request: task instruction, base frames, then
// every prior thought (text and draft, subject to the ablation flags).
ReasonerRequest iteration_request(const Transcript& transcript, const Instance& instance,
                                  const RunOptions& options) {
  ReasonerRequest request;
  request.system = build(Method::D2RIteration, instance.config.task, instance).system;
  request.max_tokens = options.mllm_max_tokens;
  request.temperature = options.mllm_temperature;
  request.parts.push_back(Part::from_text(transcript.instruction));
  for (const Frame& frame : transcript.frames) {
    request.parts.push_back(Part::from_image(frame));
  }
  for (const ThoughtStep& step : transcript.steps) {
    if (!options.no_text) request.parts.push_back(Part::from_text(step.text));
    if (!options.no_draft && step.draft) request.parts.push_back(Part::from_image(*step.draft));
  }
  return request;
}

}  // namespace

std::string_view to_string(ToolId tool) {
  switch (tool) {
    case ToolId::VideoProcessing: return "VideoProcessing";
    case ToolId::PositionGet: return "PositionGet";
    case ToolId::DrawPosition: return "DrawPosition";
    case ToolId::MLLMReply: return "MLLMReply";
  }
  return "?";
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Finish: return "finish";
    case StopReason::MaxIterations: return "max-iterations";
    case StopReason::HubStop: return "hub-stop";
  }
  return "?";
}

int default_max_iterations(int step_limit) { return 2 * step_limit + 4; }

std::vector<ToolId> canonical_tool_order() {
  return {ToolId::VideoProcessing, ToolId::PositionGet, ToolId::DrawPosition, ToolId::MLLMReply};
}

Plan plan(Reasoner& hub, const std::string& instruction, const StopPolicy& stop,
          const RunOptions& options) {
  ReasonerRequest request;
  request.system = build(Method::D2RManager, Task::Judgment, oneshot_exemplar(Task::Judgment))
                       .system;  // manager text is task-independent
  request.max_tokens = options.hub_max_tokens;
  request.temperature = options.hub_temperature;
  request.parts.push_back(Part::from_text(instruction));
  const std::string reply = hub.complete(request);

  // Order the four tool names by first mention. Valid plans end with
  // MLLMReply; anything else falls back to the canonical order.
  const std::string hay = lowered(reply);
  std::vector<std::pair<std::size_t, ToolId>> found;
  for (ToolId tool : canonical_tool_order()) {
    const std::size_t at = hay.find(lowered(std::string(to_string(tool))));
    if (at != std::string::npos) found.emplace_back(at, tool);
  }
  std::sort(found.begin(), found.end());

  Plan result;
  result.stop = stop;
  for (auto& [at, tool] : found) result.steps.push_back(tool);
  if (result.steps.empty() || result.steps.back() != ToolId::MLLMReply) {
    result.steps = canonical_tool_order();
    result.fallback = true;
  }
  return result;
}

Transcript iterate(Reasoner& mllm, Reasoner* hub, const Instance& instance, const Plan& plan,
                   const RunOptions& options) {
  const Task task = instance.config.task;
  const DynamicScenario& scenario = instance.scenario;

  Transcript transcript;
  transcript.plan = plan;
  transcript.instruction = task_instruction(task, instance);
  transcript.frames = render_video(scenario, options.video_frames, {}, options.cell_px);

  EpisodeSink sink(options.out_dir, instance.id);
  if (sink.active()) {
    std::vector<Part> context;
    context.push_back(Part::from_text(transcript.instruction));
    for (const Frame& f : transcript.frames) context.push_back(Part::from_image(f));
    sink.context(context);
    sink.video(transcript.frames);
  }

  Coord pos = scenario.world.start;
  std::vector<Coord> visited{pos};
  int tick = 0;

  transcript.stop_reason = StopReason::MaxIterations;
  for (int iter = 1; iter <= plan.stop.max_iterations; ++iter) {
    const ReasonerRequest request = iteration_request(transcript, instance, options);
    const std::string reply = mllm.complete(request);
    sink.reply(iter, reply);

    ThoughtStep step;
    step.index = iter;
    step.text = reply;
    step.tracked_pos = pos;
    step.tick = tick;

    if (reply.find(plan.stop.finish_token) != std::string::npos) {
      transcript.steps.push_back(std::move(step));
      transcript.answer = parse_answer(task, reply);
      transcript.stop_reason = StopReason::Finish;
      break;
    }

    if (const auto action = parse_first_action(reply)) {
      // PositionGet: deterministic replay of the accepted action.
      const MoveResult move = neighbor(pos, *action, scenario.world);
      pos = move.target;
      ++tick;
      visited.push_back(pos);
      step.blocked = move.blocked;
      if (move.blocked && reply.find(kBlockedToken) == std::string::npos) {
        step.text += " ";
        step.text += kBlockedToken;
      }
      step.tracked_pos = pos;
      step.tick = tick;
      step.tool_used = ToolId::DrawPosition;
      // DrawPosition: mark the tracked cell on the current frame. Judgment
      // drafts also trace the path walked so far.
      std::vector<Overlay> overlays;
      if (task == Task::Judgment) overlays.push_back(Overlay::path_line(visited));
      overlays.push_back(Overlay::position_mark(pos));
      const int draw_tick = std::min(tick, scenario.horizon());
      step.draft = render_frame(scenario, draw_tick, overlays, options.cell_px);
      sink.draft(iter, *step.draft);
      transcript.steps.push_back(std::move(step));
      continue;
    }

    // Neither finish nor action: the hub decides whether to push on.
    transcript.steps.push_back(step);
    std::string verdict = "continue";
    if (hub != nullptr) {
      ReasonerRequest ask;
      ask.system = build(Method::D2RManager, task, instance).system;
      ask.max_tokens = options.hub_max_tokens;
      ask.temperature = options.hub_temperature;
      ask.parts.push_back(Part::from_text("MLLMReply agent replied: " + reply +
                                          "\nReply 'continue' to keep iterating or 'stop' to "
                                          "end the task."));
      verdict = hub->complete(ask);
    }
    if (contains_ci(verdict, "stop")) {
      transcript.answer = parse_answer(task, reply);
      transcript.stop_reason = StopReason::HubStop;
      break;
    }
  }
  return transcript;
}

ParsedAnswer finalize(Reasoner& mllm, const Instance& instance, const Transcript& transcript,
                      const RunOptions& options) {
  if (transcript.answer.any()) return transcript.answer;
  ReasonerRequest request = iteration_request(transcript, instance, options);
  request.parts.push_back(
      build(Method::D2RFinalize, instance.config.task, instance).user_parts.front());
  const std::string reply = mllm.complete(request);
  return parse_answer(instance.config.task, reply);
}

EpisodeResult run_episode(const Instance& instance, const RunOptions& options, Reasoner& mllm,
                          Reasoner* hub) {
  EpisodeResult result;
  result.instance_id = instance.id;
  result.method = options.method;
  const auto t0 = std::chrono::steady_clock::now();

  // Wrap the reasoners so telemetry is counted no matter which stage calls.
  Telemetry telemetry;
  struct Counted : Reasoner {
    Reasoner* inner;
    Telemetry* telemetry;
    std::string name() const override { return inner->name(); }
    std::string complete(const ReasonerRequest& request) override {
      telemetry->sent(request);
      const std::string reply = inner->complete(request);
      telemetry->received(reply);
      return reply;
    }
  };
  Counted counted_mllm;
  counted_mllm.inner = &mllm;
  counted_mllm.telemetry = &telemetry;
  Counted counted_hub;
  counted_hub.inner = hub;
  counted_hub.telemetry = &telemetry;

  try {
    const Task task = instance.config.task;
    if (options.method == Method::Direct || options.method == Method::CoT ||
        options.method == Method::OneShotCoT || options.method == Method::DraftCoTGT) {
      const PromptBundle bundle =
          build(options.method, task, instance, {options.video_frames, options.cell_px});
      ReasonerRequest request;
      request.system = bundle.system;
      request.parts = bundle.user_parts;
      request.max_tokens = options.mllm_max_tokens;
      request.temperature = options.mllm_temperature;

      EpisodeSink sink(options.out_dir, instance.id);
      sink.context(bundle.user_parts);
      const std::string reply = counted_mllm.complete(request);
      sink.reply(1, reply);
      result.answer = parse_answer(task, reply);
      sink.record(episode_to_json(result));
    } else if (options.method == Method::D2RTask) {
      if (hub == nullptr) {
        fail(ErrorKind::Contract, "the D2R loop needs a scheduling hub reasoner");
      }
      StopPolicy stop;
      stop.max_iterations = options.max_iterations > 0
                                ? options.max_iterations
                                : default_max_iterations(instance.config.step_limit);
      const std::string instruction = task_instruction(task, instance);
      Plan tool_plan = plan(counted_hub, instruction, stop, options);
      Transcript transcript =
          iterate(counted_mllm, &counted_hub, instance, tool_plan, options);
      result.answer = finalize(counted_mllm, instance, transcript, options);
      result.transcript = std::move(transcript);
      EpisodeSink sink(options.out_dir, instance.id);
      sink.record(episode_to_json(result));
    } else {
      fail(ErrorKind::Contract,
           "method " + to_string(options.method) + " is not a runnable episode method");
    }
  } catch (const Error& e) {
    result.error = e.what();  // already prefixed with its category
  } catch (const std::exception& e) {
    result.error = std::string("error: ") + e.what();
  }

  const auto t1 = std::chrono::steady_clock::now();
  result.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  result.calls = telemetry.calls;
  result.images_sent = telemetry.images_sent;
  result.prompt_tokens = telemetry.prompt_tokens;
  result.reply_tokens = telemetry.reply_tokens;
  return result;
}

std::vector<EpisodeResult> run_batch(const std::vector<Instance>& instances,
                                     const RunOptions& options,
                                     const ReasonerFactory& mllm_factory,
                                     const ReasonerFactory& hub_factory, int parallelism) {
  std::vector<EpisodeResult> results(instances.size());
  std::atomic<std::size_t> next{0};
  const int workers =
      std::max(1, std::min<int>(parallelism, static_cast<int>(instances.size())));

  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) return;
      const Instance& instance = instances[i];
      std::unique_ptr<Reasoner> mllm = mllm_factory(instance);
      std::unique_ptr<Reasoner> hub = hub_factory ? hub_factory(instance) : nullptr;
      results[i] = run_episode(instance, options, *mllm, hub.get());
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
    std::ofstream out(options.out_dir / "episodes.jsonl", std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + (options.out_dir / "episodes.jsonl").string());
    for (const EpisodeResult& r : results) out << episode_to_json(r).dump() << '\n';
  }
  return results;
}

nlohmann::ordered_json episode_to_json(const EpisodeResult& result) {
  nlohmann::ordered_json doc;
  doc["id"] = result.instance_id;
  doc["method"] = to_string(result.method);
  nlohmann::ordered_json answer;
  if (result.answer.judgment) answer["choice"] = std::string(1, *result.answer.judgment);
  if (result.answer.navigation) {
    auto route = nlohmann::ordered_json::array();
    for (Action a : *result.answer.navigation) route.push_back(std::string(to_string(a)));
    answer["route"] = route;
  }
  answer["raw"] = result.answer.raw;
  doc["answer"] = answer;
  if (result.transcript) {
    const Transcript& t = *result.transcript;
    nlohmann::ordered_json tr;
    tr["stop_reason"] = std::string(to_string(t.stop_reason));
    tr["fallback_plan"] = t.plan.fallback;
    auto plan_steps = nlohmann::ordered_json::array();
    for (ToolId tool : t.plan.steps) plan_steps.push_back(std::string(to_string(tool)));
    tr["plan"] = plan_steps;
    auto steps = nlohmann::ordered_json::array();
    for (const ThoughtStep& s : t.steps) {
      nlohmann::ordered_json step;
      step["index"] = s.index;
      step["text"] = s.text;
      step["tool"] = std::string(to_string(s.tool_used));
      step["pos"] = nlohmann::ordered_json::array({s.tracked_pos.row, s.tracked_pos.col});
      step["tick"] = s.tick;
      step["blocked"] = s.blocked;
      step["has_draft"] = s.draft.has_value();
      steps.push_back(step);
    }
    tr["steps"] = steps;
    doc["transcript"] = tr;
  }
  doc["calls"] = result.calls;
  doc["images_sent"] = result.images_sent;
  doc["prompt_tokens"] = result.prompt_tokens;
  doc["reply_tokens"] = result.reply_tokens;
  doc["wall_time_ms"] = result.wall_time_ms;
  doc["error"] = result.error;
  return doc;
}

}  // namespace grassland
