#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grassland/d2r.hpp"
#include "grassland/eval.hpp"
#include "grassland/generator.hpp"
#include "grassland/hash.hpp"
#include "grassland/io.hpp"
#include "grassland/remote.hpp"
#include "grassland/render.hpp"

namespace fs = std::filesystem;
using namespace grassland;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return 2;
    case ErrorKind::Generation: return 3;
    case ErrorKind::Parse: return 4;
    case ErrorKind::Transport: return 5;
    case ErrorKind::Scoring: return 6;
    case ErrorKind::Io: return 7;
    case ErrorKind::Horizon: return 8;
    case ErrorKind::Contract: return 9;
  }
  return 1;
}

// CLI method names; "d2r" selects the full plan/iterate/finalize pipeline.
Method method_from_flag(const std::string& text) {
  const Method method = text == "d2r" ? Method::D2RTask : method_from_string(text);
  switch (method) {
    case Method::Direct:
    case Method::CoT:
    case Method::OneShotCoT:
    case Method::DraftCoTGT:
    case Method::D2RTask: return method;
    default:
      fail(ErrorKind::Config, "method '" + text + "' is not runnable; use direct, cot, "
                              "oneshot, draftcot-gt, or d2r");
  }
}

struct EndpointFlags {
  std::string base_url;
  std::string mllm_model = "mllm";
  std::string hub_model = "hub";
  int timeout_seconds = 120;
  int max_retries = 3;
  double requests_per_second = 2.0;
};

// Resolves --reasoner into per-episode factories. Remote needs the key from
// the environment and a base url; the rule hub backs oracle and scripted runs.
void resolve_reasoners(const std::string& spec, const EndpointFlags& endpoint,
                       ReasonerFactory& mllm, ReasonerFactory& hub) {
  if (spec == "oracle") {
    mllm = oracle_factory();
    hub = rule_hub_factory();
    return;
  }
  if (spec.rfind("scripted:", 0) == 0) {
    mllm = scripted_factory_from_file(spec.substr(9));
    hub = rule_hub_factory();
    return;
  }
  if (spec == "remote") {
    RemoteConfig config;
    config.base_url = endpoint.base_url;
    config.api_key = api_key_from_env();
    config.timeout_seconds = endpoint.timeout_seconds;
    config.max_retries = endpoint.max_retries;
    config.requests_per_second = endpoint.requests_per_second;
    if (config.api_key.empty()) {
      fail(ErrorKind::Config,
           "remote reasoner selected but GRASSLAND_API_KEY is not set in the environment");
    }
    if (config.base_url.empty()) {
      fail(ErrorKind::Config, "remote reasoner needs --base-url");
    }
    RemoteConfig mllm_config = config;
    mllm_config.model = endpoint.mllm_model;
    RemoteConfig hub_config = config;
    hub_config.model = endpoint.hub_model;
    mllm = remote_factory(mllm_config);
    hub = remote_factory(hub_config);
    return;
  }
  fail(ErrorKind::Config,
       "unknown reasoner '" + spec + "'; use remote, oracle, or scripted:<file>");
}

void cmd_generate(const std::string& task_str, const std::string& level_str, int count,
                  std::uint64_t seed, const fs::path& out) {
  const Task task = task_from_string(task_str);
  const Level level = level_from_string(level_str);
  const DifficultyConfig config = default_config(task, level);
  const std::vector<Instance> instances = generate_batch(config, seed, count);
  export_instances(instances, out);

  nlohmann::ordered_json manifest;
  manifest["task"] = to_string(task);
  manifest["level"] = to_string(level);
  manifest["count"] = count;
  manifest["seed"] = seed;
  manifest["config_digest"] = to_hex(config_digest(config));
  write_text(out / "generation.json", manifest.dump(2) + "\n");

  std::printf("generated %zu %s-%s instances -> %s\n", instances.size(),
              to_string(task).c_str(), to_string(level).c_str(), out.string().c_str());
}

void cmd_render(const fs::path& in_dir, const fs::path& out, int frames, int cell_px) {
  const std::vector<Instance> instances = import_instances(in_dir);
  for (const Instance& instance : instances) {
    const fs::path dir = out / instance.id;
    fs::create_directories(dir);
    const std::vector<Frame> video = render_video(instance.scenario, frames, {}, cell_px);
    for (const Frame& frame : video) {
      write_bytes(dir / frame_filename(frame.tick), encode_png(frame));
    }
    write_bytes(dir / "video.gif", encode_gif(video));
  }
  std::printf("rendered %zu instances x %d frames -> %s\n", instances.size(), frames,
              out.string().c_str());
}

void cmd_run(const fs::path& in_dir, const std::string& method_str,
             const std::string& reasoner_spec, const fs::path& out, int parallelism,
             const RunOptions& base_options, const EndpointFlags& endpoint) {
  const std::vector<Instance> instances = import_instances(in_dir);
  RunOptions options = base_options;
  options.method = method_from_flag(method_str);
  options.out_dir = out;

  ReasonerFactory mllm;
  ReasonerFactory hub;
  resolve_reasoners(reasoner_spec, endpoint, mllm, hub);

  nlohmann::ordered_json manifest;
  manifest["instances"] = in_dir.string();
  manifest["method"] = method_str == "d2r" ? "d2r" : to_string(options.method);
  manifest["reasoner"] = reasoner_spec;
  manifest["parallelism"] = parallelism;
  manifest["no_text"] = options.no_text;
  manifest["no_draft"] = options.no_draft;
  manifest["video_frames"] = options.video_frames;
  manifest["cell_px"] = options.cell_px;
  manifest["max_iterations"] = options.max_iterations;
  nlohmann::ordered_json ep;
  ep["base_url"] = endpoint.base_url;
  ep["mllm_model"] = endpoint.mllm_model;
  ep["hub_model"] = endpoint.hub_model;
  ep["timeout_seconds"] = endpoint.timeout_seconds;
  ep["max_retries"] = endpoint.max_retries;
  ep["requests_per_second"] = endpoint.requests_per_second;
  manifest["endpoint"] = ep;
  fs::create_directories(out);
  write_text(out / "run_manifest.json", manifest.dump(2) + "\n");

  const std::vector<EpisodeResult> results =
      run_batch(instances, options, mllm, hub, parallelism);
  std::size_t errored = 0;
  for (const EpisodeResult& r : results) {
    if (r.errored()) ++errored;
  }
  std::printf("ran %zu episodes (%zu errored) -> %s\n", results.size(), errored,
              out.string().c_str());
}

ParsedAnswer answer_from_record(const nlohmann::json& answer, const std::string& where) {
  ParsedAnswer parsed;
  if (answer.contains("choice") && answer["choice"].is_string()) {
    const std::string choice = answer["choice"].get<std::string>();
    if (choice.size() == 1) parsed.judgment = choice[0];
  }
  if (answer.contains("route") && answer["route"].is_array()) {
    ActionSequence route;
    for (const auto& name : answer["route"]) {
      const auto action = action_from_string(name.get<std::string>());
      if (!action) fail(ErrorKind::Parse, where + ": unknown action in answer route");
      route.push_back(*action);
    }
    parsed.navigation = std::move(route);
  }
  if (answer.contains("raw") && answer["raw"].is_string()) {
    parsed.raw = answer["raw"].get<std::string>();
  }
  return parsed;
}

void cmd_score(const fs::path& in_dir, const fs::path& episodes_arg, const fs::path& out) {
  const std::vector<Instance> instances = import_instances(in_dir);
  std::map<std::string, const Instance*> by_id;
  for (const Instance& instance : instances) by_id[instance.id] = &instance;

  const fs::path episodes_file =
      fs::is_directory(episodes_arg) ? episodes_arg / "episodes.jsonl" : episodes_arg;
  std::istringstream lines(read_text(episodes_file));

  std::optional<Task> task;
  // (method, level) -> scores
  std::map<std::pair<std::string, std::string>, std::vector<JudgmentScore>> judgment_cells;
  std::map<std::pair<std::string, std::string>, std::vector<NavigationScore>> navigation_cells;
  std::string results_lines;

  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = episodes_file.string() + ":" + std::to_string(line_no);
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::Parse, where + ": " + e.what());
    }
    if (!record.contains("id") || !record["id"].is_string()) {
      fail(ErrorKind::Parse, where + ": episode record lacks an id");
    }
    const std::string id = record["id"].get<std::string>();
    const auto found = by_id.find(id);
    if (found == by_id.end()) {
      fail(ErrorKind::Scoring, "episode " + id + " has no instance in " + in_dir.string());
    }
    const Instance& instance = *found->second;
    if (task && *task != instance.config.task) {
      fail(ErrorKind::Scoring, "episode set mixes judgment and navigation instances");
    }
    task = instance.config.task;

    const std::string method =
        record.contains("method") && record["method"].is_string()
            ? record["method"].get<std::string>()
            : "unknown";
    const ParsedAnswer answer = record.contains("answer")
                                    ? answer_from_record(record["answer"], where)
                                    : ParsedAnswer{};
    const auto key = std::make_pair(method, to_string(instance.config.level));
    if (*task == Task::Judgment) {
      const JudgmentScore score = score_judgment(instance, answer);
      judgment_cells[key].push_back(score);
      results_lines += judgment_record(id, method, score).dump() + "\n";
    } else {
      const NavigationScore score = score_navigation(instance, answer);
      navigation_cells[key].push_back(score);
      results_lines += navigation_record(id, method, score).dump() + "\n";
    }
  }

  std::vector<ReportRow> rows;
  if (task && *task == Task::Judgment) {
    for (const auto& [key, scores] : judgment_cells) {
      ReportRow row;
      row.method = key.first;
      row.level = key.second;
      row.task = Task::Judgment;
      row.judgment = aggregate_judgment(scores);
      rows.push_back(row);
    }
  } else if (task) {
    for (const auto& [key, scores] : navigation_cells) {
      ReportRow row;
      row.method = key.first;
      row.level = key.second;
      row.task = Task::Navigation;
      row.navigation = aggregate_navigation(scores);
      rows.push_back(row);
    }
  }

  const std::string markdown = emit_report(rows, ReportFormat::Markdown);
  fs::create_directories(out);
  write_text(out / "report.csv", emit_report(rows, ReportFormat::Csv));
  write_text(out / "report.md", markdown);
  write_text(out / "report.json", emit_report(rows, ReportFormat::Json));
  write_text(out / "results.jsonl", results_lines);
  std::fputs(markdown.c_str(), stdout);
  std::printf("scored -> %s\n", out.string().c_str());
}

void cmd_oracle(const fs::path& in_dir) {
  const fs::path manifest_path = in_dir / "manifest.jsonl";
  std::istringstream lines(read_text(manifest_path));
  std::string line;
  int line_no = 0;
  std::size_t checked = 0;
  std::vector<std::string> diffs;
  while (std::getline(lines, line)) {
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
      fail(ErrorKind::Parse, where + ": manifest row lacks a file");
    }
    ++checked;
    try {
      load_instance(in_dir / row["file"].get<std::string>());
    } catch (const Error& e) {
      diffs.push_back(e.what());
    }
  }
  for (const std::string& diff : diffs) std::printf("diff: %s\n", diff.c_str());
  std::printf("audited %zu instances: %zu mismatches\n", checked, diffs.size());
  if (!diffs.empty()) {
    fail(ErrorKind::Scoring,
         "ground-truth audit found " + std::to_string(diffs.size()) + " mismatches");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic maze benchmark: generation, rendering, episodes, scoring"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read option defaults from a TOML/INI file");

  std::string task_str = "judgment";
  std::string level_str = "easy";
  int count = 10;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string in_dir;
  std::string episodes_path;
  std::string method_str = "direct";
  std::string reasoner_spec = "oracle";
  int parallelism = 1;
  RunOptions options;
  EndpointFlags endpoint;

  CLI::App* generate = app.add_subcommand("generate", "build seeded instance files");
  generate->add_option("--task", task_str, "judgment|navigation")->capture_default_str();
  generate->add_option("--level", level_str, "easy|normal|hard")->capture_default_str();
  generate->add_option("--count", count, "instances to build")->capture_default_str();
  generate->add_option("--seed", seed, "master seed")->capture_default_str();
  generate->add_option("--out", out_dir, "output directory")->required();

  CLI::App* render = app.add_subcommand("render", "rasterize instances to frames and video");
  render->add_option("--instances", in_dir, "instance directory")->required();
  render->add_option("--out", out_dir, "output directory")->required();
  render->add_option("--frames", options.video_frames, "frames per video")
      ->capture_default_str();
  render->add_option("--cell-px", options.cell_px, "pixels per cell")->capture_default_str();

  CLI::App* run = app.add_subcommand("run", "run episodes against a reasoner");
  run->add_option("--instances", in_dir, "instance directory")->required();
  run->add_option("--method", method_str, "direct|cot|oneshot|draftcot-gt|d2r")
      ->capture_default_str();
  run->add_option("--reasoner", reasoner_spec, "remote|oracle|scripted:<file>")
      ->capture_default_str();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--parallelism", parallelism, "episodes in flight")->capture_default_str();
  run->add_flag("--no-text", options.no_text, "drop prior thought texts from the context");
  run->add_flag("--no-draft", options.no_draft, "drop draft images from the context");
  run->add_option("--frames", options.video_frames, "frames per video")
      ->capture_default_str();
  run->add_option("--cell-px", options.cell_px, "pixels per cell")->capture_default_str();
  run->add_option("--max-iterations", options.max_iterations,
                  "loop iteration cap (0 = derive from step limit)")
      ->capture_default_str();
  run->add_option("--base-url", endpoint.base_url, "remote endpoint, e.g. https://host/v1");
  run->add_option("--mllm-model", endpoint.mllm_model, "remote model for the main reasoner")
      ->capture_default_str();
  run->add_option("--hub-model", endpoint.hub_model, "remote model for the scheduling hub")
      ->capture_default_str();
  run->add_option("--timeout", endpoint.timeout_seconds, "remote request timeout, seconds")
      ->capture_default_str();
  run->add_option("--max-retries", endpoint.max_retries, "remote retry cap")
      ->capture_default_str();
  run->add_option("--rps", endpoint.requests_per_second,
                  "remote rate limit, requests per second (<= 0 disables)")
      ->capture_default_str();

  CLI::App* score = app.add_subcommand("score", "score episode records into reports");
  score->add_option("--instances", in_dir, "instance directory")->required();
  score->add_option("--episodes", episodes_path,
                    "episodes.jsonl file (or the run directory holding it)")
      ->required();
  score->add_option("--out", out_dir, "output directory")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "re-derive and audit stored ground truths");
  oracle->add_option("--instances", in_dir, "instance directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      cmd_generate(task_str, level_str, count, seed, out_dir);
    } else if (render->parsed()) {
      cmd_render(in_dir, out_dir, options.video_frames, options.cell_px);
    } else if (run->parsed()) {
      cmd_run(in_dir, method_str, reasoner_spec, out_dir, parallelism, options, endpoint);
    } else if (score->parsed()) {
      cmd_score(in_dir, episodes_path, out_dir);
    } else if (oracle->parsed()) {
      cmd_oracle(in_dir);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
