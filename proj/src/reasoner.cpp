#include "grassland/reasoner.hpp"

#include <fstream>

#include "grassland/dynamics.hpp"

namespace grassland {

namespace {

// The iteration system prompt is the tell that the loop, not a single-shot
// method, is driving this call.
bool is_iterative(const ReasonerRequest& request) {
  return request.system.find("The black square represents your current position") !=
         std::string::npos;
}

bool is_plan_request(const ReasonerRequest& request) {
  return request.system.find("You are controlling the VideoProcessing agent") !=
             std::string::npos &&
         !request.parts.empty() &&
         request.parts.front().text.find("MLLMReply agent replied") == std::string::npos;
}

}  // namespace

ScriptedReasoner::ScriptedReasoner(std::vector<std::string> replies)
    : replies_(std::move(replies)) {}

std::string ScriptedReasoner::complete(const ReasonerRequest&) {
  if (next_ >= replies_.size()) return "";
  return replies_[next_++];
}

ReasonerFactory scripted_factory(std::vector<std::string> replies) {
  return [replies = std::move(replies)](const Instance&) {
    return std::make_unique<ScriptedReasoner>(replies);
  };
}

ReasonerFactory scripted_factory_from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot read script " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, path.string() + ": " + e.what());
  }

  auto to_replies = [&](const nlohmann::json& arr) {
    std::vector<std::string> replies;
    for (const auto& item : arr) {
      if (!item.is_string()) {
        fail(ErrorKind::Parse, path.string() + ": script replies must be strings");
      }
      replies.push_back(item.get<std::string>());
    }
    return replies;
  };

  if (doc.is_array()) {
    return scripted_factory(to_replies(doc));
  }
  if (doc.is_object()) {
    std::map<std::string, std::vector<std::string>> by_id;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (!it.value().is_array()) {
        fail(ErrorKind::Parse, path.string() + ": expected an array of replies for '" +
                                   it.key() + "'");
      }
      by_id.emplace(it.key(), to_replies(it.value()));
    }
    return [by_id = std::move(by_id)](const Instance& instance) {
      auto it = by_id.find(instance.id);
      return std::make_unique<ScriptedReasoner>(
          it == by_id.end() ? std::vector<std::string>{} : it->second);
    };
  }
  fail(ErrorKind::Parse, path.string() + ": script must be an array or an id-keyed object");
}

OracleReasoner::OracleReasoner(const Instance& instance) : instance_(instance) {
  walk_ = instance.config.task == Task::Judgment
              ? instance.actions
              : instance.route_truth.route.value_or(ActionSequence{});
}

std::string OracleReasoner::final_answer() const {
  if (instance_.config.task == Task::Judgment) {
    const char letter = outcome_to_choice(instance_.judgment_truth);
    return std::string("So the answer is: ") + letter + ".";
  }
  return format_actions(instance_.route_truth.route.value_or(ActionSequence{}));
}

std::string OracleReasoner::complete(const ReasonerRequest& request) {
  if (!is_iterative(request)) return final_answer();
  if (next_ < walk_.size()) return action_phrase(walk_[next_++]);
  return final_answer() + " <finish>";
}

ReasonerFactory oracle_factory() {
  return [](const Instance& instance) { return std::make_unique<OracleReasoner>(instance); };
}

std::string RuleHub::complete(const ReasonerRequest& request) {
  if (is_plan_request(request)) {
    return "VideoProcessing, PositionGet, DrawPosition, MLLMReply";
  }
  return "continue";
}

ReasonerFactory rule_hub_factory() {
  return [](const Instance&) { return std::make_unique<RuleHub>(); };
}

}  // namespace grassland
