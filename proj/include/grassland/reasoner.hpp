#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "grassland/generator.hpp"
#include "grassland/prompts.hpp"

namespace grassland {

// One model call. Callers supply the complete context every time; reasoners
// hold no conversation state between calls.
struct ReasonerRequest {
  std::string system;
  std::vector<Part> parts;
  int max_tokens = 700;
  double temperature = 0.0;
};

class Reasoner {
 public:
  virtual ~Reasoner() = default;
  virtual std::string name() const = 0;
  virtual std::string complete(const ReasonerRequest& request) = 0;
};

// Builds a fresh reasoner for each episode, so reasoners that need instance
// knowledge (oracle, per-id scripts) get it without breaking the
// stateless-per-call contract.
using ReasonerFactory = std::function<std::unique_ptr<Reasoner>(const Instance&)>;

// Replays canned replies in order; returns "" past the end. Fresh per
// episode.
class ScriptedReasoner : public Reasoner {
 public:
  explicit ScriptedReasoner(std::vector<std::string> replies);
  std::string name() const override { return "scripted"; }
  std::string complete(const ReasonerRequest& request) override;

 private:
  std::vector<std::string> replies_;
  std::size_t next_ = 0;
};

// Script file: either a bare array of replies (used for every episode) or an
// object keyed by instance id. Missing ids get an empty reply list.
ReasonerFactory scripted_factory_from_file(const std::filesystem::path& path);
ReasonerFactory scripted_factory(std::vector<std::string> replies);

// Answers from ground truth: walks the instance's action sequence (judgment)
// or planner route (navigation) one action per call when driven iteratively,
// then emits the final answer with the finish token. Single-call prompts get
// the final answer immediately.
class OracleReasoner : public Reasoner {
 public:
  explicit OracleReasoner(const Instance& instance);
  std::string name() const override { return "oracle"; }
  std::string complete(const ReasonerRequest& request) override;

 private:
  std::string final_answer() const;

  Instance instance_;
  ActionSequence walk_;
  std::size_t next_ = 0;
};

ReasonerFactory oracle_factory();

// Rule-based scheduling hub stand-in: emits the canonical tool order for
// planning requests and "continue" for ambiguity checks.
class RuleHub : public Reasoner {
 public:
  std::string name() const override { return "rule-hub"; }
  std::string complete(const ReasonerRequest& request) override;
};

ReasonerFactory rule_hub_factory();

}  // namespace grassland
