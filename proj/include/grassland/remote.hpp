#pragma once

#include <memory>
#include <string>

#include "grassland/reasoner.hpp"

namespace grassland {

struct RemoteConfig {
  std::string base_url;  // e.g. "https://models.example.com" or with a path prefix
  std::string model;
  std::string api_key;   // resolved from GRASSLAND_API_KEY by the CLI
  int timeout_seconds = 120;
  int max_retries = 3;
  int backoff_initial_ms = 500;   // doubles per retry
  double requests_per_second = 2.0;  // shared across concurrent episodes; <= 0 disables
};

// Reads the key from the environment. Empty when unset.
std::string api_key_from_env();

// Chat-completion client: POSTs {model, temperature, max_tokens, messages}
// with text parts verbatim and frames as base64 PNG image parts to
// <base_url>/complete, bearer-authenticated, and expects {"text": ...} back.
// Retries transport failures and 429/5xx with exponential backoff; all
// instances from one factory share a rate limiter. Throws
// ErrorKind::Transport after retries are exhausted.
class RemoteReasoner : public Reasoner {
 public:
  class Limiter;

  RemoteReasoner(RemoteConfig config, std::shared_ptr<Limiter> limiter);
  ~RemoteReasoner() override;

  std::string name() const override { return "remote:" + config_.model; }
  std::string complete(const ReasonerRequest& request) override;

 private:
  RemoteConfig config_;
  std::shared_ptr<Limiter> limiter_;
};

ReasonerFactory remote_factory(const RemoteConfig& config);

// Exposed for tests: the exact request document the client sends.
std::string remote_request_body(const RemoteConfig& config, const ReasonerRequest& request);

std::string base64_encode(const std::uint8_t* data, std::size_t size);

}  // namespace grassland
