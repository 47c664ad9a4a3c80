#include "grassland/remote.hpp"

#include <chrono>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "httplib.h"

#include "grassland/render.hpp"

namespace grassland {

namespace {

struct SplitUrl {
  std::string host_port;  // scheme://host[:port]
  std::string path_prefix;
};

SplitUrl split_base_url(const std::string& base_url) {
  const std::size_t scheme = base_url.find("://");
  if (scheme == std::string::npos) {
    fail(ErrorKind::Config, "base url '" + base_url + "' must start with http:// or https://");
  }
  const std::size_t slash = base_url.find('/', scheme + 3);
  if (slash == std::string::npos) return {base_url, ""};
  std::string prefix = base_url.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {base_url.substr(0, slash), prefix};
}

}  // namespace

std::string api_key_from_env() {
  const char* key = std::getenv("GRASSLAND_API_KEY");
  return key ? key : "";
}

std::string base64_encode(const std::uint8_t* data, std::size_t size) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((size + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= size; i += 3) {
    const std::uint32_t n = (static_cast<std::uint32_t>(data[i]) << 16) |
                            (static_cast<std::uint32_t>(data[i + 1]) << 8) | data[i + 2];
    out.push_back(kAlphabet[(n >> 18) & 63]);
    out.push_back(kAlphabet[(n >> 12) & 63]);
    out.push_back(kAlphabet[(n >> 6) & 63]);
    out.push_back(kAlphabet[n & 63]);
  }
  if (i + 1 == size) {
    const std::uint32_t n = static_cast<std::uint32_t>(data[i]) << 16;
    out.push_back(kAlphabet[(n >> 18) & 63]);
    out.push_back(kAlphabet[(n >> 12) & 63]);
    out += "==";
  } else if (i + 2 == size) {
    const std::uint32_t n = (static_cast<std::uint32_t>(data[i]) << 16) |
                            (static_cast<std::uint32_t>(data[i + 1]) << 8);
    out.push_back(kAlphabet[(n >> 18) & 63]);
    out.push_back(kAlphabet[(n >> 12) & 63]);
    out.push_back(kAlphabet[(n >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::string remote_request_body(const RemoteConfig& config, const ReasonerRequest& request) {
  nlohmann::ordered_json doc;
  doc["model"] = config.model;
  doc["temperature"] = request.temperature;
  doc["max_tokens"] = request.max_tokens;
  auto messages = nlohmann::ordered_json::array();
  if (!request.system.empty()) {
    nlohmann::ordered_json msg;
    msg["role"] = "system";
    msg["content"] = nlohmann::ordered_json::array(
        {nlohmann::ordered_json{{"type", "text"}, {"text", request.system}}});
    messages.push_back(msg);
  }
  nlohmann::ordered_json user;
  user["role"] = "user";
  auto content = nlohmann::ordered_json::array();
  for (const Part& part : request.parts) {
    if (part.kind == Part::Kind::Text) {
      content.push_back(nlohmann::ordered_json{{"type", "text"}, {"text", part.text}});
    } else {
      const std::vector<std::uint8_t> png = encode_png(part.image);
      content.push_back(nlohmann::ordered_json{
          {"type", "image"}, {"data", base64_encode(png.data(), png.size())}});
    }
  }
  user["content"] = content;
  messages.push_back(user);
  doc["messages"] = messages;
  return doc.dump();
}

// Spaces requests so the shared stream stays under requests_per_second.
class RemoteReasoner::Limiter {
 public:
  explicit Limiter(double requests_per_second) {
    if (requests_per_second > 0) {
      interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(1.0 / requests_per_second));
    }
  }

  void acquire() {
    if (interval_.count() == 0) return;
    std::chrono::steady_clock::time_point wake;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      const auto now = std::chrono::steady_clock::now();
      next_ = std::max(next_, now);
      wake = next_;
      next_ += interval_;
    }
    std::this_thread::sleep_until(wake);
  }

 private:
  std::mutex mutex_;
  std::chrono::steady_clock::time_point next_{};
  std::chrono::steady_clock::duration interval_{};
};

RemoteReasoner::RemoteReasoner(RemoteConfig config, std::shared_ptr<Limiter> limiter)
    : config_(std::move(config)), limiter_(std::move(limiter)) {
  if (config_.base_url.empty()) fail(ErrorKind::Config, "remote reasoner needs a base url");
  if (config_.api_key.empty()) {
    fail(ErrorKind::Config,
         "remote reasoner needs an API key; set the GRASSLAND_API_KEY environment variable");
  }
}

RemoteReasoner::~RemoteReasoner() = default;

std::string RemoteReasoner::complete(const ReasonerRequest& request) {
  const SplitUrl url = split_base_url(config_.base_url);
  const std::string body = remote_request_body(config_, request);
  const std::string path = url.path_prefix + "/complete";

  std::string last_failure;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      const int backoff = config_.backoff_initial_ms << (attempt - 1);
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
    }
    if (limiter_) limiter_->acquire();

    httplib::Client client(url.host_port);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_write_timeout(config_.timeout_seconds, 0);
    client.set_bearer_token_auth(config_.api_key);

    httplib::Result res = client.Post(path, body, "application/json");
    if (!res) {
      last_failure = "transport: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_failure = "status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      fail(ErrorKind::Transport, "remote endpoint returned status " +
                                     std::to_string(res->status) + ": " + res->body);
    }
    try {
      const nlohmann::json doc = nlohmann::json::parse(res->body);
      if (!doc.contains("text") || !doc["text"].is_string()) {
        fail(ErrorKind::Transport, "remote reply lacks a text field: " + res->body);
      }
      return doc["text"].get<std::string>();
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::Transport, std::string("remote reply is not parseable: ") + e.what());
    }
  }
  fail(ErrorKind::Transport, "remote request failed after " +
                                 std::to_string(config_.max_retries + 1) + " attempts (" +
                                 last_failure + ")");
}

ReasonerFactory remote_factory(const RemoteConfig& config) {
  auto limiter = std::make_shared<RemoteReasoner::Limiter>(config.requests_per_second);
  return [config, limiter](const Instance&) {
    return std::make_unique<RemoteReasoner>(config, limiter);
  };
}

}  // namespace grassland
