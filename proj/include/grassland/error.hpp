#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grassland {

// Error categories, mapped to CLI exit codes in tools/.
enum class ErrorKind {
  Contract,    // precondition / invariant breach by the caller
  Horizon,     // tick or action count beyond the scenario horizon
  Generation,  // rejection-sampling cap exceeded
  Parse,       // malformed file or wire payload
  Config,      // bad run configuration
  Transport,   // remote endpoint failure after retries
  Scoring,     // scoring on mismatched task / records
  Io,          // filesystem failure
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Contract: return "contract violation";
    case ErrorKind::Horizon: return "horizon error";
    case ErrorKind::Generation: return "generation failure";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Transport: return "transport error";
    case ErrorKind::Scoring: return "scoring error";
    case ErrorKind::Io: return "io error";
  }
  return "error";
}

}  // namespace grassland
