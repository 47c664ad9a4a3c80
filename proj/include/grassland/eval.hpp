#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "grassland/generator.hpp"
#include "grassland/prompts.hpp"

namespace grassland {

// Replay-based score for one judgment episode. `answer` is the letter the
// model committed to (empty when nothing parsed); an unparseable answer is
// simply incorrect.
struct JudgmentScore {
  char gold = '?';
  std::optional<char> answer;
  bool correct = false;

  bool operator==(const JudgmentScore&) const = default;
};

// Replay-based score for one navigation episode. The parsed route is replayed
// through the simulator; the model's own claims never decide the status.
// Routes longer than the step limit are cut to the limit before replay (the
// task says "within 6 steps") and the cut is recorded. answer_steps keeps the
// declared length; effective_steps is the tick of first arrival and is only
// meaningful when status is Arrived.
struct NavigationScore {
  enum class Status { Arrived, Failed, Unfinished };

  Status status = Status::Unfinished;
  int effective_steps = 0;
  int answer_steps = 0;
  bool truncated = false;

  bool operator==(const NavigationScore&) const = default;
};

std::string to_string(NavigationScore::Status s);

JudgmentScore score_judgment(const Instance& instance, const ParsedAnswer& answer);
NavigationScore score_navigation(const Instance& instance, const ParsedAnswer& answer);

// Aggregates carry raw counts so merging two sets is plain addition; the
// fractions are derived views. Only letters that actually occur as gold
// labels appear in the per-letter maps.
struct JudgmentMetrics {
  std::size_t total = 0;
  std::map<char, std::size_t> support;        // gold letter -> episode count
  std::map<char, std::size_t> correct_count;  // gold letter -> correct count
  double total_acc = 0.0;
  std::map<char, double> per_choice_acc;

  bool empty() const { return total == 0; }
  bool operator==(const JudgmentMetrics&) const = default;
};

struct NavigationMetrics {
  std::size_t total = 0;
  std::size_t arrived = 0;
  std::size_t failed = 0;
  std::size_t unfinished = 0;
  std::size_t truncated = 0;
  long long sum_effective = 0;  // over arrived episodes
  long long sum_answer = 0;     // over arrived episodes
  double arrived_pct = 0.0;     // fractions of total, not percent points
  double failed_pct = 0.0;
  double unfinished_pct = 0.0;
  double ave_step_effective = 0.0;  // 0 when nothing arrived
  double ave_step_answer = 0.0;

  bool empty() const { return total == 0; }
  bool operator==(const NavigationMetrics&) const = default;
};

JudgmentMetrics aggregate_judgment(const std::vector<JudgmentScore>& scores);
NavigationMetrics aggregate_navigation(const std::vector<NavigationScore>& scores);

// One table row: a (method, level) cell holding the aggregate for its task.
struct ReportRow {
  std::string method;
  std::string level;
  Task task = Task::Judgment;
  JudgmentMetrics judgment;      // read when task == Judgment
  NavigationMetrics navigation;  // read when task == Navigation

  bool operator==(const ReportRow&) const = default;
};

enum class ReportFormat { Csv, Markdown, Json };

std::string to_string(ReportFormat f);
std::optional<ReportFormat> report_format_from_string(const std::string& s);

// Renders rows (all of one task) as a table. Deterministic byte-for-byte:
// fractions as %.4f, step means as %.2f, undefined means as "-". An empty row
// set yields an explicit empty-report marker instead of a bare header.
std::string emit_report(const std::vector<ReportRow>& rows, ReportFormat format);

// Per-episode lines for the newline-delimited results file.
nlohmann::ordered_json judgment_record(const std::string& instance_id, const std::string& method,
                                       const JudgmentScore& score);
nlohmann::ordered_json navigation_record(const std::string& instance_id, const std::string& method,
                                         const NavigationScore& score);

}  // namespace grassland
