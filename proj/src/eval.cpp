#include "grassland/eval.hpp"

#include <cstdio>

#include "grassland/dynamics.hpp"

namespace grassland {

namespace {

std::string fmt_frac(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string fmt_mean(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

constexpr char kLetters[] = {'A', 'B', 'C', 'D'};

}  // namespace

std::string to_string(NavigationScore::Status s) {
  switch (s) {
    case NavigationScore::Status::Arrived: return "arrived";
    case NavigationScore::Status::Failed: return "failed";
    case NavigationScore::Status::Unfinished: return "unfinished";
  }
  fail(ErrorKind::Contract, "unknown navigation status");
}

JudgmentScore score_judgment(const Instance& instance, const ParsedAnswer& answer) {
  if (instance.config.task != Task::Judgment) {
    fail(ErrorKind::Contract, "score_judgment needs a judgment instance, got " + instance.id);
  }
  JudgmentScore score;
  score.gold = outcome_to_choice(instance.judgment_truth);
  score.answer = answer.judgment;
  score.correct = answer.judgment && *answer.judgment == score.gold;
  return score;
}

NavigationScore score_navigation(const Instance& instance, const ParsedAnswer& answer) {
  if (instance.config.task != Task::Navigation) {
    fail(ErrorKind::Contract, "score_navigation needs a navigation instance, got " + instance.id);
  }
  NavigationScore score;
  if (!answer.navigation) return score;  // nothing parsed -> Unfinished

  ActionSequence route = *answer.navigation;
  score.answer_steps = static_cast<int>(route.size());
  const std::size_t limit = static_cast<std::size_t>(instance.config.step_limit);
  if (route.size() > limit) {
    route.resize(limit);
    score.truncated = true;
  }
  const Trace trace = simulate(instance.scenario, route);
  switch (trace.outcome) {
    case Outcome::Success:
      score.status = NavigationScore::Status::Arrived;
      score.effective_steps = trace.steps_executed;
      break;
    case Outcome::FailWater:
    case Outcome::FailLava:
      score.status = NavigationScore::Status::Failed;
      break;
    case Outcome::Unfinished:
      score.status = NavigationScore::Status::Unfinished;
      break;
  }
  return score;
}

JudgmentMetrics aggregate_judgment(const std::vector<JudgmentScore>& scores) {
  JudgmentMetrics m;
  m.total = scores.size();
  std::size_t correct_total = 0;
  for (const JudgmentScore& s : scores) {
    ++m.support[s.gold];
    m.correct_count.try_emplace(s.gold, 0);
    if (s.correct) {
      ++m.correct_count[s.gold];
      ++correct_total;
    }
  }
  if (m.total > 0) m.total_acc = static_cast<double>(correct_total) / m.total;
  for (const auto& [letter, support] : m.support) {
    m.per_choice_acc[letter] = static_cast<double>(m.correct_count[letter]) / support;
  }
  return m;
}

NavigationMetrics aggregate_navigation(const std::vector<NavigationScore>& scores) {
  NavigationMetrics m;
  m.total = scores.size();
  for (const NavigationScore& s : scores) {
    switch (s.status) {
      case NavigationScore::Status::Arrived:
        ++m.arrived;
        m.sum_effective += s.effective_steps;
        m.sum_answer += s.answer_steps;
        break;
      case NavigationScore::Status::Failed: ++m.failed; break;
      case NavigationScore::Status::Unfinished: ++m.unfinished; break;
    }
    if (s.truncated) ++m.truncated;
  }
  if (m.total > 0) {
    m.arrived_pct = static_cast<double>(m.arrived) / m.total;
    m.failed_pct = static_cast<double>(m.failed) / m.total;
    m.unfinished_pct = static_cast<double>(m.unfinished) / m.total;
  }
  if (m.arrived > 0) {
    m.ave_step_effective = static_cast<double>(m.sum_effective) / m.arrived;
    m.ave_step_answer = static_cast<double>(m.sum_answer) / m.arrived;
  }
  return m;
}

std::string to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Markdown: return "markdown";
    case ReportFormat::Json: return "json";
  }
  fail(ErrorKind::Contract, "unknown report format");
}

std::optional<ReportFormat> report_format_from_string(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "markdown" || s == "md") return ReportFormat::Markdown;
  if (s == "json") return ReportFormat::Json;
  return std::nullopt;
}

namespace {

Task report_task(const std::vector<ReportRow>& rows) {
  const Task task = rows.front().task;
  for (const ReportRow& row : rows) {
    if (row.task != task) {
      fail(ErrorKind::Contract, "report rows mix judgment and navigation results");
    }
  }
  return task;
}

std::string letter_acc(const JudgmentMetrics& m, char letter) {
  const auto it = m.per_choice_acc.find(letter);
  return it == m.per_choice_acc.end() ? "-" : fmt_frac(it->second);
}

std::size_t letter_support(const JudgmentMetrics& m, char letter) {
  const auto it = m.support.find(letter);
  return it == m.support.end() ? 0 : it->second;
}

std::string emit_csv(const std::vector<ReportRow>& rows, Task task) {
  std::string out;
  if (task == Task::Judgment) {
    out += "task,method,level,episodes,total_acc,acc_A,acc_B,acc_C,acc_D,"
           "support_A,support_B,support_C,support_D\n";
    for (const ReportRow& row : rows) {
      const JudgmentMetrics& m = row.judgment;
      out += to_string(task) + "," + row.method + "," + row.level + "," +
             std::to_string(m.total) + ",";
      out += m.empty() ? "-" : fmt_frac(m.total_acc);
      for (char letter : kLetters) out += "," + letter_acc(m, letter);
      for (char letter : kLetters) out += "," + std::to_string(letter_support(m, letter));
      out += "\n";
    }
  } else {
    out += "task,method,level,episodes,arrived_pct,failed_pct,unfinished_pct,"
           "ave_step_effective,ave_step_answer,truncated\n";
    for (const ReportRow& row : rows) {
      const NavigationMetrics& m = row.navigation;
      out += to_string(task) + "," + row.method + "," + row.level + "," +
             std::to_string(m.total) + ",";
      if (m.empty()) {
        out += "-,-,-";
      } else {
        out += fmt_frac(m.arrived_pct) + "," + fmt_frac(m.failed_pct) + "," +
               fmt_frac(m.unfinished_pct);
      }
      if (m.arrived > 0) {
        out += "," + fmt_mean(m.ave_step_effective) + "," + fmt_mean(m.ave_step_answer);
      } else {
        out += ",-,-";
      }
      out += "," + std::to_string(m.truncated) + "\n";
    }
  }
  return out;
}

std::string emit_markdown(const std::vector<ReportRow>& rows, Task task) {
  std::string out;
  if (task == Task::Judgment) {
    out += "## Maze Judgment\n\n";
    out += "| Method | Level | Episodes | Choice Acc. | A | B | C | D |\n";
    out += "|---|---|---|---|---|---|---|---|\n";
    for (const ReportRow& row : rows) {
      const JudgmentMetrics& m = row.judgment;
      out += "| " + row.method + " | " + row.level + " | " + std::to_string(m.total) + " | ";
      out += m.empty() ? "-" : fmt_frac(m.total_acc);
      for (char letter : kLetters) out += " | " + letter_acc(m, letter);
      out += " |\n";
    }
  } else {
    out += "## Maze Navigation\n\n";
    out += "| Method | Level | Episodes | Arrived | Failed | Unfinished | "
           "Ave. Step (Effective) | Ave. Step (Answer) |\n";
    out += "|---|---|---|---|---|---|---|---|\n";
    for (const ReportRow& row : rows) {
      const NavigationMetrics& m = row.navigation;
      out += "| " + row.method + " | " + row.level + " | " + std::to_string(m.total) + " | ";
      if (m.empty()) {
        out += "- | - | -";
      } else {
        out += fmt_frac(m.arrived_pct) + " | " + fmt_frac(m.failed_pct) + " | " +
               fmt_frac(m.unfinished_pct);
      }
      if (m.arrived > 0) {
        out += " | " + fmt_mean(m.ave_step_effective) + " | " + fmt_mean(m.ave_step_answer);
      } else {
        out += " | - | -";
      }
      out += " |\n";
    }
  }
  return out;
}

std::string emit_json(const std::vector<ReportRow>& rows, Task task) {
  nlohmann::ordered_json doc;
  doc["task"] = to_string(task);
  auto out_rows = nlohmann::ordered_json::array();
  for (const ReportRow& row : rows) {
    nlohmann::ordered_json r;
    r["method"] = row.method;
    r["level"] = row.level;
    if (task == Task::Judgment) {
      const JudgmentMetrics& m = row.judgment;
      r["episodes"] = m.total;
      r["total_acc"] = m.total_acc;
      nlohmann::ordered_json per;
      nlohmann::ordered_json support;
      for (const auto& [letter, acc] : m.per_choice_acc) per[std::string(1, letter)] = acc;
      for (const auto& [letter, n] : m.support) support[std::string(1, letter)] = n;
      r["per_choice_acc"] = per;
      r["support"] = support;
    } else {
      const NavigationMetrics& m = row.navigation;
      r["episodes"] = m.total;
      r["arrived_pct"] = m.arrived_pct;
      r["failed_pct"] = m.failed_pct;
      r["unfinished_pct"] = m.unfinished_pct;
      r["ave_step_effective"] = m.ave_step_effective;
      r["ave_step_answer"] = m.ave_step_answer;
      r["truncated"] = m.truncated;
    }
    out_rows.push_back(r);
  }
  doc["rows"] = out_rows;
  return doc.dump(2) + "\n";
}

}  // namespace

std::string emit_report(const std::vector<ReportRow>& rows, ReportFormat format) {
  if (rows.empty()) {
    switch (format) {
      case ReportFormat::Csv: return "# empty report: no episodes scored\n";
      case ReportFormat::Markdown: return "_Empty report: no episodes scored._\n";
      case ReportFormat::Json: return "{\n  \"empty\": true,\n  \"rows\": []\n}\n";
    }
  }
  const Task task = report_task(rows);
  switch (format) {
    case ReportFormat::Csv: return emit_csv(rows, task);
    case ReportFormat::Markdown: return emit_markdown(rows, task);
    case ReportFormat::Json: return emit_json(rows, task);
  }
  fail(ErrorKind::Contract, "unknown report format");
}

nlohmann::ordered_json judgment_record(const std::string& instance_id, const std::string& method,
                                       const JudgmentScore& score) {
  nlohmann::ordered_json rec;
  rec["id"] = instance_id;
  rec["task"] = to_string(Task::Judgment);
  rec["method"] = method;
  rec["gold"] = std::string(1, score.gold);
  rec["answer"] = score.answer ? nlohmann::ordered_json(std::string(1, *score.answer))
                               : nlohmann::ordered_json(nullptr);
  rec["correct"] = score.correct;
  return rec;
}

nlohmann::ordered_json navigation_record(const std::string& instance_id, const std::string& method,
                                         const NavigationScore& score) {
  nlohmann::ordered_json rec;
  rec["id"] = instance_id;
  rec["task"] = to_string(Task::Navigation);
  rec["method"] = method;
  rec["status"] = to_string(score.status);
  rec["effective_steps"] = score.effective_steps;
  rec["answer_steps"] = score.answer_steps;
  rec["truncated"] = score.truncated;
  return rec;
}

}  // namespace grassland
