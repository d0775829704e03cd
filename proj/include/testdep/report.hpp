#pragma once

// Aggregates one pipeline run into a flat summary: how many edges each stage
// produced, how many the validator confirmed or refuted, and the schedule
// speedups. Rendered as JSON for tooling and as an aligned text table for
// terminals.

#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "testdep/scheduler.hpp"
#include "testdep/validator.hpp"

namespace testdep {

struct RunSummary {
  std::string suite_name;
  std::size_t seed = 0;
  std::size_t test_count = 0;
  std::string extraction;              // "original-order" or "string-analysis"
  std::vector<std::string> filters;    // applied filter names, in order
  std::size_t extracted = 0;
  std::size_t filtered = 0;            // removed before validation
  std::size_t to_validate = 0;
  std::size_t false_candidates = 0;    // refuted by execution
  std::size_t validated = 0;
  std::size_t recovered = 0;
  std::size_t recovered_disconnected = 0;
  std::size_t manifest_total = 0;
  std::size_t schedules_executed = 0;
  double worst_case_speedup = 1.0;
  double average_speedup = 1.0;
};

inline RunSummary make_summary(const std::string& suite_name, std::size_t test_count,
                               const std::string& extraction,
                               std::vector<std::string> filters, std::size_t extracted,
                               std::size_t filtered, const ValidationCounts& counts,
                               const SpeedupMetrics& metrics) {
  RunSummary s;
  s.suite_name = suite_name;
  s.test_count = test_count;
  s.extraction = extraction;
  s.filters = std::move(filters);
  s.extracted = extracted;
  s.filtered = filtered;
  s.to_validate = counts.to_validate;
  s.false_candidates = counts.removed;
  s.validated = counts.validated;
  s.recovered = counts.recovered;
  s.recovered_disconnected = counts.recovered_disconnected;
  s.manifest_total = counts.manifest_total;
  s.schedules_executed = counts.schedules_executed;
  s.worst_case_speedup = metrics.worst_case;
  s.average_speedup = metrics.average;
  return s;
}

inline nlohmann::json summary_to_json(const RunSummary& s) {
  return {
      {"suite", s.suite_name},
      {"seed", s.seed},
      {"tests", s.test_count},
      {"extraction", s.extraction},
      {"filters", s.filters},
      {"extracted", s.extracted},
      {"filtered", s.filtered},
      {"to_validate", s.to_validate},
      {"false", s.false_candidates},
      {"validated", s.validated},
      {"recovered", s.recovered},
      {"recovered_disconnected", s.recovered_disconnected},
      {"manifest_total", s.manifest_total},
      {"schedules_executed", s.schedules_executed},
      {"worst_case_speedup", s.worst_case_speedup},
      {"average_speedup", s.average_speedup},
  };
}

namespace detail {

inline std::string fixed1(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << v;
  return os.str();
}

}  // namespace detail

inline std::string summary_to_table(const RunSummary& s) {
  std::vector<std::pair<std::string, std::string>> rows = {
      {"Suite", s.suite_name},
      {"Tests", std::to_string(s.test_count)},
      {"Extraction", s.extraction},
      {"Filters", s.filters.empty() ? "none" : ""},
      {"Extracted", std::to_string(s.extracted)},
      {"Filtered", std::to_string(s.filtered)},
      {"To validate", std::to_string(s.to_validate)},
      {"False", std::to_string(s.false_candidates)},
      {"Validated", std::to_string(s.validated)},
      {"Recovered", std::to_string(s.recovered)},
      {"Recovered (disc.)", std::to_string(s.recovered_disconnected)},
      {"Manifest total", std::to_string(s.manifest_total)},
      {"Schedules executed", std::to_string(s.schedules_executed)},
      {"Worst-case speedup", detail::fixed1(s.worst_case_speedup)},
      {"Average speedup", detail::fixed1(s.average_speedup)},
  };
  for (std::size_t i = 0; i < s.filters.size(); ++i) {
    if (i) rows[3].second += ", ";
    rows[3].second += s.filters[i];
  }
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows)
    os << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
  return os.str();
}

}  // namespace testdep
