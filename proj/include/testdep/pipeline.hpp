#pragma once

// End-to-end run: extract candidates, filter, validate by execution, derive
// schedules, and write every stage as an artifact file. All serialization
// goes through sorted containers, so identical inputs and options produce
// byte-identical artifacts.

#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "testdep/builtin_data.hpp"
#include "testdep/errors.hpp"
#include "testdep/filtering.hpp"
#include "testdep/graph.hpp"
#include "testdep/manifest.hpp"
#include "testdep/nlp.hpp"
#include "testdep/report.hpp"
#include "testdep/scheduler.hpp"
#include "testdep/suite.hpp"
#include "testdep/validator.hpp"

namespace testdep {

enum class ExtractionMode { OriginalOrder, StringAnalysis };

inline const char* to_string(ExtractionMode mode) {
  return mode == ExtractionMode::OriginalOrder ? "original-order" : "string-analysis";
}

enum class FilterMode { DepFree, NlpVerb, NlpDobj, NlpNoun };

inline const char* to_string(FilterMode mode) {
  switch (mode) {
    case FilterMode::DepFree: return "dep-free";
    case FilterMode::NlpVerb: return "nlp-verb";
    case FilterMode::NlpDobj: return "nlp-dobj";
    case FilterMode::NlpNoun: return "nlp-noun";
  }
  return "?";
}

// Answers "is this value dependency-free?" for one ranked value; wired to a
// terminal prompt in interactive runs.
using ValuePrompt = std::function<bool(const FrequencyEntry&)>;

// Decides which ranked values count as dependency-free. Values present in
// every test are handled by the auto rule and never asked. Values reaching
// the confirmation threshold are answered by the assume sets ("*" covers all
// of them) or by the prompt; with neither, the run cannot proceed. Values
// named in assume_yes are confirmed even below the threshold.
inline std::set<std::string> confirm_dependency_free(const StringFrequencyReport& report,
                                                     const std::set<std::string>& assume_yes,
                                                     const std::set<std::string>& assume_no,
                                                     bool auto_ubiquitous = true,
                                                     ValuePrompt prompt = nullptr) {
  for (const std::set<std::string>* s : {&assume_yes, &assume_no})
    for (const std::string& value : *s)
      if (value != "*" && !report.contains(value)) throw UnknownValue(value);

  std::size_t threshold = confirmation_threshold(report.suite_size);
  std::set<std::string> confirmed;
  for (const FrequencyEntry& entry : report.entries) {
    if (auto_ubiquitous && entry.test_count == report.suite_size) continue;
    if (assume_no.count(entry.value) != 0) continue;
    if (assume_yes.count(entry.value) != 0) {
      confirmed.insert(entry.value);
      continue;
    }
    if (entry.test_count < threshold) continue;
    if (assume_yes.count("*") != 0) {
      confirmed.insert(entry.value);
      continue;
    }
    if (assume_no.count("*") != 0) continue;
    if (!prompt) throw NonInteractiveWithoutAssumptions(entry.value);
    if (prompt(entry)) confirmed.insert(entry.value);
  }
  return confirmed;
}

struct RunConfig {
  std::string suite_name = "suite";
  ExtractionMode extraction = ExtractionMode::StringAnalysis;
  std::vector<FilterMode> filters;
  std::set<std::string> assume_yes;
  std::set<std::string> assume_no;
  bool auto_ubiquitous = true;
  bool include_locators = false;
  DobjMode dobj_mode = DobjMode::FirstNoun;
  std::string lexicon_text;   // empty: builtin default
  std::string taxonomy_text;  // empty: builtin default
  std::size_t budget = 0;     // 0: 4 * n^2
  std::size_t seed = 0;       // recorded in the summary
  ValuePrompt prompt;         // only consulted by the dep-free filter
};

struct PipelineResult {
  DependencyGraph candidates;
  StringFrequencyReport frequency;      // filled when dep-free ran
  std::set<std::string> confirmed;      // values treated as dependency-free
  std::vector<FilterRemoval> removals;  // all filters, in application order
  ValidationResult validation;
  ScheduleSet schedules;
  SpeedupMetrics metrics;
  RunSummary summary;
};

inline PipelineResult run_pipeline(const TestSuite& suite, const AppManifest& manifest,
                                   const RunConfig& config) {
  PipelineResult result;
  result.candidates = config.extraction == ExtractionMode::OriginalOrder
                          ? extract_original_order(suite)
                          : extract_sub_use(suite, manifest, config.include_locators);

  DependencyGraph graph = result.candidates;
  std::vector<std::string> filter_names;
  for (FilterMode mode : config.filters) {
    filter_names.push_back(to_string(mode));
    if (mode == FilterMode::DepFree) {
      result.frequency = rank_string_values(graph, suite, config.include_locators);
      result.confirmed =
          confirm_dependency_free(result.frequency, config.assume_yes, config.assume_no,
                                  config.auto_ubiquitous, config.prompt);
      auto removed = filter_dependency_free(graph, result.frequency, result.confirmed,
                                            config.auto_ubiquitous);
      result.removals.insert(result.removals.end(), removed.begin(), removed.end());
      continue;
    }
    PosLexicon lexicon = parse_lexicon(
        config.lexicon_text.empty() ? builtin::kLexicon : config.lexicon_text);
    VerbTaxonomy taxonomy = parse_taxonomy(
        config.taxonomy_text.empty() ? builtin::kTaxonomy : config.taxonomy_text);
    NlpConfig nlp = mode == FilterMode::NlpVerb   ? NlpConfig::Verb
                    : mode == FilterMode::NlpDobj ? NlpConfig::Dobj
                                                  : NlpConfig::Noun;
    auto removed = filter_nlp(graph, suite, nlp, lexicon, taxonomy, config.dobj_mode);
    result.removals.insert(result.removals.end(), removed.begin(), removed.end());
  }

  ValidationOptions options;
  options.budget = config.budget;
  result.validation = run_full_validation(suite, manifest, graph, options);
  result.schedules = derive_schedules(result.validation.graph, manifest);
  result.metrics = speedup_metrics(result.schedules);
  result.summary = make_summary(config.suite_name, suite.size(), to_string(config.extraction),
                                filter_names, result.candidates.edge_count(),
                                result.removals.size(), result.validation.counts,
                                result.metrics);
  result.summary.seed = config.seed;
  return result;
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

}  // namespace detail

// Writes the eight artifacts for one run into out_dir.
inline void write_pipeline_artifacts(const PipelineResult& result,
                                     const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  detail::write_file(dir / "candidates.json", export_graph_json(result.candidates));

  nlohmann::json filter_report{{"filters", result.summary.filters},
                               {"confirmed", result.confirmed},
                               {"removals", removals_to_json(result.removals)}};
  if (!result.frequency.entries.empty() || result.frequency.suite_size != 0)
    filter_report["frequency"] = frequency_report_to_json(result.frequency);
  detail::write_file(dir / "filter_report.json", filter_report.dump(2) + "\n");

  detail::write_file(dir / "events.jsonl", events_to_jsonl(result.validation.events));
  detail::write_file(dir / "final.json", export_graph_json(result.validation.graph));
  detail::write_file(dir / "final.dot", export_graph_dot(result.validation.graph));
  detail::write_file(dir / "schedules.json",
                     schedule_set_to_json(result.schedules).dump(2) + "\n");
  detail::write_file(dir / "metrics.json", metrics_to_json(result.schedules).dump(2) + "\n");
  detail::write_file(dir / "summary.json", summary_to_json(result.summary).dump(2) + "\n");
}

}  // namespace testdep
