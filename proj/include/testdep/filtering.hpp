#pragma once

// Pre-validation edge filters. The dependency-free filter drops edges whose
// labels are exhausted by confirmed ubiquitous values (login names and the
// like). The NLP filters classify both endpoint tests from their names and
// drop edges whose read/write pattern cannot be a persistent read-after-write.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "testdep/graph.hpp"
#include "testdep/nlp.hpp"
#include "testdep/suite.hpp"

namespace testdep {

struct FrequencyEntry {
  std::string value;
  std::size_t test_count = 0;
  std::vector<std::pair<std::string, std::string>> edge_refs;  // (dependent, prerequisite)
};

struct StringFrequencyReport {
  std::vector<FrequencyEntry> entries;  // descending test_count, ties by value
  std::size_t suite_size = 0;

  bool contains(const std::string& value) const {
    for (const FrequencyEntry& e : entries)
      if (e.value == value) return true;
    return false;
  }

  const FrequencyEntry* find(const std::string& value) const {
    for (const FrequencyEntry& e : entries)
      if (e.value == value) return &e;
    return nullptr;
  }
};

// Ranks every distinct edge-label value by how many tests mention it.
inline StringFrequencyReport rank_string_values(const DependencyGraph& graph,
                                                const TestSuite& suite,
                                                bool include_locators = false) {
  std::set<std::string> values;
  for (const Edge* edge : graph.edges())
    values.insert(edge->labels.begin(), edge->labels.end());

  std::vector<std::set<std::string>> mentioned;
  mentioned.reserve(suite.size());
  for (const TestCase& test : suite.tests())
    mentioned.push_back(used_values(test, include_locators));

  StringFrequencyReport report;
  report.suite_size = suite.size();
  for (const std::string& value : values) {
    FrequencyEntry entry;
    entry.value = value;
    for (const auto& used : mentioned)
      if (used.count(value) != 0) ++entry.test_count;
    for (const Edge* edge : graph.edges())
      if (edge->labels.count(value) != 0)
        entry.edge_refs.emplace_back(edge->dependent, edge->prerequisite);
    report.entries.push_back(std::move(entry));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const FrequencyEntry& a, const FrequencyEntry& b) {
                     if (a.test_count != b.test_count) return a.test_count > b.test_count;
                     return a.value < b.value;
                   });
  return report;
}

// Values worth asking about: mentioned by at least half the tests.
inline std::size_t confirmation_threshold(std::size_t suite_size) {
  return (suite_size + 1) / 2;
}

struct FilterRemoval {
  std::string dependent;
  std::string prerequisite;
  std::string reason;

  bool operator==(const FilterRemoval&) const = default;
};

// Strips confirmed values (plus, in auto mode, values present in every test)
// from edge labels; an edge whose label set empties is dropped from the
// graph. Values are processed in rank order, so the logged reason names the
// value that emptied the edge.
inline std::vector<FilterRemoval> filter_dependency_free(
    DependencyGraph& graph, const StringFrequencyReport& report,
    const std::set<std::string>& confirmed, bool auto_ubiquitous = true) {
  for (const std::string& value : confirmed)
    if (!report.contains(value)) throw UnknownValue(value);

  std::vector<FilterRemoval> removed;
  for (const FrequencyEntry& entry : report.entries) {
    bool applies = confirmed.count(entry.value) != 0 ||
                   (auto_ubiquitous && entry.test_count == report.suite_size);
    if (!applies) continue;
    std::vector<FilterRemoval> emptied;
    for (Edge* edge : graph.edges()) {
      if (edge->status != EdgeStatus::Candidate) continue;
      if (edge->labels.erase(entry.value) == 0) continue;
      if (edge->labels.empty())
        emptied.push_back({edge->dependent, edge->prerequisite, "DEP_FREE:" + entry.value});
    }
    for (const FilterRemoval& r : emptied) graph.erase_edge(r.dependent, r.prerequisite);
    removed.insert(removed.end(), emptied.begin(), emptied.end());
  }
  return removed;
}

enum class NlpConfig { Verb, Dobj, Noun };

inline const char* to_string(NlpConfig config) {
  switch (config) {
    case NlpConfig::Verb: return "nlp-verb";
    case NlpConfig::Dobj: return "nlp-dobj";
    case NlpConfig::Noun: return "nlp-noun";
  }
  return "?";
}

namespace detail {

inline bool nouns_disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const std::string& x : a) {
    std::string lx = lowercase(x);
    for (const std::string& y : b)
      if (lx == lowercase(y)) return false;
  }
  return true;
}

inline bool dobj_differs(const std::optional<std::string>& a,
                         const std::optional<std::string>& b) {
  if (!a || !b) return false;  // without both objects there is nothing to compare
  return lowercase(*a) != lowercase(*b);
}

}  // namespace detail

// Read-after-read can't depend on state; write-after-read doesn't consume
// what the earlier test produced. Those go under every configuration. For
// read-after-write and write-after-write the configurations differ in how
// much name overlap they demand. Unclassifiable endpoints keep their edges.
inline std::vector<FilterRemoval> filter_nlp(DependencyGraph& graph, const TestSuite& suite,
                                             NlpConfig config, const PosLexicon& lexicon,
                                             const VerbTaxonomy& taxonomy,
                                             DobjMode dobj_mode = DobjMode::FirstNoun) {
  std::map<std::string, NameAnalysis> analyses;
  for (const TestCase& test : suite.tests())
    analyses[test.name] = analyze_name(test.name, lexicon, taxonomy, dobj_mode);

  std::vector<FilterRemoval> removed;
  for (Edge* edge : graph.edges()) {
    if (edge->status != EdgeStatus::Candidate) continue;
    const NameAnalysis& dep = analyses.at(edge->dependent);
    const NameAnalysis& pre = analyses.at(edge->prerequisite);
    if (dep.rw == RwClass::Unclassified || pre.rw == RwClass::Unclassified) continue;

    std::string reason;
    if (pre.rw == RwClass::Read) {
      reason = dep.rw == RwClass::Read ? "RAR" : "WAR";
    } else {
      switch (config) {
        case NlpConfig::Verb:
          break;  // read/write pattern alone keeps RaW and WaW
        case NlpConfig::Dobj:
          if (detail::dobj_differs(dep.dobj, pre.dobj)) reason = "DOBJ_DIFF";
          break;
        case NlpConfig::Noun:
          if (detail::nouns_disjoint(dep.nouns, pre.nouns)) reason = "NOUN_DISJOINT";
          break;
      }
    }
    if (reason.empty()) continue;
    removed.push_back({edge->dependent, edge->prerequisite, reason});
  }
  for (const FilterRemoval& r : removed) graph.erase_edge(r.dependent, r.prerequisite);
  return removed;
}

// --- reporting ------------------------------------------------------------

inline nlohmann::json frequency_report_to_json(const StringFrequencyReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const FrequencyEntry& e : report.entries) {
    nlohmann::json refs = nlohmann::json::array();
    for (const auto& [dep, pre] : e.edge_refs)
      refs.push_back({{"dependent", dep}, {"prerequisite", pre}});
    entries.push_back({{"value", e.value},
                       {"test_count", e.test_count},
                       {"edges", std::move(refs)}});
  }
  return nlohmann::json{{"suite_size", report.suite_size}, {"values", std::move(entries)}};
}

inline nlohmann::json removals_to_json(const std::vector<FilterRemoval>& removals) {
  nlohmann::json out = nlohmann::json::array();
  for (const FilterRemoval& r : removals)
    out.push_back({{"dependent", r.dependent},
                   {"prerequisite", r.prerequisite},
                   {"reason", r.reason}});
  return out;
}

}  // namespace testdep
