#pragma once

// Dependency graph over a test suite. An edge points from a dependent test
// to an earlier prerequisite, so every edge runs against the original order.
// Statuses move CANDIDATE -> MANIFEST or CANDIDATE -> REMOVED, never back.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "testdep/errors.hpp"
#include "testdep/manifest.hpp"
#include "testdep/suite.hpp"

namespace testdep {

enum class EdgeStatus { Candidate, Manifest, Removed };
enum class EdgeOrigin { Extracted, Recovered, RecoveredDisconnected };

inline const char* to_string(EdgeStatus status) {
  switch (status) {
    case EdgeStatus::Candidate: return "candidate";
    case EdgeStatus::Manifest: return "manifest";
    case EdgeStatus::Removed: return "removed";
  }
  return "?";
}

inline const char* to_string(EdgeOrigin origin) {
  switch (origin) {
    case EdgeOrigin::Extracted: return "extracted";
    case EdgeOrigin::Recovered: return "recovered";
    case EdgeOrigin::RecoveredDisconnected: return "recovered_disconnected";
  }
  return "?";
}

struct Edge {
  std::string dependent;
  std::string prerequisite;
  std::set<std::string> labels;
  EdgeStatus status = EdgeStatus::Candidate;
  EdgeOrigin origin = EdgeOrigin::Extracted;
  bool via_transitivity = false;  // marked manifest without execution
  bool via_exhaustion = false;    // marked manifest after recovery ran dry

  bool operator==(const Edge&) const = default;
};

class DependencyGraph {
 public:
  DependencyGraph() = default;

  explicit DependencyGraph(const TestSuite& suite) {
    for (const TestCase& test : suite.tests()) tests_.push_back(test.name);
    reindex();
  }

  explicit DependencyGraph(std::vector<std::string> test_names)
      : tests_(std::move(test_names)) {
    reindex();
  }

  const std::vector<std::string>& tests() const { return tests_; }

  std::size_t order_of(const std::string& name) const {
    auto it = order_.find(name);
    if (it == order_.end()) throw UnknownTestName(name);
    return it->second;  // 1-based
  }

  bool has_edge(const std::string& dependent, const std::string& prerequisite) const {
    return edges_.count(key_of(dependent, prerequisite)) != 0;
  }

  Edge& edge(const std::string& dependent, const std::string& prerequisite) {
    return edges_.at(key_of(dependent, prerequisite));
  }

  const Edge& edge(const std::string& dependent, const std::string& prerequisite) const {
    return edges_.at(key_of(dependent, prerequisite));
  }

  // Inserting twice unions the labels instead of duplicating the pair.
  Edge& add_edge(const std::string& dependent, const std::string& prerequisite,
                 std::set<std::string> labels = {},
                 EdgeOrigin origin = EdgeOrigin::Extracted) {
    std::size_t dep = order_of(dependent);
    std::size_t pre = order_of(prerequisite);
    if (dep <= pre)
      throw GraphFormatError("edge must point to an earlier test: " + dependent +
                             " -> " + prerequisite);
    auto it = edges_.find({dep, pre});
    if (it != edges_.end()) {
      it->second.labels.insert(labels.begin(), labels.end());
      return it->second;
    }
    it = edges_
             .emplace(std::make_pair(dep, pre),
                      Edge{dependent, prerequisite, std::move(labels),
                           EdgeStatus::Candidate, origin})
             .first;
    return it->second;
  }

  // Filters drop refuted candidates entirely so validation-time recovery may
  // rediscover the pair; only the validator records edges as Removed.
  void erase_edge(const std::string& dependent, const std::string& prerequisite) {
    if (edges_.erase(key_of(dependent, prerequisite)) == 0)
      throw GraphFormatError("no edge " + dependent + " -> " + prerequisite);
  }

  // Edges in deterministic order: by dependent position, then prerequisite.
  std::vector<const Edge*> edges() const {
    std::vector<const Edge*> out;
    out.reserve(edges_.size());
    for (const auto& [key, edge] : edges_) out.push_back(&edge);
    return out;
  }

  std::vector<Edge*> edges() {
    std::vector<Edge*> out;
    out.reserve(edges_.size());
    for (auto& [key, edge] : edges_) out.push_back(&edge);
    return out;
  }

  std::size_t edge_count() const { return edges_.size(); }

  std::size_t count_with_status(EdgeStatus status) const {
    std::size_t n = 0;
    for (const auto& [key, edge] : edges_)
      if (edge.status == status) ++n;
    return n;
  }

  // (dependent, prerequisite) name pairs of all edges carrying the status.
  std::set<std::pair<std::string, std::string>> pairs_with_status(EdgeStatus status) const {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [key, edge] : edges_)
      if (edge.status == status) out.insert({edge.dependent, edge.prerequisite});
    return out;
  }

  // Non-removed edges leaving `test` (its direct prerequisites).
  std::vector<const Edge*> outgoing(const std::string& test) const {
    std::vector<const Edge*> out;
    std::size_t dep = order_of(test);
    for (auto it = edges_.lower_bound({dep, 0}); it != edges_.end() && it->first.first == dep;
         ++it)
      if (it->second.status != EdgeStatus::Removed) out.push_back(&it->second);
    return out;
  }

  std::vector<const Edge*> incoming(const std::string& test) const {
    std::vector<const Edge*> out;
    std::size_t pre = order_of(test);
    for (const auto& [key, edge] : edges_)
      if (key.second == pre && edge.status != EdgeStatus::Removed) out.push_back(&edge);
    return out;
  }

  // Transitive prerequisites of `start`, optionally skipping one direct edge
  // and optionally following manifest edges only. Result excludes `start`
  // and is sorted by original order.
  std::vector<std::string> transitive_prerequisites(
      const std::string& start, const Edge* skip = nullptr,
      bool manifest_only = false) const {
    std::set<std::size_t> seen;
    std::vector<std::size_t> work{order_of(start)};
    while (!work.empty()) {
      std::size_t dep = work.back();
      work.pop_back();
      for (auto it = edges_.lower_bound({dep, 0});
           it != edges_.end() && it->first.first == dep; ++it) {
        const Edge& e = it->second;
        if (e.status == EdgeStatus::Removed) continue;
        if (manifest_only && e.status != EdgeStatus::Manifest) continue;
        if (skip && &e == skip) continue;
        if (seen.insert(it->first.second).second) work.push_back(it->first.second);
      }
    }
    std::vector<std::string> out;
    for (std::size_t pos : seen) out.push_back(tests_[pos - 1]);
    return out;
  }

  bool operator==(const DependencyGraph& other) const {
    return tests_ == other.tests_ && edges_ == other.edges_;
  }

 private:
  std::pair<std::size_t, std::size_t> key_of(const std::string& dependent,
                                             const std::string& prerequisite) const {
    return {order_of(dependent), order_of(prerequisite)};
  }

  void reindex() {
    order_.clear();
    for (std::size_t i = 0; i < tests_.size(); ++i) {
      if (!order_.emplace(tests_[i], i + 1).second) throw DuplicateTestName(tests_[i]);
    }
  }

  std::vector<std::string> tests_;                       // original order
  std::map<std::string, std::size_t> order_;             // name -> 1-based position
  std::map<std::pair<std::size_t, std::size_t>, Edge> edges_;
};

// --- extraction ---------------------------------------------------------

// Every ordered pair: n(n-1)/2 unlabeled candidate edges.
inline DependencyGraph extract_original_order(const TestSuite& suite) {
  DependencyGraph graph(suite);
  const auto& tests = suite.tests();
  for (std::size_t j = 1; j < tests.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      graph.add_edge(tests[j].name, tests[i].name);
  return graph;
}

// Values a test submits: arguments of statements whose action is declared
// input-submitting.
inline std::set<std::string> input_values(const TestCase& test,
                                          const std::set<std::string>& input_submitting) {
  std::set<std::string> values;
  for (const Statement& st : test.statements)
    if (input_submitting.count(st.action) != 0)
      values.insert(st.args.begin(), st.args.end());
  return values;
}

// Values a test mentions anywhere in its arguments; locators only on demand.
inline std::set<std::string> used_values(const TestCase& test, bool include_locators = false) {
  std::set<std::string> values;
  for (const Statement& st : test.statements) {
    values.insert(st.args.begin(), st.args.end());
    if (include_locators) values.insert(st.locator);
  }
  return values;
}

// Sub-use extraction: a later test that mentions a value some earlier test
// submitted gets a candidate edge to it, labeled with the shared values.
inline DependencyGraph extract_sub_use(const TestSuite& suite, const AppManifest& manifest,
                                       bool include_locators = false) {
  DependencyGraph graph(suite);
  const auto& tests = suite.tests();
  std::vector<std::set<std::string>> submitted;
  submitted.reserve(tests.size());
  for (const TestCase& test : tests)
    submitted.push_back(input_values(test, manifest.input_submitting));

  for (std::size_t i = 0; i < tests.size(); ++i) {
    if (submitted[i].empty()) continue;
    for (std::size_t j = i + 1; j < tests.size(); ++j) {
      std::set<std::string> used = used_values(tests[j], include_locators);
      std::set<std::string> shared;
      for (const std::string& v : used)
        if (submitted[i].count(v) != 0) shared.insert(v);
      if (!shared.empty())
        graph.add_edge(tests[j].name, tests[i].name, std::move(shared));
    }
  }
  return graph;
}

// --- serialization --------------------------------------------------------

inline constexpr int kGraphFormatVersion = 1;

inline nlohmann::json graph_to_json(const DependencyGraph& graph) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge* edge : graph.edges()) {
    nlohmann::json e{{"dependent", edge->dependent},
                     {"prerequisite", edge->prerequisite},
                     {"labels", edge->labels},
                     {"status", to_string(edge->status)},
                     {"origin", to_string(edge->origin)}};
    if (edge->via_transitivity) e["via_transitivity"] = true;
    if (edge->via_exhaustion) e["via_exhaustion"] = true;
    edges.push_back(std::move(e));
  }
  return nlohmann::json{{"format_version", kGraphFormatVersion},
                        {"tests", graph.tests()},
                        {"edges", std::move(edges)}};
}

inline DependencyGraph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("format_version"))
    throw GraphFormatError("missing format_version");
  if (doc["format_version"].get<int>() != kGraphFormatVersion)
    throw GraphFormatError("unsupported format_version");
  if (!doc.contains("tests") || !doc["tests"].is_array())
    throw GraphFormatError("missing tests array");

  DependencyGraph graph(doc["tests"].get<std::vector<std::string>>());
  for (const auto& e : doc.value("edges", nlohmann::json::array())) {
    std::string dependent = e.at("dependent").get<std::string>();
    std::string prerequisite = e.at("prerequisite").get<std::string>();
    if (graph.has_edge(dependent, prerequisite))
      throw GraphFormatError("duplicate edge: " + dependent + " -> " + prerequisite);
    Edge& edge = graph.add_edge(dependent, prerequisite,
                                e.value("labels", std::set<std::string>{}));
    std::string status = e.value("status", "candidate");
    if (status == "candidate") edge.status = EdgeStatus::Candidate;
    else if (status == "manifest") edge.status = EdgeStatus::Manifest;
    else if (status == "removed") edge.status = EdgeStatus::Removed;
    else throw GraphFormatError("unknown edge status \"" + status + "\"");
    std::string origin = e.value("origin", "extracted");
    if (origin == "extracted") edge.origin = EdgeOrigin::Extracted;
    else if (origin == "recovered") edge.origin = EdgeOrigin::Recovered;
    else if (origin == "recovered_disconnected")
      edge.origin = EdgeOrigin::RecoveredDisconnected;
    else throw GraphFormatError("unknown edge origin \"" + origin + "\"");
    edge.via_transitivity = e.value("via_transitivity", false);
    edge.via_exhaustion = e.value("via_exhaustion", false);
  }
  return graph;
}

inline std::string export_graph_json(const DependencyGraph& graph) {
  return graph_to_json(graph).dump(2) + "\n";
}

inline DependencyGraph import_graph_json(const std::string& text) {
  try {
    return graph_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw GraphFormatError(e.what());
  }
}

// DOT view: manifest edges solid, candidates dashed, removed edges omitted.
inline std::string export_graph_dot(const DependencyGraph& graph) {
  std::string out = "digraph dependencies {\n";
  for (const std::string& test : graph.tests()) out += "  \"" + test + "\";\n";
  for (const Edge* edge : graph.edges()) {
    if (edge->status == EdgeStatus::Removed) continue;
    out += "  \"" + edge->dependent + "\" -> \"" + edge->prerequisite + "\"";
    std::string label;
    for (const std::string& v : edge->labels) {
      if (!label.empty()) label += ",";
      label += v;
    }
    out += " [style=" +
           std::string(edge->status == EdgeStatus::Manifest ? "solid" : "dashed");
    if (!label.empty()) out += ", label=\"" + label + "\"";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace testdep
