#pragma once

// Validates candidate edges by executing schedules. One step picks a
// candidate, runs a schedule with the target inverted (prerequisite left
// out); matching the original-order outcomes refutes the edge. Otherwise the
// schedule with the prerequisite included decides: a clean run confirms the
// edge, another failure means the graph is missing edges, and the first
// failing test gets new candidates to every earlier test the schedule
// skipped. Once nothing is pending, disconnected tests are probed in
// isolation and inside the schedules they appear in, recovering edges the
// extraction never saw.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "testdep/errors.hpp"
#include "testdep/graph.hpp"
#include "testdep/manifest.hpp"
#include "testdep/scheduler.hpp"
#include "testdep/simulator.hpp"
#include "testdep/suite.hpp"

namespace testdep {

enum class ValidationEventKind {
  Selected,
  ScheduleRun,
  MarkManifest,
  MarkRemoved,
  RecoveredEdge,
  DisconnectedRun,
};

inline const char* to_string(ValidationEventKind kind) {
  switch (kind) {
    case ValidationEventKind::Selected: return "SELECTED";
    case ValidationEventKind::ScheduleRun: return "SCHEDULE_RUN";
    case ValidationEventKind::MarkManifest: return "MARK_MANIFEST";
    case ValidationEventKind::MarkRemoved: return "MARK_REMOVED";
    case ValidationEventKind::RecoveredEdge: return "RECOVERED_EDGE";
    case ValidationEventKind::DisconnectedRun: return "DISCONNECTED_RUN";
  }
  return "?";
}

struct ValidationEvent {
  ValidationEventKind kind;
  nlohmann::json data;
};

inline constexpr int kEventLogSchemaVersion = 1;

inline std::string events_to_jsonl(const std::vector<ValidationEvent>& events) {
  std::string out;
  for (const ValidationEvent& event : events) {
    nlohmann::json line = event.data;
    line["schema_version"] = kEventLogSchemaVersion;
    line["kind"] = to_string(event.kind);
    out += line.dump() + "\n";
  }
  return out;
}

struct ValidationCounts {
  std::size_t to_validate = 0;            // candidates when validation began
  std::size_t validated = 0;              // extracted edges confirmed manifest
  std::size_t recovered = 0;              // in-validation recoveries confirmed
  std::size_t recovered_disconnected = 0; // sweep recoveries confirmed
  std::size_t removed = 0;                // edges refuted by execution
  std::size_t manifest_total = 0;
  std::size_t schedules_executed = 0;
  std::size_t via_transitivity = 0;
  std::size_t via_exhaustion = 0;
  std::size_t steps = 0;
};

struct ValidationResult {
  DependencyGraph graph;
  std::vector<ValidationEvent> events;
  ValidationCounts counts;
};

using ScheduleExecutor = std::function<OutcomeVector(const Schedule&)>;

struct ValidationOptions {
  std::size_t budget = 0;      // 0 means 4 * n^2
  ScheduleExecutor executor;   // defaults to the manifest-driven simulator
};

// The schedule that would refute `target`: everything the dependent still
// transitively requires once the target edge is ignored, then the dependent.
// Throws InversionImpossible when another dependency path keeps the
// prerequisite in the schedule.
inline Schedule inversion_schedule(const DependencyGraph& graph, const Edge& target) {
  Schedule schedule =
      graph.transitive_prerequisites(target.dependent, &target, /*manifest_only=*/false);
  if (std::find(schedule.begin(), schedule.end(), target.prerequisite) != schedule.end())
    throw InversionImpossible(target.dependent, target.prerequisite);
  schedule.push_back(target.dependent);
  return schedule;
}

// The schedule with the target honored: all transitive prerequisites of the
// dependent, target included, then the dependent.
inline Schedule no_inversion_schedule(const DependencyGraph& graph, const Edge& target) {
  Schedule schedule =
      graph.transitive_prerequisites(target.dependent, nullptr, /*manifest_only=*/false);
  schedule.push_back(target.dependent);
  return schedule;
}

namespace detail {

// Source-first order: latest dependent, then latest prerequisite.
struct SourceFirst {
  bool operator()(const std::pair<std::size_t, std::size_t>& a,
                  const std::pair<std::size_t, std::size_t>& b) const {
    return a > b;
  }
};

}  // namespace detail

class Validator {
 public:
  Validator(const TestSuite& suite, const AppManifest& manifest, DependencyGraph graph,
            ValidationOptions options = {})
      : suite_(suite),
        manifest_(manifest),
        graph_(std::move(graph)),
        budget_(options.budget != 0 ? options.budget : 4 * suite.size() * suite.size()),
        executor_(options.executor) {
    if (!executor_)
      executor_ = [this](const Schedule& schedule) {
        return execute_schedule(suite_, manifest_, schedule);
      };
    for (const Edge* edge : graph_.edges())
      if (edge->status == EdgeStatus::Candidate)
        pending_.insert({graph_.order_of(edge->dependent), graph_.order_of(edge->prerequisite)});
    counts_.to_validate = pending_.size();
  }

  // Drains the pending worklist, then alternates with the disconnected sweep
  // until a sweep adds nothing.
  ValidationResult run() {
    expected_ = executor_(all_tests());
    counts_.schedules_executed++;
    for (const TestCase& test : suite_.tests())
      if (expected_.of(test.name) != Outcome::Pass) throw BaselineFailure(test.name);

    validate_pending();
    while (recover_disconnected()) validate_pending();

    for (const Edge* edge : graph_.edges()) {
      if (edge->status != EdgeStatus::Manifest) continue;
      ++counts_.manifest_total;
      switch (edge->origin) {
        case EdgeOrigin::Extracted: ++counts_.validated; break;
        case EdgeOrigin::Recovered: ++counts_.recovered; break;
        case EdgeOrigin::RecoveredDisconnected: ++counts_.recovered_disconnected; break;
      }
    }
    return {graph_, events_, counts_};
  }

 private:
  using EdgeKey = std::pair<std::size_t, std::size_t>;

  Schedule all_tests() const {
    Schedule all;
    for (const TestCase& test : suite_.tests()) all.push_back(test.name);
    return all;
  }

  Edge& edge_of(const EdgeKey& key) {
    return graph_.edge(graph_.tests()[key.first - 1], graph_.tests()[key.second - 1]);
  }

  void spend_step() {
    if (++counts_.steps > budget_) throw IterationBudgetExceeded(budget_);
  }

  static nlohmann::json edge_json(const Edge& edge) {
    return {{"dependent", edge.dependent}, {"prerequisite", edge.prerequisite}};
  }

  nlohmann::json outcomes_json(const OutcomeVector& outcomes, const Schedule& schedule) const {
    nlohmann::json out = nlohmann::json::object();
    for (const std::string& test : schedule) out[test] = to_string(outcomes.of(test));
    return out;
  }

  OutcomeVector run_schedule(const Edge& target, const char* purpose,
                             const Schedule& schedule) {
    OutcomeVector outcomes = executor_(schedule);
    ++counts_.schedules_executed;
    nlohmann::json data = edge_json(target);
    data["purpose"] = purpose;
    data["schedule"] = schedule;
    data["outcomes"] = outcomes_json(outcomes, schedule);
    data["matches_expected"] = matches_expected(outcomes, expected_, schedule);
    events_.push_back({ValidationEventKind::ScheduleRun, std::move(data)});
    return outcomes;
  }

  // The next target in source-first order that can act now. Targets whose
  // prerequisite is still reachable through a path holding CANDIDATE edges
  // are deferred: that path is unsettled and will either break (making the
  // target invertible) or harden into manifest edges (making the target
  // implied). A target reachable through MANIFEST edges alone is implied
  // already and is resolved without execution.
  enum class Action { Execute, ImpliedManifest };

  std::pair<EdgeKey, Action> select_target() const {
    if (pending_.empty()) throw EmptyWorklist();
    for (const EdgeKey& key : pending_) {
      const std::string& dependent = graph_.tests()[key.first - 1];
      const std::string& prerequisite = graph_.tests()[key.second - 1];
      const Edge& edge = graph_.edge(dependent, prerequisite);
      auto reach_all = graph_.transitive_prerequisites(dependent, &edge, false);
      if (std::find(reach_all.begin(), reach_all.end(), prerequisite) == reach_all.end())
        return {key, Action::Execute};
      auto reach_manifest = graph_.transitive_prerequisites(dependent, &edge, true);
      if (std::find(reach_manifest.begin(), reach_manifest.end(), prerequisite) !=
          reach_manifest.end())
        return {key, Action::ImpliedManifest};
    }
    // Unreachable: a fully blocked worklist would need a candidate blocking
    // path whose edges sort strictly later than the earliest blocked target.
    throw Error("internal: every pending target is blocked");
  }

  void mark_manifest(Edge& edge, const char* via) {
    edge.status = EdgeStatus::Manifest;
    edge.via_transitivity = std::string(via) == "transitivity";
    edge.via_exhaustion = std::string(via) == "exhaustion";
    if (edge.via_transitivity) ++counts_.via_transitivity;
    if (edge.via_exhaustion) ++counts_.via_exhaustion;
    nlohmann::json data = edge_json(edge);
    data["via"] = via;
    events_.push_back({ValidationEventKind::MarkManifest, std::move(data)});
  }

  void mark_removed(Edge& edge) {
    edge.status = EdgeStatus::Removed;
    ++counts_.removed;
    events_.push_back({ValidationEventKind::MarkRemoved, edge_json(edge)});
  }

  void add_recovered_edge(const std::string& dependent, const std::string& prerequisite,
                          EdgeOrigin origin, const std::string& failed_test) {
    Edge& edge = graph_.add_edge(dependent, prerequisite, {}, origin);
    pending_.insert({graph_.order_of(dependent), graph_.order_of(prerequisite)});
    nlohmann::json data = edge_json(edge);
    data["origin"] = to_string(origin);
    data["failed_test"] = failed_test;
    events_.push_back({ValidationEventKind::RecoveredEdge, std::move(data)});
  }

  void validate_pending() {
    while (!pending_.empty()) {
      auto [key, action] = select_target();
      Edge& target = edge_of(key);
      events_.push_back({ValidationEventKind::Selected, edge_json(target)});
      spend_step();

      if (action == Action::ImpliedManifest) {
        mark_manifest(target, "transitivity");
        pending_.erase(key);
        continue;
      }

      Schedule inverted = inversion_schedule(graph_, target);
      OutcomeVector out = run_schedule(target, "inversion", inverted);
      if (matches_expected(out, expected_, inverted)) {
        mark_removed(target);
        pending_.erase(key);
        continue;
      }

      Schedule honored = no_inversion_schedule(graph_, target);
      OutcomeVector out2 = run_schedule(target, "no_inversion", honored);
      if (matches_expected(out2, expected_, honored)) {
        mark_manifest(target, "execution");
        pending_.erase(key);
        continue;
      }

      // Both schedules fail: the graph lacks edges. Hand the first failing
      // test candidates to every earlier test the schedule skipped; the
      // target stays pending until its context stabilizes.
      const std::string* failed = nullptr;
      for (const std::string& test : honored)
        if (out2.of(test) != expected_.of(test)) {
          failed = &test;
          break;
        }
      std::set<std::string> in_schedule(honored.begin(), honored.end());
      std::vector<std::string> candidates;
      for (const std::string& test : graph_.tests()) {
        if (test == *failed) break;
        if (in_schedule.count(test) != 0) continue;
        if (graph_.has_edge(*failed, test)) continue;  // any status: never re-add
        candidates.push_back(test);
      }
      if (candidates.empty()) {
        // Nothing left to recover; keeping the edge is sound, it only
        // constrains ordering, and it guarantees the loop advances.
        mark_manifest(target, "exhaustion");
        pending_.erase(key);
        continue;
      }
      for (const std::string& test : candidates)
        add_recovered_edge(*failed, test, EdgeOrigin::Recovered, *failed);
    }
  }

  void disconnected_run(const std::string& test, const char* kind, const Schedule& schedule,
                        std::vector<std::pair<std::string, OutcomeVector>>& failures) {
    spend_step();
    OutcomeVector out = executor_(schedule);
    ++counts_.schedules_executed;
    nlohmann::json data{{"test", test}, {"probe", kind}, {"schedule", schedule}};
    data["outcomes"] = outcomes_json(out, schedule);
    events_.push_back({ValidationEventKind::DisconnectedRun, std::move(data)});
    for (const std::string& t : schedule)
      if (out.of(t) == Outcome::Fail) failures.emplace_back(t, out);
  }

  // Probes tests the validated graph treats as independent: isolated tests
  // and tests with no prerequisites (the first test always has none and is
  // skipped unless isolated). Failures connect the failing test to every
  // earlier test, and the new candidates re-enter validation.
  bool recover_disconnected() {
    bool changed = false;
    const auto& tests = graph_.tests();
    for (std::size_t i = 0; i < tests.size(); ++i) {
      const std::string& test = tests[i];
      bool no_prerequisites = graph_.outgoing(test).empty();
      bool isolated = no_prerequisites && graph_.incoming(test).empty();
      if (!isolated && !(no_prerequisites && i != 0)) continue;

      std::vector<std::pair<std::string, OutcomeVector>> failures;
      disconnected_run(test, "isolation", {test}, failures);
      if (failures.empty() && !isolated) {
        ScheduleSet set = detail::derive_manifest_schedules(graph_, manifest_);
        for (const Schedule& schedule : set.schedules) {
          if (std::find(schedule.begin(), schedule.end(), test) == schedule.end()) continue;
          disconnected_run(test, "schedule", schedule, failures);
        }
      }
      for (const auto& [failed, outcomes] : failures) {
        for (const std::string& earlier : tests) {
          if (earlier == failed) break;
          if (graph_.has_edge(failed, earlier)) continue;
          add_recovered_edge(failed, earlier, EdgeOrigin::RecoveredDisconnected, failed);
          changed = true;
        }
      }
    }
    return changed;
  }

  const TestSuite& suite_;
  const AppManifest& manifest_;
  DependencyGraph graph_;
  std::size_t budget_;
  ScheduleExecutor executor_;
  OutcomeVector expected_;
  std::set<EdgeKey, detail::SourceFirst> pending_;
  std::vector<ValidationEvent> events_;
  ValidationCounts counts_;
};

inline ValidationResult run_full_validation(const TestSuite& suite,
                                            const AppManifest& manifest,
                                            const DependencyGraph& graph,
                                            ValidationOptions options = {}) {
  return Validator(suite, manifest, graph, std::move(options)).run();
}

// Rebuilds the final graph from the initial one by replaying the event log.
inline DependencyGraph replay_events(const DependencyGraph& initial,
                                     const std::vector<ValidationEvent>& events) {
  DependencyGraph graph = initial;
  for (const ValidationEvent& event : events) {
    switch (event.kind) {
      case ValidationEventKind::RecoveredEdge: {
        EdgeOrigin origin = event.data.at("origin").get<std::string>() == "recovered"
                                ? EdgeOrigin::Recovered
                                : EdgeOrigin::RecoveredDisconnected;
        graph.add_edge(event.data.at("dependent").get<std::string>(),
                       event.data.at("prerequisite").get<std::string>(), {}, origin);
        break;
      }
      case ValidationEventKind::MarkManifest: {
        Edge& edge = graph.edge(event.data.at("dependent").get<std::string>(),
                                event.data.at("prerequisite").get<std::string>());
        edge.status = EdgeStatus::Manifest;
        std::string via = event.data.at("via").get<std::string>();
        edge.via_transitivity = via == "transitivity";
        edge.via_exhaustion = via == "exhaustion";
        break;
      }
      case ValidationEventKind::MarkRemoved: {
        Edge& edge = graph.edge(event.data.at("dependent").get<std::string>(),
                                event.data.at("prerequisite").get<std::string>());
        edge.status = EdgeStatus::Removed;
        break;
      }
      default:
        break;
    }
  }
  return graph;
}

}  // namespace testdep
