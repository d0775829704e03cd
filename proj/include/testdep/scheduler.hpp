#pragma once

// Derives one independent schedule per sink test of a validated graph and
// scores the result against the original serial run.

#include <future>
#include <string>
#include <vector>

#include <json.hpp>

#include "testdep/errors.hpp"
#include "testdep/graph.hpp"
#include "testdep/simulator.hpp"

namespace testdep {

struct ScheduleSet {
  std::vector<Schedule> schedules;
  std::vector<double> runtimes;  // parallel to schedules
  double original_runtime = 0.0;
};

namespace detail {

// Sink = no manifest edge points at it, i.e. nothing depends on it. Every
// sink becomes one schedule: its transitive manifest prerequisites plus the
// sink, in original order. Isolated tests come out as singletons.
inline ScheduleSet derive_manifest_schedules(const DependencyGraph& graph,
                                             const AppManifest& manifest) {
  ScheduleSet set;
  for (const std::string& test : graph.tests())
    set.original_runtime += manifest.runtime_cost(test);

  std::set<std::string> depended_on;
  for (const Edge* edge : graph.edges())
    if (edge->status == EdgeStatus::Manifest) depended_on.insert(edge->prerequisite);

  for (const std::string& sink : graph.tests()) {
    if (depended_on.count(sink) != 0) continue;
    Schedule schedule = graph.transitive_prerequisites(sink, nullptr, /*manifest_only=*/true);
    schedule.push_back(sink);
    set.runtimes.push_back(schedule_runtime(manifest, schedule));
    set.schedules.push_back(std::move(schedule));
  }
  return set;
}

}  // namespace detail

inline ScheduleSet derive_schedules(const DependencyGraph& graph, const AppManifest& manifest) {
  for (const Edge* edge : graph.edges())
    if (edge->status == EdgeStatus::Candidate)
      throw GraphNotValidated(edge->dependent, edge->prerequisite);
  return detail::derive_manifest_schedules(graph, manifest);
}

struct SpeedupMetrics {
  double worst_case = 0.0;  // original / slowest schedule
  double average = 0.0;     // original / mean schedule runtime
};

inline SpeedupMetrics speedup_metrics(const ScheduleSet& set) {
  if (set.schedules.empty()) throw EmptyScheduleSet();
  double worst = 0.0;
  double total = 0.0;
  for (double r : set.runtimes) {
    worst = std::max(worst, r);
    total += r;
  }
  double mean = total / static_cast<double>(set.runtimes.size());
  return {set.original_runtime / worst, set.original_runtime / mean};
}

// Runs every schedule against a fresh simulator state, concurrently; any
// failing test disproves the graph the schedules came from.
inline std::vector<OutcomeVector> run_parallel(const ScheduleSet& set, const TestSuite& suite,
                                               const AppManifest& manifest) {
  std::vector<std::future<OutcomeVector>> futures;
  futures.reserve(set.schedules.size());
  for (const Schedule& schedule : set.schedules)
    futures.push_back(std::async(std::launch::async, [&suite, &manifest, &schedule] {
      return execute_schedule(suite, manifest, schedule);
    }));

  std::vector<OutcomeVector> results;
  results.reserve(futures.size());
  for (auto& f : futures) results.push_back(f.get());

  for (std::size_t i = 0; i < results.size(); ++i)
    for (const std::string& test : set.schedules[i])
      if (results[i].of(test) != Outcome::Pass) throw SoundnessViolation(i, test);
  return results;
}

inline nlohmann::json schedule_set_to_json(const ScheduleSet& set) {
  nlohmann::json schedules = nlohmann::json::array();
  for (std::size_t i = 0; i < set.schedules.size(); ++i)
    schedules.push_back({{"tests", set.schedules[i]}, {"runtime", set.runtimes[i]}});
  return nlohmann::json{{"original_runtime", set.original_runtime},
                        {"schedules", std::move(schedules)}};
}

inline nlohmann::json metrics_to_json(const ScheduleSet& set) {
  SpeedupMetrics m = speedup_metrics(set);
  double worst_runtime = 0.0;
  double total = 0.0;
  for (double r : set.runtimes) {
    worst_runtime = std::max(worst_runtime, r);
    total += r;
  }
  return nlohmann::json{
      {"original_runtime", set.original_runtime},
      {"schedule_count", set.schedules.size()},
      {"worst_runtime", worst_runtime},
      {"average_runtime", total / static_cast<double>(set.runtimes.size())},
      {"worst_case_speedup", m.worst_case},
      {"average_speedup", m.average}};
}

}  // namespace testdep
