#pragma once

// Deterministic manifest-driven executor. State is a flat map from entity
// key to the value last written. A test fails at its first read or delete of
// an absent key; execution of that test stops there, its earlier mutations
// stay, and the schedule continues with the next test (fail-soft).

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "testdep/errors.hpp"
#include "testdep/manifest.hpp"
#include "testdep/suite.hpp"

namespace testdep {

using SimState = std::map<std::string, std::string>;
using Schedule = std::vector<std::string>;  // test names, execution order

enum class Outcome { Pass, Fail, NotExecuted };

inline const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::NotExecuted: return "not_executed";
  }
  return "?";
}

// One entry per suite test, including the ones the schedule left out.
struct OutcomeVector {
  std::map<std::string, Outcome> outcomes;

  Outcome of(const std::string& test) const {
    auto it = outcomes.find(test);
    return it == outcomes.end() ? Outcome::NotExecuted : it->second;
  }

  bool all_executed_pass(const Schedule& schedule) const {
    for (const std::string& test : schedule)
      if (of(test) != Outcome::Pass) return false;
    return true;
  }

  bool operator==(const OutcomeVector&) const = default;
};

// Restricted comparison: tests outside the schedule are ignored.
inline bool matches_expected(const OutcomeVector& actual, const OutcomeVector& expected,
                             const Schedule& schedule) {
  for (const std::string& test : schedule)
    if (actual.of(test) != expected.of(test)) return false;
  return true;
}

// One line per statement when a sink is attached.
using TraceSink = std::function<void(const std::string& line)>;

inline TraceSink trace_to_stream(std::ostream& out) {
  return [&out](const std::string& line) { out << line << '\n'; };
}

inline OutcomeVector execute_schedule(const TestSuite& suite, const AppManifest& manifest,
                                      const Schedule& schedule,
                                      const TraceSink& trace = nullptr) {
  for (const std::string& name : schedule)
    if (!suite.has_test(name)) throw UnknownTestName(name);

  SimState state = manifest.initial_state;
  OutcomeVector result;
  for (const TestCase& test : suite.tests())
    result.outcomes[test.name] = Outcome::NotExecuted;

  for (const std::string& name : schedule) {
    const TestCase& test = suite.test(name);
    bool failed = false;
    for (const Statement& st : test.statements) {
      const EffectRule* rule = manifest.resolve_effects(st.action, st.locator);
      if (!rule) {
        if (trace)
          trace(name + " " + st.action + " " + st.locator + " -> no effect");
        continue;
      }
      for (const Effect& effect : rule->effects) {
        std::string key = resolve_key_template(effect.key_template, st.args);
        switch (effect.kind) {
          case EffectKind::Write:
            state[key] = st.args.empty() ? "" : st.args.back();
            break;
          case EffectKind::Read:
            if (state.find(key) == state.end()) failed = true;
            break;
          case EffectKind::Delete:
            if (state.erase(key) == 0) failed = true;
            break;
        }
        if (trace)
          trace(name + " " + st.action + " " + st.locator + " -> " +
                to_string(effect.kind) + " " + key +
                (failed ? " [absent: test fails]" : ""));
        if (failed) break;
      }
      if (failed) break;
    }
    result.outcomes[name] = failed ? Outcome::Fail : Outcome::Pass;
  }
  return result;
}

// Full suite in original order. Throws BaselineFailure naming the first
// failing test, since nothing downstream is meaningful without a green run.
inline OutcomeVector baseline_outcomes(const TestSuite& suite, const AppManifest& manifest,
                                       const TraceSink& trace = nullptr) {
  Schedule all;
  for (const TestCase& test : suite.tests()) all.push_back(test.name);
  OutcomeVector result = execute_schedule(suite, manifest, all, trace);
  for (const TestCase& test : suite.tests())
    if (result.of(test.name) != Outcome::Pass) throw BaselineFailure(test.name);
  return result;
}

// Sum of per-test costs; the manifest defaults each test to 1 unit.
inline double schedule_runtime(const AppManifest& manifest, const Schedule& schedule) {
  double total = 0.0;
  for (const std::string& test : schedule) total += manifest.runtime_cost(test);
  return total;
}

}  // namespace testdep
