#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "testdep/simulator.hpp"

using namespace testdep;

TEST(ExecuteSchedule, BaselinePassesOnWebappFixture) {
  TestSuite suite = fixtures::webapp_suite();
  AppManifest manifest = fixtures::webapp_manifest();
  OutcomeVector outcomes = baseline_outcomes(suite, manifest);
  for (const TestCase& test : suite.tests())
    EXPECT_EQ(outcomes.of(test.name), Outcome::Pass) << test.name;
}

TEST(ExecuteSchedule, ReadOfAbsentKeyFails) {
  TestSuite suite = fixtures::webapp_suite();
  AppManifest manifest = fixtures::webapp_manifest();
  OutcomeVector outcomes = execute_schedule(suite, manifest, {"searchUserTest"});
  EXPECT_EQ(outcomes.of("searchUserTest"), Outcome::Fail);
  EXPECT_EQ(outcomes.of("addUserTest"), Outcome::NotExecuted);
}

TEST(ExecuteSchedule, WriteThenReadPasses) {
  TestSuite suite = fixtures::webapp_suite();
  AppManifest manifest = fixtures::webapp_manifest();
  OutcomeVector outcomes =
      execute_schedule(suite, manifest, {"addUserTest", "searchUserTest"});
  EXPECT_EQ(outcomes.of("addUserTest"), Outcome::Pass);
  EXPECT_EQ(outcomes.of("searchUserTest"), Outcome::Pass);
}

TEST(ExecuteSchedule, FailSoftKeepsEarlierMutations) {
  TestSuite suite = parse_suite(
      "TEST mixedTest\n"
      "  sendKeys id=add_item \"item001\"\n"
      "  sendKeys id=find_gone \"missing\"\n"
      "TEST readerTest\n"
      "  sendKeys id=find_item \"item001\"\n");
  AppManifest manifest = parse_manifest(R"({
    "actions": ["sendKeys"],
    "effects": [
      {"action": "sendKeys", "locator": "id=add_*", "args": 1,
       "effects": [{"op": "write", "key": "rec:{arg0}"}]},
      {"action": "sendKeys", "locator": "id=find_*", "args": 1,
       "effects": [{"op": "read", "key": "rec:{arg0}"}]}
    ]})");
  OutcomeVector outcomes = execute_schedule(suite, manifest, {"mixedTest", "readerTest"});
  EXPECT_EQ(outcomes.of("mixedTest"), Outcome::Fail);
  EXPECT_EQ(outcomes.of("readerTest"), Outcome::Pass);
}

TEST(ExecuteSchedule, DeleteOfAbsentKeyFails) {
  TestSuite suite = parse_suite(
      "TEST dropTest\n"
      "  click id=drop_item\n"
      "TEST dropAgainTest\n"
      "  click id=drop_item\n");
  AppManifest manifest = parse_manifest(R"({
    "actions": ["click"],
    "effects": [
      {"action": "click", "locator": "id=drop_item",
       "effects": [{"op": "delete", "key": "rec:item"}]}
    ],
    "initial_state": ["rec:item"]})");
  OutcomeVector outcomes =
      execute_schedule(suite, manifest, {"dropTest", "dropAgainTest"});
  EXPECT_EQ(outcomes.of("dropTest"), Outcome::Pass);
  EXPECT_EQ(outcomes.of("dropAgainTest"), Outcome::Fail);
}

TEST(ExecuteSchedule, RejectsUnknownTestName) {
  TestSuite suite = fixtures::webapp_suite();
  AppManifest manifest = fixtures::webapp_manifest();
  EXPECT_THROW(execute_schedule(suite, manifest, {"ghostTest"}), UnknownTestName);
}

TEST(BaselineOutcomes, ThrowsNamingFirstFailure) {
  TestSuite suite = parse_suite(
      "TEST brokenTest\n"
      "  sendKeys id=search_user \"nobody\"\n");
  AppManifest manifest = fixtures::webapp_manifest();
  try {
    baseline_outcomes(suite, manifest);
    FAIL() << "expected BaselineFailure";
  } catch (const BaselineFailure& e) {
    EXPECT_EQ(e.test(), "brokenTest");
  }
}

TEST(MatchesExpected, RestrictedToSchedule) {
  OutcomeVector actual;
  actual.outcomes = {{"a", Outcome::Pass}, {"b", Outcome::Fail}};
  OutcomeVector expected;
  expected.outcomes = {{"a", Outcome::Pass}, {"b", Outcome::Pass}};
  EXPECT_TRUE(matches_expected(actual, expected, {"a"}));
  EXPECT_FALSE(matches_expected(actual, expected, {"a", "b"}));
}

TEST(ScheduleRuntime, SumsCostsWithDefaults) {
  AppManifest manifest =
      parse_manifest(R"({"actions": ["click"], "runtime_costs": {"slowTest": 2.5}})");
  EXPECT_DOUBLE_EQ(schedule_runtime(manifest, {"slowTest", "otherTest"}), 3.5);
  EXPECT_DOUBLE_EQ(schedule_runtime(manifest, {}), 0.0);
}

TEST(ExecuteSchedule, TraceRecordsEffects) {
  TestSuite suite = fixtures::webapp_suite();
  AppManifest manifest = fixtures::webapp_manifest();
  std::ostringstream trace;
  execute_schedule(suite, manifest, {"addUserTest"}, trace_to_stream(trace));
  EXPECT_NE(trace.str().find("write user:user001"), std::string::npos);
  EXPECT_NE(trace.str().find("read user:admin"), std::string::npos);
}
