#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "testdep/filtering.hpp"
#include "testdep/scheduler.hpp"
#include "testdep/validator.hpp"

using namespace testdep;

namespace {

DependencyGraph validated_webapp_graph(const TestSuite& suite,
                                       const AppManifest& manifest) {
  DependencyGraph graph = extract_sub_use(suite, manifest);
  StringFrequencyReport report = rank_string_values(graph, suite);
  filter_dependency_free(graph, report, {"admin"});
  return run_full_validation(suite, manifest, graph).graph;
}

}  // namespace

TEST(DeriveSchedules, OneSchedulePerSink) {
  TestSuite suite = fixtures::webapp_suite();
  AppManifest manifest = fixtures::webapp_manifest();
  DependencyGraph graph = validated_webapp_graph(suite, manifest);

  ScheduleSet set = derive_schedules(graph, manifest);
  std::vector<Schedule> expected{
      {"addUserTest", "searchUserTest"},
      {"addUserTest", "loginUserTest"},
      {"addCourseTest", "searchCourseTest"},
      {"addUserTest", "addCourseTest", "enrolUserTest"},
  };
  EXPECT_EQ(set.schedules, expected);
  EXPECT_DOUBLE_EQ(set.original_runtime, 6.0);
  EXPECT_EQ(set.runtimes, (std::vector<double>{2.0, 2.0, 2.0, 3.0}));
}

TEST(DeriveSchedules, RefusesCandidateEdges) {
  TestSuite suite = fixtures::webapp_suite();
  AppManifest manifest = fixtures::webapp_manifest();
  DependencyGraph graph = extract_sub_use(suite, manifest);
  EXPECT_THROW(derive_schedules(graph, manifest), GraphNotValidated);
}

TEST(DeriveSchedules, IsolatedTestBecomesSingleton) {
  TestSuite suite = parse_suite(
      "TEST addItemTest\n"
      "  sendKeys id=item \"item001\"\n"
      "TEST standaloneTest\n"
      "  click id=page\n");
  AppManifest manifest = parse_manifest(R"({"actions": ["click", "sendKeys"]})");
  DependencyGraph graph(suite);
  ScheduleSet set = derive_schedules(graph, manifest);
  EXPECT_EQ(set.schedules,
            (std::vector<Schedule>{{"addItemTest"}, {"standaloneTest"}}));
}

TEST(DeriveSchedules, SchedulesAreOriginalOrderSubsequences) {
  TestSuite suite = fixtures::webapp_suite();
  AppManifest manifest = fixtures::webapp_manifest();
  DependencyGraph graph = validated_webapp_graph(suite, manifest);
  ScheduleSet set = derive_schedules(graph, manifest);
  for (const Schedule& schedule : set.schedules) {
    std::vector<std::size_t> positions;
    for (const std::string& test : schedule)
      positions.push_back(graph.order_of(test));
    EXPECT_TRUE(std::is_sorted(positions.begin(), positions.end()));
  }
}

TEST(SpeedupMetrics, WorstAndAverageAgainstOriginal) {
  ScheduleSet set;
  set.original_runtime = 6.0;
  set.schedules = {{"a"}, {"b"}, {"c"}, {"d"}};
  set.runtimes = {2.0, 2.0, 2.0, 3.0};
  SpeedupMetrics metrics = speedup_metrics(set);
  EXPECT_DOUBLE_EQ(metrics.worst_case, 2.0);
  EXPECT_DOUBLE_EQ(metrics.average, 6.0 / 2.25);

  ScheduleSet empty;
  EXPECT_THROW(speedup_metrics(empty), EmptyScheduleSet);
}

TEST(SpeedupMetrics, IdentityWhenOneScheduleCoversEverything) {
  ScheduleSet set;
  set.original_runtime = 1.0;
  set.schedules = {{"onlyTest"}};
  set.runtimes = {1.0};
  SpeedupMetrics metrics = speedup_metrics(set);
  EXPECT_DOUBLE_EQ(metrics.worst_case, 1.0);
  EXPECT_DOUBLE_EQ(metrics.average, 1.0);
}

TEST(SpeedupMetrics, RuntimeCostsWeightTheRatios) {
  TestSuite suite = fixtures::webapp_suite();
  AppManifest base = fixtures::webapp_manifest();
  DependencyGraph graph = validated_webapp_graph(suite, base);

  AppManifest costed = base;
  costed.runtime_costs = {{"addUserTest", 4.0}, {"enrolUserTest", 2.0}};
  ScheduleSet set = derive_schedules(graph, costed);
  EXPECT_DOUBLE_EQ(set.original_runtime, 10.0);
  EXPECT_EQ(set.runtimes, (std::vector<double>{5.0, 5.0, 2.0, 7.0}));
  SpeedupMetrics metrics = speedup_metrics(set);
  EXPECT_DOUBLE_EQ(metrics.worst_case, 10.0 / 7.0);
  EXPECT_DOUBLE_EQ(metrics.average, 10.0 / 4.75);
}

TEST(RunParallel, AllSchedulesPassOnValidatedGraph) {
  TestSuite suite = fixtures::webapp_suite();
  AppManifest manifest = fixtures::webapp_manifest();
  DependencyGraph graph = validated_webapp_graph(suite, manifest);
  ScheduleSet set = derive_schedules(graph, manifest);

  std::vector<OutcomeVector> results = run_parallel(set, suite, manifest);
  ASSERT_EQ(results.size(), set.schedules.size());
  for (std::size_t i = 0; i < results.size(); ++i)
    for (const std::string& test : set.schedules[i])
      EXPECT_EQ(results[i].of(test), Outcome::Pass);
}

TEST(RunParallel, BrokenScheduleRaisesSoundnessViolation) {
  TestSuite suite = fixtures::webapp_suite();
  AppManifest manifest = fixtures::webapp_manifest();
  ScheduleSet set;
  set.original_runtime = 6.0;
  set.schedules = {{"addUserTest"}, {"searchCourseTest"}};
  set.runtimes = {1.0, 1.0};
  try {
    run_parallel(set, suite, manifest);
    FAIL() << "expected SoundnessViolation";
  } catch (const SoundnessViolation& e) {
    EXPECT_EQ(e.schedule_index(), 1u);
    EXPECT_EQ(e.test(), "searchCourseTest");
  }
}

TEST(ScheduleJson, SetAndMetricsSerialize) {
  ScheduleSet set;
  set.original_runtime = 6.0;
  set.schedules = {{"addUserTest", "searchUserTest"}};
  set.runtimes = {2.0};
  nlohmann::json doc = schedule_set_to_json(set);
  EXPECT_DOUBLE_EQ(doc["original_runtime"].get<double>(), 6.0);
  EXPECT_EQ(doc["schedules"][0]["tests"],
            nlohmann::json({"addUserTest", "searchUserTest"}));

  nlohmann::json metrics = metrics_to_json(set);
  EXPECT_DOUBLE_EQ(metrics["worst_case_speedup"].get<double>(), 3.0);
  EXPECT_EQ(metrics["schedule_count"], 1);
}
