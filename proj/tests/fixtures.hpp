#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "testdep/testdep.hpp"

namespace fixtures {

inline std::string data_path(const std::string& relative) {
  return std::string(TESTDEP_DATA_DIR) + "/" + relative;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw testdep::Error("fixture missing: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline testdep::AppManifest webapp_manifest() {
  return testdep::parse_manifest(read_file(data_path("fixtures/webapp_manifest.json")));
}

inline testdep::TestSuite webapp_suite() {
  testdep::AppManifest manifest = webapp_manifest();
  return testdep::parse_suite(read_file(data_path("fixtures/webapp_suite.txt")),
                              &manifest.catalog);
}

// The dependencies actually wired into the webapp manifest's state effects.
inline std::set<std::pair<std::string, std::string>> webapp_true_pairs() {
  return {{"searchUserTest", "addUserTest"},
          {"loginUserTest", "addUserTest"},
          {"searchCourseTest", "addCourseTest"},
          {"enrolUserTest", "addUserTest"},
          {"enrolUserTest", "addCourseTest"}};
}

struct TraceFixture {
  testdep::TestSuite suite;
  testdep::AppManifest manifest;
  testdep::DependencyGraph graph;
};

inline TraceFixture load_trace_fixture(const std::string& stem) {
  TraceFixture f;
  f.manifest = testdep::parse_manifest(read_file(data_path("fixtures/" + stem + "_manifest.json")));
  f.suite = testdep::parse_suite(read_file(data_path("fixtures/" + stem + "_suite.txt")),
                                 &f.manifest.catalog);
  f.graph = testdep::import_graph_json(read_file(data_path("fixtures/" + stem + "_graph.json")));
  return f;
}

}  // namespace fixtures
