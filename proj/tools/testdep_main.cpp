// Command-line front end. Subcommands mirror the pipeline stages so each
// artifact can be produced or inspected on its own; `pipeline` runs all of
// them and writes the full artifact set into a directory.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "testdep/testdep.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw testdep::Error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw testdep::Error("cannot write " + path);
  out << content;
}

testdep::TestSuite load_suite(const std::string& path, const testdep::ActionCatalog* catalog) {
  std::string text = read_file(path);
  if (std::filesystem::path(path).extension() == ".java")
    return testdep::import_java_like(text);
  return testdep::parse_suite(text, catalog);
}

struct CommonArgs {
  std::string suite_path;
  std::string manifest_path;
  std::string graph_path;
  std::string out_path = "-";
};

struct FilterArgs {
  std::vector<std::string> filters;
  std::vector<std::string> assume_yes;
  std::vector<std::string> assume_no;
  bool no_auto = false;
  bool include_locators = false;
  std::string dobj_mode = "first-noun";
  std::string lexicon_path;
  std::string taxonomy_path;
};

void add_filter_flags(CLI::App* cmd, FilterArgs& args) {
  cmd->add_option("--filter", args.filters,
                  "Filter to apply, in order (dep-free, nlp-verb, nlp-dobj, nlp-noun)")
      ->check(CLI::IsMember({"dep-free", "nlp-verb", "nlp-dobj", "nlp-noun"}));
  cmd->add_option("--assume-yes", args.assume_yes,
                  "Treat these values as dependency-free without asking ('*' for all asked)");
  cmd->add_option("--assume-no", args.assume_no,
                  "Keep these values without asking ('*' for all asked)");
  cmd->add_flag("--no-auto", args.no_auto,
                "Do not auto-confirm values present in every test");
  cmd->add_flag("--include-locators", args.include_locators,
                "Count locators as used values during extraction and ranking");
  cmd->add_option("--dobj-mode", args.dobj_mode, "Direct object pick within a noun run")
      ->check(CLI::IsMember({"first-noun", "compound-last"}));
  cmd->add_option("--lexicon", args.lexicon_path, "Part-of-speech lexicon file")
      ->envname("TESTDEP_LEXICON");
  cmd->add_option("--taxonomy", args.taxonomy_path, "Verb taxonomy file")
      ->envname("TESTDEP_TAXONOMY");
}

std::vector<testdep::FilterMode> parse_filters(const std::vector<std::string>& names) {
  std::vector<testdep::FilterMode> modes;
  int nlp_count = 0;
  for (const std::string& name : names) {
    if (name == "dep-free") {
      modes.push_back(testdep::FilterMode::DepFree);
      continue;
    }
    ++nlp_count;
    if (name == "nlp-verb") modes.push_back(testdep::FilterMode::NlpVerb);
    else if (name == "nlp-dobj") modes.push_back(testdep::FilterMode::NlpDobj);
    else modes.push_back(testdep::FilterMode::NlpNoun);
  }
  if (nlp_count > 1)
    throw testdep::Error("at most one nlp-* filter may be applied");
  return modes;
}

testdep::RunConfig build_config(const CommonArgs& common, const FilterArgs& filters,
                                std::size_t budget) {
  testdep::RunConfig config;
  config.suite_name = std::filesystem::path(common.suite_path).stem().string();
  config.filters = parse_filters(filters.filters);
  config.assume_yes.insert(filters.assume_yes.begin(), filters.assume_yes.end());
  config.assume_no.insert(filters.assume_no.begin(), filters.assume_no.end());
  for (const std::string& v : config.assume_yes)
    if (config.assume_no.count(v) != 0)
      throw testdep::Error("value in both --assume-yes and --assume-no: " + v);
  config.auto_ubiquitous = !filters.no_auto;
  config.include_locators = filters.include_locators;
  config.dobj_mode = filters.dobj_mode == "first-noun"
                         ? testdep::DobjMode::FirstNoun
                         : testdep::DobjMode::LastNounOfLeadingCompound;
  if (!filters.lexicon_path.empty()) config.lexicon_text = read_file(filters.lexicon_path);
  if (!filters.taxonomy_path.empty()) config.taxonomy_text = read_file(filters.taxonomy_path);
  config.budget = budget;
  if (isatty(fileno(stdin)) != 0) {
    config.prompt = [](const testdep::FrequencyEntry& entry) {
      std::cerr << "Is \"" << entry.value << "\" (used by " << entry.test_count
                << " tests) dependency-free? [y/N] " << std::flush;
      std::string answer;
      std::getline(std::cin, answer);
      return !answer.empty() && (answer[0] == 'y' || answer[0] == 'Y');
    };
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detects and validates state dependencies between end-to-end web tests"};
  app.require_subcommand(1);

  CommonArgs common;
  FilterArgs filter_args;
  std::string format = "json";
  std::string extraction = "string-analysis";
  std::string events_path;
  std::string dot_path;
  std::string metrics_path;
  std::string report_path;
  std::size_t budget = 0;
  bool run_schedules = false;

  CLI::App* extract = app.add_subcommand("extract", "Extract candidate dependency edges");
  extract->add_option("--suite", common.suite_path, "Test suite file")->required();
  extract->add_option("--manifest", common.manifest_path, "Application manifest");
  extract->add_option("--extract", extraction, "Extraction mode")
      ->check(CLI::IsMember({"original-order", "string-analysis"}));
  extract->add_flag("--include-locators", filter_args.include_locators,
                    "Count locators as used values");
  extract->add_option("--out", common.out_path, "Output path ('-' for stdout)");
  extract->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "dot"}));

  CLI::App* filter = app.add_subcommand("filter", "Filter candidate edges");
  filter->add_option("--suite", common.suite_path, "Test suite file")->required();
  filter->add_option("--graph", common.graph_path, "Candidate graph JSON")->required();
  filter->add_option("--out", common.out_path, "Filtered graph output");
  filter->add_option("--report", report_path, "Filter report output");
  add_filter_flags(filter, filter_args);

  CLI::App* validate = app.add_subcommand("validate", "Validate candidate edges by execution");
  validate->add_option("--suite", common.suite_path, "Test suite file")->required();
  validate->add_option("--manifest", common.manifest_path, "Application manifest")->required();
  validate->add_option("--graph", common.graph_path, "Candidate graph JSON")->required();
  validate->add_option("--out", common.out_path, "Validated graph output");
  validate->add_option("--events", events_path, "Event log output (JSON lines)");
  validate->add_option("--dot", dot_path, "DOT view of the validated graph");
  validate->add_option("--budget", budget, "Schedule step budget (0 = 4n^2)");

  CLI::App* schedule = app.add_subcommand("schedule", "Derive parallel schedules");
  schedule->add_option("--suite", common.suite_path, "Test suite file")->required();
  schedule->add_option("--manifest", common.manifest_path, "Application manifest")->required();
  schedule->add_option("--graph", common.graph_path, "Validated graph JSON")->required();
  schedule->add_option("--out", common.out_path, "Schedule set output");
  schedule->add_option("--metrics", metrics_path, "Speedup metrics output");
  schedule->add_flag("--run", run_schedules, "Execute every schedule in parallel");

  CLI::App* pipeline = app.add_subcommand("pipeline", "Run extraction through scheduling");
  pipeline->add_option("--suite", common.suite_path, "Test suite file")->required();
  pipeline->add_option("--manifest", common.manifest_path, "Application manifest")->required();
  pipeline->add_option("--out", common.out_path, "Artifact directory")->required();
  pipeline->add_option("--extract", extraction, "Extraction mode")
      ->check(CLI::IsMember({"original-order", "string-analysis"}));
  pipeline->add_option("--budget", budget, "Schedule step budget (0 = 4n^2)");
  std::size_t seed = 0;
  pipeline->add_option("--seed", seed, "Run seed recorded in the summary");
  add_filter_flags(pipeline, filter_args);

  CLI::App* report = app.add_subcommand("report", "Render a run summary as a table");
  report->add_option("--summary", common.graph_path, "summary.json from a pipeline run")
      ->required();

  try {
    app.parse(argc, argv);

    if (extract->parsed()) {
      testdep::AppManifest manifest;
      if (!common.manifest_path.empty())
        manifest = testdep::parse_manifest(read_file(common.manifest_path));
      testdep::TestSuite suite = load_suite(
          common.suite_path, common.manifest_path.empty() ? nullptr : &manifest.catalog);
      testdep::DependencyGraph graph(std::vector<std::string>{});
      if (extraction == "original-order") {
        graph = testdep::extract_original_order(suite);
      } else {
        if (common.manifest_path.empty())
          throw testdep::Error("string-analysis extraction needs --manifest");
        graph = testdep::extract_sub_use(suite, manifest, filter_args.include_locators);
      }
      write_file(common.out_path, format == "dot" ? testdep::export_graph_dot(graph)
                                                  : testdep::export_graph_json(graph));
    } else if (filter->parsed()) {
      testdep::TestSuite suite = load_suite(common.suite_path, nullptr);
      testdep::DependencyGraph graph =
          testdep::import_graph_json(read_file(common.graph_path));
      testdep::RunConfig config = build_config(common, filter_args, 0);

      nlohmann::json filter_report{{"filters", filter_args.filters}};
      std::vector<testdep::FilterRemoval> removals;
      for (testdep::FilterMode mode : config.filters) {
        if (mode == testdep::FilterMode::DepFree) {
          auto freq = testdep::rank_string_values(graph, suite, config.include_locators);
          auto confirmed = testdep::confirm_dependency_free(
              freq, config.assume_yes, config.assume_no, config.auto_ubiquitous,
              config.prompt);
          auto removed =
              testdep::filter_dependency_free(graph, freq, confirmed, config.auto_ubiquitous);
          removals.insert(removals.end(), removed.begin(), removed.end());
          filter_report["frequency"] = testdep::frequency_report_to_json(freq);
          filter_report["confirmed"] = confirmed;
          continue;
        }
        auto lexicon = testdep::parse_lexicon(config.lexicon_text.empty()
                                                  ? testdep::builtin::kLexicon
                                                  : config.lexicon_text);
        auto taxonomy = testdep::parse_taxonomy(config.taxonomy_text.empty()
                                                    ? testdep::builtin::kTaxonomy
                                                    : config.taxonomy_text);
        testdep::NlpConfig nlp = mode == testdep::FilterMode::NlpVerb
                                     ? testdep::NlpConfig::Verb
                                 : mode == testdep::FilterMode::NlpDobj
                                     ? testdep::NlpConfig::Dobj
                                     : testdep::NlpConfig::Noun;
        auto removed =
            testdep::filter_nlp(graph, suite, nlp, lexicon, taxonomy, config.dobj_mode);
        removals.insert(removals.end(), removed.begin(), removed.end());
      }
      filter_report["removals"] = testdep::removals_to_json(removals);
      write_file(common.out_path, testdep::export_graph_json(graph));
      if (!report_path.empty()) write_file(report_path, filter_report.dump(2) + "\n");
    } else if (validate->parsed()) {
      testdep::AppManifest manifest = testdep::parse_manifest(read_file(common.manifest_path));
      testdep::TestSuite suite = load_suite(common.suite_path, &manifest.catalog);
      testdep::DependencyGraph graph =
          testdep::import_graph_json(read_file(common.graph_path));
      testdep::ValidationOptions options;
      options.budget = budget;
      testdep::ValidationResult result =
          testdep::run_full_validation(suite, manifest, graph, options);
      write_file(common.out_path, testdep::export_graph_json(result.graph));
      if (!events_path.empty())
        write_file(events_path, testdep::events_to_jsonl(result.events));
      if (!dot_path.empty()) write_file(dot_path, testdep::export_graph_dot(result.graph));
    } else if (schedule->parsed()) {
      testdep::AppManifest manifest = testdep::parse_manifest(read_file(common.manifest_path));
      testdep::TestSuite suite = load_suite(common.suite_path, &manifest.catalog);
      testdep::DependencyGraph graph =
          testdep::import_graph_json(read_file(common.graph_path));
      testdep::ScheduleSet set = testdep::derive_schedules(graph, manifest);
      write_file(common.out_path, testdep::schedule_set_to_json(set).dump(2) + "\n");
      if (!metrics_path.empty())
        write_file(metrics_path, testdep::metrics_to_json(set).dump(2) + "\n");
      if (run_schedules) testdep::run_parallel(set, suite, manifest);
    } else if (pipeline->parsed()) {
      testdep::AppManifest manifest = testdep::parse_manifest(read_file(common.manifest_path));
      testdep::TestSuite suite = load_suite(common.suite_path, &manifest.catalog);
      testdep::RunConfig config = build_config(common, filter_args, budget);
      config.extraction = extraction == "original-order"
                              ? testdep::ExtractionMode::OriginalOrder
                              : testdep::ExtractionMode::StringAnalysis;
      config.seed = seed;
      testdep::PipelineResult result = testdep::run_pipeline(suite, manifest, config);
      testdep::write_pipeline_artifacts(result, common.out_path);
      std::cout << testdep::summary_to_table(result.summary);
    } else if (report->parsed()) {
      nlohmann::json doc = nlohmann::json::parse(read_file(common.graph_path));
      testdep::RunSummary s;
      s.suite_name = doc.value("suite", "");
      s.test_count = doc.value("tests", 0u);
      s.extraction = doc.value("extraction", "");
      s.filters = doc.value("filters", std::vector<std::string>{});
      s.extracted = doc.value("extracted", 0u);
      s.filtered = doc.value("filtered", 0u);
      s.to_validate = doc.value("to_validate", 0u);
      s.false_candidates = doc.value("false", 0u);
      s.validated = doc.value("validated", 0u);
      s.recovered = doc.value("recovered", 0u);
      s.recovered_disconnected = doc.value("recovered_disconnected", 0u);
      s.manifest_total = doc.value("manifest_total", 0u);
      s.schedules_executed = doc.value("schedules_executed", 0u);
      s.worst_case_speedup = doc.value("worst_case_speedup", 0.0);
      s.average_speedup = doc.value("average_speedup", 0.0);
      std::cout << testdep::summary_to_table(s);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const testdep::SoundnessViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
