#include <gtest/gtest.h>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "testdep/builtin_data.hpp"
#include "testdep/nlp.hpp"

using namespace testdep;

namespace {

// Separate Wu-Palmer implementation used as an oracle: parse the parent map
// on its own, walk explicit ancestor chains, and pick the deepest shared
// node.
struct TaxonomyOracle {
  std::map<std::string, std::string> parent;

  explicit TaxonomyOracle(const std::string& source) {
    std::istringstream in(source);
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string child, par;
      if (!(ls >> child) || child[0] == '#' || child == "group") continue;
      ls >> par;
      parent[child] = par == "-" ? "" : par;
    }
  }

  std::vector<std::string> chain(const std::string& node) const {
    std::vector<std::string> out;
    for (std::string cur = node; !cur.empty(); cur = parent.at(cur)) out.push_back(cur);
    return out;  // node first, root last
  }

  double wup(const std::string& a, const std::string& b) const {
    std::vector<std::string> ca = chain(a);
    std::vector<std::string> cb = chain(b);
    double best = 0.0;
    for (std::size_t i = 0; i < ca.size(); ++i) {
      for (const std::string& node : cb) {
        if (node == ca[i]) {
          double lcs_depth = static_cast<double>(ca.size() - i);
          best = std::max(best, 2.0 * lcs_depth /
                                    static_cast<double>(ca.size() + cb.size()));
        }
      }
    }
    return best;
  }
};

const char* kTinyTaxonomy =
    "act -\n"
    "transfer-info act\n"
    "cause-change act\n"
    "read transfer-info\n"
    "search transfer-info\n"
    "create cause-change\n"
    "update cause-change\n"
    "delete cause-change\n"
    "add cause-change\n"
    "group read read\n"
    "group write create update delete\n";

}  // namespace

TEST(ParseLexicon, AcceptsEntriesAndComments) {
  PosLexicon lexicon = parse_lexicon(
      "# comment\n"
      "add VERB\n"
      "User NOUN\n"
      "new ADJ\n"
      "again ADV\n"
      "\n");
  EXPECT_EQ(lexicon.size(), 4u);
  EXPECT_EQ(lexicon.lookup("add"), Pos::Verb);
  EXPECT_EQ(lexicon.lookup("ADD"), Pos::Verb);
  EXPECT_EQ(lexicon.lookup("user"), Pos::Noun);
  EXPECT_EQ(lexicon.lookup("unknownword"), Pos::Noun);
  EXPECT_FALSE(lexicon.contains("unknownword"));
}

TEST(ParseLexicon, RejectsMalformedLines) {
  EXPECT_THROW(parse_lexicon("add\n"), LexiconFormatError);
  EXPECT_THROW(parse_lexicon("add VERB extra\n"), LexiconFormatError);
  EXPECT_THROW(parse_lexicon("add PREP\n"), LexiconFormatError);
}

TEST(ParseTaxonomy, DepthsFromSingleRoot) {
  VerbTaxonomy taxonomy = parse_taxonomy(kTinyTaxonomy);
  EXPECT_EQ(taxonomy.depth("act"), 1u);
  EXPECT_EQ(taxonomy.depth("transfer-info"), 2u);
  EXPECT_EQ(taxonomy.depth("search"), 3u);
  EXPECT_EQ(taxonomy.common_ancestor("search", "read"), "transfer-info");
  EXPECT_EQ(taxonomy.common_ancestor("search", "create"), "act");
  EXPECT_EQ(taxonomy.common_ancestor("search", "search"), "search");
}

TEST(ParseTaxonomy, RejectsBadShapes) {
  EXPECT_THROW(parse_taxonomy("a -\na b\n"), TaxonomyFormatError);
  EXPECT_THROW(parse_taxonomy("a -\nb -\n"), TaxonomyFormatError);
  EXPECT_THROW(parse_taxonomy("a -\nb ghost\n"), TaxonomyFormatError);
  EXPECT_THROW(parse_taxonomy("r -\na b\nb a\n"), TaxonomyFormatError);
  EXPECT_THROW(parse_taxonomy("act -\nread act\n"), TaxonomyFormatError);
  EXPECT_THROW(parse_taxonomy(std::string(kTinyTaxonomy) + "group read create\n"),
               TaxonomyFormatError);
  EXPECT_THROW(parse_taxonomy(
                   "act -\nread act\ncreate act\nupdate act\ndelete act\n"
                   "group read read\n"),
               TaxonomyFormatError);
}

TEST(WuPalmer, ThreeLevelArithmetic) {
  VerbTaxonomy taxonomy = parse_taxonomy(kTinyTaxonomy);
  EXPECT_NEAR(taxonomy.wup("search", "read"), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(taxonomy.wup("add", "create"), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(taxonomy.wup("search", "create"), 1.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(taxonomy.wup("read", "read"), 1.0);
  EXPECT_DOUBLE_EQ(taxonomy.wup("create", "create"), 1.0);
}

TEST(WuPalmer, MatchesIndependentOracleOnBuiltinTaxonomy) {
  VerbTaxonomy taxonomy = parse_taxonomy(builtin::kTaxonomy);
  TaxonomyOracle oracle(builtin::kTaxonomy);
  std::vector<std::string> nodes;
  for (const auto& [node, parent] : oracle.parent) nodes.push_back(node);
  ASSERT_GT(nodes.size(), 40u);
  for (const std::string& a : nodes)
    for (const std::string& b : nodes)
      EXPECT_NEAR(taxonomy.wup(a, b), oracle.wup(a, b), 1e-12) << a << " / " << b;
}

TEST(ClassifyVerb, GroupWithHigherSimilarityWins) {
  VerbTaxonomy taxonomy = parse_taxonomy(kTinyTaxonomy);
  VerbClassification search = classify_verb("search", taxonomy);
  EXPECT_EQ(search.cls, RwClass::Read);
  EXPECT_NEAR(search.read_score, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(search.write_score, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(classify_verb("add", taxonomy).cls, RwClass::Write);
  EXPECT_EQ(classify_verb("read", taxonomy).cls, RwClass::Read);
  EXPECT_EQ(classify_verb("delete", taxonomy).cls, RwClass::Write);
}

TEST(ClassifyVerb, SeedVerbsScoreOneInOwnGroup) {
  VerbTaxonomy taxonomy = parse_taxonomy(builtin::kTaxonomy);
  EXPECT_DOUBLE_EQ(classify_verb("read", taxonomy).read_score, 1.0);
  for (const char* seed : {"create", "update", "delete"})
    EXPECT_DOUBLE_EQ(classify_verb(seed, taxonomy).write_score, 1.0) << seed;
}

TEST(ClassifyVerb, UnknownVerbStaysUnclassified) {
  VerbTaxonomy taxonomy = parse_taxonomy(kTinyTaxonomy);
  VerbClassification result = classify_verb("frobnicate", taxonomy);
  EXPECT_EQ(result.cls, RwClass::Unclassified);
  EXPECT_DOUBLE_EQ(result.read_score, 0.0);
  EXPECT_DOUBLE_EQ(result.write_score, 0.0);
}

TEST(TokenizeIdentifier, SplitsCaseDigitsAndUnderscores) {
  EXPECT_EQ(tokenize_identifier("addUserTest"),
            (std::vector<std::string>{"add", "User", "Test"}));
  EXPECT_EQ(tokenize_identifier("XMLParser"),
            (std::vector<std::string>{"XML", "Parser"}));
  EXPECT_EQ(tokenize_identifier("parseXMLFile"),
            (std::vector<std::string>{"parse", "XML", "File"}));
  EXPECT_EQ(tokenize_identifier("add_user_2_test"),
            (std::vector<std::string>{"add", "user", "test"}));
  EXPECT_EQ(tokenize_identifier("enrolUser2Test"),
            (std::vector<std::string>{"enrol", "User", "Test"}));
  EXPECT_EQ(tokenize_identifier("42"), std::vector<std::string>{});
}

TEST(AnalyzeName, VerbDobjAndNouns) {
  PosLexicon lexicon = parse_lexicon(builtin::kLexicon);
  VerbTaxonomy taxonomy = parse_taxonomy(builtin::kTaxonomy);

  NameAnalysis add = analyze_name("addUserTest", lexicon, taxonomy);
  EXPECT_EQ(add.tokens, (std::vector<std::string>{"add", "User"}));
  ASSERT_TRUE(add.verb.has_value());
  EXPECT_EQ(*add.verb, "add");
  EXPECT_EQ(add.rw, RwClass::Write);
  ASSERT_TRUE(add.dobj.has_value());
  EXPECT_EQ(*add.dobj, "User");
  EXPECT_EQ(add.nouns, std::set<std::string>{"User"});

  NameAnalysis search = analyze_name("searchCourseTest", lexicon, taxonomy);
  EXPECT_EQ(search.rw, RwClass::Read);
  EXPECT_EQ(*search.dobj, "Course");
}

TEST(AnalyzeName, DobjModePicksHeadOrLastOfCompound) {
  PosLexicon lexicon = parse_lexicon(
      "add VERB\n"
      "course NOUN\n"
      "event NOUN\n"
      "new ADJ\n"
      "user NOUN\n");
  VerbTaxonomy taxonomy = parse_taxonomy(kTinyTaxonomy);

  NameAnalysis first =
      analyze_name("addCourseEventTest", lexicon, taxonomy, DobjMode::FirstNoun);
  EXPECT_EQ(*first.dobj, "Course");
  NameAnalysis last = analyze_name("addCourseEventTest", lexicon, taxonomy,
                                   DobjMode::LastNounOfLeadingCompound);
  EXPECT_EQ(*last.dobj, "Event");

  NameAnalysis skip_adj =
      analyze_name("addNewUserTest", lexicon, taxonomy, DobjMode::FirstNoun);
  EXPECT_EQ(*skip_adj.dobj, "User");
  NameAnalysis skip_adj_last = analyze_name("addNewUserTest", lexicon, taxonomy,
                                            DobjMode::LastNounOfLeadingCompound);
  EXPECT_EQ(*skip_adj_last.dobj, "User");
}

TEST(AnalyzeName, NoVerbMeansUnclassifiedAndNoDobj) {
  PosLexicon lexicon = parse_lexicon(builtin::kLexicon);
  VerbTaxonomy taxonomy = parse_taxonomy(builtin::kTaxonomy);
  NameAnalysis out = analyze_name("userPageTest", lexicon, taxonomy);
  EXPECT_FALSE(out.verb.has_value());
  EXPECT_EQ(out.rw, RwClass::Unclassified);
  EXPECT_FALSE(out.dobj.has_value());
  EXPECT_EQ(out.nouns, (std::set<std::string>{"user", "Page"}));
}

TEST(BuiltinData, MatchesShippedDataFiles) {
  EXPECT_EQ(std::string(builtin::kTaxonomy),
            fixtures::read_file(fixtures::data_path("taxonomy.txt")));
  EXPECT_EQ(std::string(builtin::kLexicon),
            fixtures::read_file(fixtures::data_path("lexicon.txt")));
}
