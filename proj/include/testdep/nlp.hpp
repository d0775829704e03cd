#pragma once

// Test-name analysis: identifier tokenization, a small part-of-speech
// lexicon, and a verb taxonomy queried with Wu-Palmer similarity to decide
// whether a test reads or writes application state.
//
// Lexicon file: one "token POS" pair per line, POS in {VERB, NOUN, ADJ, ADV}.
// Taxonomy file: "child parent" pairs ("-" parent marks the root) plus
// "group read|write verb..." membership lines.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "testdep/errors.hpp"

namespace testdep {

class LexiconFormatError : public Error {
 public:
  explicit LexiconFormatError(const std::string& message)
      : Error("lexicon: " + message) {}
};

class TaxonomyFormatError : public Error {
 public:
  explicit TaxonomyFormatError(const std::string& message)
      : Error("taxonomy: " + message) {}
};

enum class Pos { Verb, Noun, Adj, Adv };
enum class RwClass { Read, Write, Unclassified };

inline const char* to_string(RwClass cls) {
  switch (cls) {
    case RwClass::Read: return "read";
    case RwClass::Write: return "write";
    case RwClass::Unclassified: return "unclassified";
  }
  return "?";
}

namespace detail {

inline std::string lowercase(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace detail

// Unknown tokens default to NOUN, which keeps entity words like "User" or
// "Course" usable without enumerating them.
class PosLexicon {
 public:
  void add(const std::string& token, Pos pos) { entries_[detail::lowercase(token)] = pos; }

  Pos lookup(const std::string& token) const {
    auto it = entries_.find(detail::lowercase(token));
    return it == entries_.end() ? Pos::Noun : it->second;
  }

  bool contains(const std::string& token) const {
    return entries_.count(detail::lowercase(token)) != 0;
  }

  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, Pos> entries_;
};

inline PosLexicon parse_lexicon(const std::string& source) {
  PosLexicon lexicon;
  std::istringstream in(source);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string token, pos;
    if (!(ls >> token) || token[0] == '#') continue;
    if (!(ls >> pos))
      throw LexiconFormatError("line " + std::to_string(lineno) + ": expected 'token POS'");
    std::string extra;
    if (ls >> extra)
      throw LexiconFormatError("line " + std::to_string(lineno) + ": trailing content");
    if (pos == "VERB") lexicon.add(token, Pos::Verb);
    else if (pos == "NOUN") lexicon.add(token, Pos::Noun);
    else if (pos == "ADJ") lexicon.add(token, Pos::Adj);
    else if (pos == "ADV") lexicon.add(token, Pos::Adv);
    else
      throw LexiconFormatError("line " + std::to_string(lineno) + ": unknown POS '" + pos + "'");
  }
  return lexicon;
}

// Single-rooted is-a tree over verbs. Depth counts nodes from the root, so
// the root itself has depth 1.
class VerbTaxonomy {
 public:
  void add_node(const std::string& name, const std::string& parent) {
    if (parent_.count(name) != 0) throw TaxonomyFormatError("duplicate node: " + name);
    parent_[name] = parent;
  }

  void finalize() {
    std::string root;
    for (const auto& [name, parent] : parent_) {
      if (parent.empty()) {
        if (!root.empty()) throw TaxonomyFormatError("multiple roots: " + root + ", " + name);
        root = name;
      } else if (parent_.count(parent) == 0) {
        throw TaxonomyFormatError("unknown parent '" + parent + "' of '" + name + "'");
      }
    }
    if (root.empty()) throw TaxonomyFormatError("no root node");
    depth_.clear();
    for (const auto& [name, parent] : parent_) compute_depth(name);
    for (const std::string& seed : {"create", "read", "update", "delete"})
      if (parent_.count(seed) == 0)
        throw TaxonomyFormatError("missing seed verb '" + std::string(seed) + "'");
    for (const std::string& v : read_group)
      if (parent_.count(v) == 0) throw TaxonomyFormatError("read group member not a node: " + v);
    for (const std::string& v : write_group) {
      if (parent_.count(v) == 0)
        throw TaxonomyFormatError("write group member not a node: " + v);
      if (read_group.count(v) != 0)
        throw TaxonomyFormatError("groups must be disjoint; '" + v + "' is in both");
    }
    if (read_group.empty() || write_group.empty())
      throw TaxonomyFormatError("both groups need at least one member");
  }

  bool contains(const std::string& verb) const { return parent_.count(verb) != 0; }

  std::size_t depth(const std::string& node) const {
    auto it = depth_.find(node);
    if (it == depth_.end()) throw TaxonomyFormatError("unknown node: " + node);
    return it->second;
  }

  // Deepest common ancestor, exploiting the single-parent chain shape.
  std::string common_ancestor(const std::string& a, const std::string& b) const {
    std::set<std::string> chain;
    for (std::string node = a; !node.empty(); node = parent_.at(node)) chain.insert(node);
    for (std::string node = b; !node.empty(); node = parent_.at(node))
      if (chain.count(node) != 0) return node;
    throw TaxonomyFormatError("no common ancestor of " + a + " and " + b);
  }

  double wup(const std::string& a, const std::string& b) const {
    double lcs_depth = static_cast<double>(depth(common_ancestor(a, b)));
    return 2.0 * lcs_depth / (static_cast<double>(depth(a)) + static_cast<double>(depth(b)));
  }

  std::size_t node_count() const { return parent_.size(); }

  std::set<std::string> read_group;
  std::set<std::string> write_group;

 private:
  void compute_depth(const std::string& name) {
    if (depth_.count(name) != 0) return;
    std::vector<std::string> chain;
    std::string node = name;
    while (depth_.count(node) == 0) {
      chain.push_back(node);
      const std::string& parent = parent_.at(node);
      if (parent.empty()) break;
      node = parent;
      if (chain.size() > parent_.size()) throw TaxonomyFormatError("cycle at " + name);
    }
    std::size_t base = depth_.count(node) != 0 ? depth_.at(node) : 0;
    if (base == 0) {
      depth_[chain.back()] = 1;  // root
      chain.pop_back();
      base = 1;
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth_[*it] = ++base;
  }

  std::map<std::string, std::string> parent_;  // root has empty parent
  std::map<std::string, std::size_t> depth_;
};

inline VerbTaxonomy parse_taxonomy(const std::string& source) {
  VerbTaxonomy taxonomy;
  std::istringstream in(source);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    if (first == "group") {
      std::string which;
      if (!(ls >> which) || (which != "read" && which != "write"))
        throw TaxonomyFormatError("line " + std::to_string(lineno) +
                                  ": expected 'group read|write verb...'");
      auto& group = which == "read" ? taxonomy.read_group : taxonomy.write_group;
      std::string verb;
      while (ls >> verb) group.insert(verb);
      continue;
    }
    std::string parent;
    if (!(ls >> parent))
      throw TaxonomyFormatError("line " + std::to_string(lineno) + ": expected 'child parent'");
    taxonomy.add_node(first, parent == "-" ? "" : parent);
  }
  taxonomy.finalize();
  return taxonomy;
}

struct VerbClassification {
  RwClass cls = RwClass::Unclassified;
  double read_score = 0.0;
  double write_score = 0.0;
};

// Scores the verb against both groups with Wu-Palmer similarity; the higher
// side wins, ties and unknown verbs stay unclassified.
inline VerbClassification classify_verb(const std::string& verb, const VerbTaxonomy& taxonomy) {
  VerbClassification result;
  if (!taxonomy.contains(verb)) return result;
  for (const std::string& g : taxonomy.read_group)
    result.read_score = std::max(result.read_score, taxonomy.wup(verb, g));
  for (const std::string& g : taxonomy.write_group)
    result.write_score = std::max(result.write_score, taxonomy.wup(verb, g));
  if (result.read_score > result.write_score) result.cls = RwClass::Read;
  else if (result.write_score > result.read_score) result.cls = RwClass::Write;
  return result;
}

// Splits an identifier on case boundaries, digits, and underscores.
// "addUserTest" -> {add, User, Test}; "XMLParser" -> {XML, Parser}.
inline std::vector<std::string> tokenize_identifier(const std::string& name) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(name[i]);
    if (!std::isalpha(c)) {
      flush();  // digits and underscores separate, and are dropped
      continue;
    }
    if (std::isupper(c)) {
      bool prev_lower = !current.empty() &&
                        std::islower(static_cast<unsigned char>(current.back()));
      bool next_lower = i + 1 < name.size() &&
                        std::islower(static_cast<unsigned char>(name[i + 1]));
      bool prev_upper = !current.empty() &&
                        std::isupper(static_cast<unsigned char>(current.back()));
      if (prev_lower || (prev_upper && next_lower)) flush();
    }
    current.push_back(name[i]);
  }
  flush();
  return tokens;
}

enum class DobjMode { FirstNoun, LastNounOfLeadingCompound };

struct NameAnalysis {
  std::vector<std::string> tokens;  // stop words already dropped
  std::optional<std::string> verb;  // lowercased
  RwClass rw = RwClass::Unclassified;
  VerbClassification classification;
  std::optional<std::string> dobj;
  std::set<std::string> nouns;
};

inline NameAnalysis analyze_name(const std::string& name, const PosLexicon& lexicon,
                                 const VerbTaxonomy& taxonomy,
                                 DobjMode mode = DobjMode::FirstNoun) {
  static const std::set<std::string> kStopWords{"test"};

  NameAnalysis out;
  for (const std::string& token : tokenize_identifier(name))
    if (kStopWords.count(detail::lowercase(token)) == 0) out.tokens.push_back(token);

  std::size_t verb_index = out.tokens.size();
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    Pos pos = lexicon.lookup(out.tokens[i]);
    if (pos == Pos::Noun) out.nouns.insert(out.tokens[i]);
    if (pos == Pos::Verb && !out.verb) {
      out.verb = detail::lowercase(out.tokens[i]);
      verb_index = i;
    }
  }
  if (out.verb) {
    out.classification = classify_verb(*out.verb, taxonomy);
    out.rw = out.classification.cls;
  }

  // The direct object lives in the first noun run after the verb: either its
  // head ("addCourseEventTest" -> Course) or its last word (-> Event).
  std::size_t i = verb_index + 1;
  while (i < out.tokens.size() && lexicon.lookup(out.tokens[i]) != Pos::Noun) ++i;
  if (i < out.tokens.size()) {
    std::size_t last = i;
    while (last + 1 < out.tokens.size() && lexicon.lookup(out.tokens[last + 1]) == Pos::Noun)
      ++last;
    out.dobj = mode == DobjMode::FirstNoun ? out.tokens[i] : out.tokens[last];
  }
  return out;
}

}  // namespace testdep
