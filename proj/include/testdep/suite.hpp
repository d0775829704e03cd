#pragma once

// Test suite model and its two front ends: the native line format and a
// regex-based importer for Java/Selenium-style sources.
//
// Native format, one statement per line:
//
//   # comment
//   TEST addUserTest
//     sendKeys id=username "user001"
//     click xpath=//button
//
// Actions and locators are bare tokens; string arguments are double-quoted
// and preserved byte-exact (\" and \\ are the only escapes).

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "testdep/errors.hpp"

namespace testdep {

struct Statement {
  std::string action;
  std::string locator;
  std::vector<std::string> args;

  bool operator==(const Statement&) const = default;
};

struct TestCase {
  std::string name;
  std::vector<Statement> statements;

  bool operator==(const TestCase&) const = default;
};

// Optional whitelist of action names. When bound to a parse, statements with
// actions outside the set are rejected.
struct ActionCatalog {
  std::set<std::string> actions;

  bool contains(const std::string& action) const {
    return actions.count(action) != 0;
  }
};

class TestSuite {
 public:
  TestSuite() = default;

  void add_test(TestCase test) {
    if (index_.count(test.name) != 0) throw DuplicateTestName(test.name);
    index_[test.name] = tests_.size();
    tests_.push_back(std::move(test));
  }

  const std::vector<TestCase>& tests() const { return tests_; }
  std::size_t size() const { return tests_.size(); }
  bool empty() const { return tests_.empty(); }

  bool has_test(const std::string& name) const { return index_.count(name) != 0; }

  const TestCase& test(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownTestName(name);
    return tests_[it->second];
  }

  const TestCase& test_at(std::size_t position) const { return tests_.at(position); }

  // 1-based position in the original order.
  std::size_t order_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownTestName(name);
    return it->second + 1;
  }

  bool operator==(const TestSuite& other) const { return tests_ == other.tests_; }

 private:
  std::vector<TestCase> tests_;
  std::map<std::string, std::size_t> index_;
};

namespace detail {

inline bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string escape_arg(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

// Parses the native line format. The catalog, when given, restricts action
// names; the parse fails on the first offending line.
inline TestSuite parse_suite(const std::string& source,
                             const ActionCatalog* catalog = nullptr) {
  TestSuite suite;
  std::optional<TestCase> current;
  std::istringstream in(source);
  std::string raw;
  std::size_t lineno = 0;

  auto flush = [&] {
    if (current) {
      suite.add_test(std::move(*current));
      current.reset();
    }
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (line.rfind("TEST ", 0) == 0) {
      std::string name = detail::trim(line.substr(5));
      if (!detail::valid_identifier(name))
        throw SyntaxError("invalid test name: '" + name + "'", lineno);
      flush();
      current = TestCase{name, {}};
      continue;
    }

    if (!current) throw SyntaxError("statement before any TEST header", lineno);

    // <action> <locator> ["arg" ...]
    std::size_t pos = 0;
    auto next_token = [&]() -> std::string {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ') ++pos;
      return line.substr(start, pos - start);
    };

    Statement st;
    st.action = next_token();
    st.locator = next_token();
    if (st.action.empty() || st.locator.empty())
      throw SyntaxError("expected '<action> <locator> [\"arg\" ...]'", lineno);
    if (st.locator[0] == '"')
      throw SyntaxError("locator must be a bare token, not a quoted string", lineno);
    if (catalog && !catalog->contains(st.action))
      throw UnknownAction(st.action, lineno);

    while (pos < line.size()) {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      if (pos >= line.size()) break;
      if (line[pos] != '"')
        throw SyntaxError("arguments must be double-quoted", lineno);
      ++pos;
      std::string arg;
      bool closed = false;
      while (pos < line.size()) {
        char c = line[pos];
        if (c == '\\' && pos + 1 < line.size() &&
            (line[pos + 1] == '"' || line[pos + 1] == '\\')) {
          arg.push_back(line[pos + 1]);
          pos += 2;
          continue;
        }
        if (c == '"') {
          closed = true;
          ++pos;
          break;
        }
        arg.push_back(c);
        ++pos;
      }
      if (!closed) throw SyntaxError("unterminated string argument", lineno);
      st.args.push_back(std::move(arg));
    }

    current->statements.push_back(std::move(st));
  }
  flush();
  return suite;
}

// Canonical text form; parse(serialize(s)) == s.
inline std::string serialize_suite(const TestSuite& suite) {
  std::string out;
  bool first = true;
  for (const TestCase& test : suite.tests()) {
    if (!first) out += "\n";
    first = false;
    out += "TEST " + test.name + "\n";
    for (const Statement& st : test.statements) {
      out += "  " + st.action + " " + st.locator;
      for (const std::string& arg : st.args)
        out += " \"" + detail::escape_arg(arg) + "\"";
      out += "\n";
    }
  }
  return out;
}

// Imports Java/Selenium-style sources by line-oriented pattern matching, no
// AST. Recognized per line:
//   - 'public void name()' or 'void name()' starts a new test
//   - 'By.kind("value")' becomes the locator 'kind=value'
//   - a leading 'assertFoo(' or the last '.method(' on the line is the action
//   - remaining quoted literals (outside By.kind(...)) become the arguments
// Lines with no recognizable action are skipped.
inline TestSuite import_java_like(const std::string& source) {
  static const std::regex method_re(R"re(\bvoid\s+([A-Za-z_][A-Za-z0-9_]*)\s*\()re");
  static const std::regex by_re(R"re(By\.([A-Za-z]+)\s*\(\s*"((?:[^"\\]|\\.)*)")re");
  static const std::regex assert_re(R"re(^\s*(assert[A-Za-z0-9_]*)\s*\()re");
  static const std::regex call_re(R"re(\.([A-Za-z_][A-Za-z0-9_]*)\s*\()re");
  static const std::regex literal_re(R"re("((?:[^"\\]|\\.)*)")re");

  auto unescape = [](const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '\\' && i + 1 < s.size()) {
        out.push_back(s[i + 1]);
        ++i;
      } else {
        out.push_back(s[i]);
      }
    }
    return out;
  };

  TestSuite suite;
  std::optional<TestCase> current;
  std::istringstream in(source);
  std::string line;

  auto flush = [&] {
    if (current) {
      suite.add_test(std::move(*current));
      current.reset();
    }
  };

  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_search(line, m, method_re)) {
      flush();
      current = TestCase{m[1].str(), {}};
      continue;
    }
    if (!current) continue;

    Statement st;
    std::string locator_literal;
    if (std::regex_search(line, m, by_re)) {
      st.locator = m[1].str() + "=" + unescape(m[2].str());
      locator_literal = m[2].str();
    } else {
      st.locator = "-";
    }

    if (std::regex_search(line, m, assert_re)) {
      st.action = m[1].str();
    } else {
      // Last chained call wins: findElement(...).sendKeys(...) -> sendKeys.
      for (auto it = std::sregex_iterator(line.begin(), line.end(), call_re);
           it != std::sregex_iterator(); ++it) {
        std::string name = (*it)[1].str();
        if (name == "findElement" || name == "findElements") continue;
        st.action = name;
      }
    }
    if (st.action.empty()) continue;

    for (auto it = std::sregex_iterator(line.begin(), line.end(), literal_re);
         it != std::sregex_iterator(); ++it) {
      std::string lit = (*it)[1].str();
      if (!locator_literal.empty() && lit == locator_literal) {
        locator_literal.clear();  // skip the By.kind literal once
        continue;
      }
      st.args.push_back(unescape(lit));
    }
    current->statements.push_back(std::move(st));
  }
  flush();
  return suite;
}

}  // namespace testdep
