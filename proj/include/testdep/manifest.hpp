#pragma once

// Application manifest: declares the action catalog, which actions submit
// input values, the state effects of (action, locator) pairs, the state
// present before any test runs, and optional per-test runtime costs.
//
// JSON shape:
//
//   {
//     "actions": ["click", "sendKeys", "assertText"],
//     "input_submitting": ["sendKeys"],
//     "effects": [
//       {"action": "sendKeys", "locator": "id=username", "args": 1,
//        "effects": [{"op": "write", "key": "user:{arg0}"}]}
//     ],
//     "initial_state": ["user:admin"],
//     "runtime_costs": {"addUserTest": 2.5}
//   }
//
// "args" is an optional declared arity; when present, key templates are
// checked against it at parse time. Locators may contain a single '*'
// wildcard; the first declared matching rule wins.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "testdep/errors.hpp"
#include "testdep/suite.hpp"

namespace testdep {

enum class EffectKind { Write, Read, Delete };

inline const char* to_string(EffectKind kind) {
  switch (kind) {
    case EffectKind::Write: return "write";
    case EffectKind::Read: return "read";
    case EffectKind::Delete: return "delete";
  }
  return "?";
}

struct Effect {
  EffectKind kind;
  std::string key_template;

  bool operator==(const Effect&) const = default;
};

struct EffectRule {
  std::string action;
  std::string locator_pattern;  // literal, or one '*' matching any substring
  std::optional<std::size_t> declared_arity;
  std::vector<Effect> effects;
};

namespace detail {

inline bool locator_matches(const std::string& pattern, const std::string& locator) {
  std::size_t star = pattern.find('*');
  if (star == std::string::npos) return pattern == locator;
  std::string head = pattern.substr(0, star);
  std::string tail = pattern.substr(star + 1);
  if (locator.size() < head.size() + tail.size()) return false;
  return locator.compare(0, head.size(), head) == 0 &&
         locator.compare(locator.size() - tail.size(), tail.size(), tail) == 0;
}

// Highest {argN} index in the template, or -1 when it has none. Throws on
// malformed placeholders.
inline int max_placeholder_index(const std::string& tmpl) {
  int max_index = -1;
  std::size_t pos = 0;
  while ((pos = tmpl.find('{', pos)) != std::string::npos) {
    std::size_t end = tmpl.find('}', pos);
    if (end == std::string::npos)
      throw SchemaError("unterminated placeholder in template \"" + tmpl + "\"");
    std::string inner = tmpl.substr(pos + 1, end - pos - 1);
    if (inner.rfind("arg", 0) != 0 || inner.size() == 3 ||
        inner.find_first_not_of("0123456789", 3) != std::string::npos)
      throw SchemaError("bad placeholder \"{" + inner + "}\" in template \"" + tmpl + "\"");
    max_index = std::max(max_index, std::stoi(inner.substr(3)));
    pos = end + 1;
  }
  return max_index;
}

}  // namespace detail

// Builds the concrete entity key for one statement.
inline std::string resolve_key_template(const std::string& tmpl,
                                        const std::vector<std::string>& args) {
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    if (tmpl[pos] != '{') {
      out.push_back(tmpl[pos++]);
      continue;
    }
    std::size_t end = tmpl.find('}', pos);
    int index = std::stoi(tmpl.substr(pos + 4, end - pos - 4));
    if (index < 0 || static_cast<std::size_t>(index) >= args.size())
      throw PlaceholderIndexOutOfRange(tmpl, index, args.size());
    out += args[static_cast<std::size_t>(index)];
    pos = end + 1;
  }
  return out;
}

class AppManifest {
 public:
  ActionCatalog catalog;
  std::set<std::string> input_submitting{"sendKeys"};
  std::vector<EffectRule> rules;
  std::map<std::string, std::string> initial_state;  // entity key -> value
  std::map<std::string, double> runtime_costs;

  // First declared rule matching (action, locator), or nullptr.
  const EffectRule* resolve_effects(const std::string& action,
                                    const std::string& locator) const {
    for (const EffectRule& rule : rules) {
      if (rule.action == action && detail::locator_matches(rule.locator_pattern, locator))
        return &rule;
    }
    return nullptr;
  }

  double runtime_cost(const std::string& test_name) const {
    auto it = runtime_costs.find(test_name);
    return it == runtime_costs.end() ? 1.0 : it->second;
  }
};

inline AppManifest parse_manifest(const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(source);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(e.what());
  }
  if (!doc.is_object()) throw SchemaError("top level must be an object");

  AppManifest manifest;

  if (!doc.contains("actions") || !doc["actions"].is_array())
    throw SchemaError("\"actions\" must be an array of action names");
  for (const auto& a : doc["actions"]) {
    if (!a.is_string()) throw SchemaError("\"actions\" entries must be strings");
    manifest.catalog.actions.insert(a.get<std::string>());
  }

  if (doc.contains("input_submitting")) {
    if (!doc["input_submitting"].is_array())
      throw SchemaError("\"input_submitting\" must be an array");
    manifest.input_submitting.clear();
    for (const auto& a : doc["input_submitting"]) {
      if (!a.is_string()) throw SchemaError("\"input_submitting\" entries must be strings");
      std::string name = a.get<std::string>();
      if (!manifest.catalog.contains(name))
        throw SchemaError("input_submitting action \"" + name + "\" not in the catalog");
      manifest.input_submitting.insert(name);
    }
  }

  if (doc.contains("effects")) {
    if (!doc["effects"].is_array()) throw SchemaError("\"effects\" must be an array");
    for (const auto& entry : doc["effects"]) {
      if (!entry.is_object() || !entry.contains("action") || !entry.contains("locator") ||
          !entry.contains("effects"))
        throw SchemaError("effect rule needs \"action\", \"locator\", \"effects\"");
      EffectRule rule;
      rule.action = entry["action"].get<std::string>();
      rule.locator_pattern = entry["locator"].get<std::string>();
      if (!manifest.catalog.contains(rule.action))
        throw SchemaError("effect rule action \"" + rule.action + "\" not in the catalog");
      if (rule.locator_pattern.find('*') != rule.locator_pattern.rfind('*'))
        throw SchemaError("locator pattern may contain at most one '*': " +
                          rule.locator_pattern);
      if (entry.contains("args")) {
        if (!entry["args"].is_number_unsigned())
          throw SchemaError("\"args\" must be a non-negative integer");
        rule.declared_arity = entry["args"].get<std::size_t>();
      }
      for (const auto& eff : entry["effects"]) {
        if (!eff.is_object() || !eff.contains("op") || !eff.contains("key"))
          throw SchemaError("effect needs \"op\" and \"key\"");
        std::string op = eff["op"].get<std::string>();
        Effect effect;
        if (op == "write") effect.kind = EffectKind::Write;
        else if (op == "read") effect.kind = EffectKind::Read;
        else if (op == "delete") effect.kind = EffectKind::Delete;
        else throw SchemaError("unknown effect op \"" + op + "\"");
        effect.key_template = eff["key"].get<std::string>();
        int max_index = detail::max_placeholder_index(effect.key_template);
        if (rule.declared_arity && max_index >= 0 &&
            static_cast<std::size_t>(max_index) >= *rule.declared_arity)
          throw PlaceholderIndexOutOfRange(effect.key_template, max_index,
                                           *rule.declared_arity);
        rule.effects.push_back(std::move(effect));
      }
      manifest.rules.push_back(std::move(rule));
    }
  }

  if (doc.contains("initial_state")) {
    const auto& init = doc["initial_state"];
    if (init.is_array()) {
      for (const auto& k : init) {
        if (!k.is_string()) throw SchemaError("\"initial_state\" entries must be strings");
        manifest.initial_state[k.get<std::string>()] = "";
      }
    } else if (init.is_object()) {
      for (auto it = init.begin(); it != init.end(); ++it) {
        if (!it.value().is_string())
          throw SchemaError("\"initial_state\" values must be strings");
        manifest.initial_state[it.key()] = it.value().get<std::string>();
      }
    } else {
      throw SchemaError("\"initial_state\" must be an array or object");
    }
  }

  if (doc.contains("runtime_costs")) {
    if (!doc["runtime_costs"].is_object())
      throw SchemaError("\"runtime_costs\" must be an object");
    for (auto it = doc["runtime_costs"].begin(); it != doc["runtime_costs"].end(); ++it) {
      if (!it.value().is_number()) throw SchemaError("runtime cost must be a number");
      double cost = it.value().get<double>();
      if (cost <= 0.0) throw SchemaError("runtime cost must be positive");
      manifest.runtime_costs[it.key()] = cost;
    }
  }

  return manifest;
}

}  // namespace testdep
