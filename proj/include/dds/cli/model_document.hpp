#pragma once

#include "dds/propagators.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dds::cli {

/// Model file contents with variable names resolved to indices.
///
///   {
///     "variables": [{"name": "A", "domain": [3, 5]}, {"name": "C", "range": [1, 2]}],
///     "constraints": [
///       {"type": "neq", "vars": ["A", "C"]},
///       {"type": "linear", "coeffs": [1, 2], "vars": ["A", "C"], "rel": "le", "rhs": 9},
///       {"type": "alldifferent", "vars": ["A", "C"]},
///       {"type": "table", "vars": ["A", "C"], "tuples": [[3, 1], [5, 2]]},
///       {"type": "regular", "vars": ["A", "C"],
///        "dfa": {"states": 2, "start": 0, "finals": [1], "transitions": [[0, 3, 1], [1, 1, 1]]}},
///       {"type": "slide", "vars": ["A", "C"], "k": 2, "tuples": [[3, 1]]}
///     ]
///   }
struct ModelDocument {
  struct Variable {
    std::string name;
    Domain domain;
    friend bool operator==(const Variable&, const Variable&) = default;
  };

  std::vector<Variable> variables;
  std::vector<ConstraintSpec> constraints;

  friend bool operator==(const ModelDocument&, const ModelDocument&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::optional<int> line, std::string field)
      : std::runtime_error(format(message, line, field)), line_(line), field_(std::move(field)) {}

  /// 1-based line of a syntax error; empty for semantic errors.
  [[nodiscard]] std::optional<int> line() const { return line_; }
  /// JSON path of the offending field, e.g. "constraints[2].vars[0]".
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  static std::string format(const std::string& message, std::optional<int> line, const std::string& field) {
    std::string out;
    if (line) out += "line " + std::to_string(*line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  std::optional<int> line_;
  std::string field_;
};

namespace detail {

using nlohmann::json;

class DocumentReader {
 public:
  ModelDocument read(const json& root) {
    if (!root.is_object()) fail("", "top level must be an object");
    for (const auto& [key, _] : root.items())
      if (key != "variables" && key != "constraints") fail(key, "unknown field");
    if (!root.contains("variables")) fail("variables", "missing field");
    const json& vars = root["variables"];
    if (!vars.is_array()) fail("variables", "expected a list");
    for (std::size_t i = 0; i < vars.size(); ++i) read_variable(vars[i], "variables[" + std::to_string(i) + "]");

    if (root.contains("constraints")) {
      const json& cons = root["constraints"];
      if (!cons.is_array()) fail("constraints", "expected a list");
      for (std::size_t i = 0; i < cons.size(); ++i)
        read_constraint(cons[i], "constraints[" + std::to_string(i) + "]");
    }
    return std::move(doc_);
  }

 private:
  [[noreturn]] static void fail(const std::string& field, const std::string& message) {
    throw ParseError(message, std::nullopt, field);
  }

  static const json& field(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) fail(path + "." + key, "missing field");
    return obj[key];
  }

  static int integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    auto x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) fail(path, "integer out of range");
    return static_cast<int>(x);
  }

  static std::vector<int> integers(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected a list of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  static std::vector<std::vector<int>> tuples(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected a list of tuples");
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integers(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  void read_variable(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    const json& name = field(v, "name", path);
    if (!name.is_string() || name.get<std::string>().empty()) fail(path + ".name", "expected a non-empty string");
    std::string n = name.get<std::string>();
    if (index_.contains(n)) fail(path + ".name", "duplicate variable name '" + n + "'");

    bool has_domain = v.contains("domain"), has_range = v.contains("range");
    if (has_domain == has_range) fail(path, "exactly one of 'domain' or 'range' is required");
    Domain d;
    if (has_domain) {
      d = Domain(integers(v["domain"], path + ".domain"));
    } else {
      auto r = integers(v["range"], path + ".range");
      if (r.size() != 2) fail(path + ".range", "expected [lo, hi]");
      if (r[0] > r[1]) fail(path + ".range", "empty range");
      d = Domain::range(r[0], r[1]);
    }
    index_.emplace(n, static_cast<int>(doc_.variables.size()));
    doc_.variables.push_back({std::move(n), std::move(d)});
  }

  std::vector<VarRef> refs(const json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected a list of variable names");
    std::vector<VarRef> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::string p = path + "[" + std::to_string(i) + "]";
      if (!v[i].is_string()) fail(p, "expected a variable name");
      auto it = index_.find(v[i].get<std::string>());
      if (it == index_.end()) fail(p, "unknown variable '" + v[i].get<std::string>() + "'");
      out.push_back(VarRef{it->second});
    }
    return out;
  }

  static Dfa read_dfa(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    Dfa dfa;
    dfa.state_count = integer(field(v, "states", path), path + ".states");
    dfa.start = integer(field(v, "start", path), path + ".start");
    for (int f : integers(field(v, "finals", path), path + ".finals")) dfa.finals.insert(f);
    auto arcs = tuples(field(v, "transitions", path), path + ".transitions");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      std::string p = path + ".transitions[" + std::to_string(i) + "]";
      if (arcs[i].size() != 3) fail(p, "expected [from, symbol, to]");
      if (!dfa.transitions.emplace(std::pair{arcs[i][0], arcs[i][1]}, arcs[i][2]).second)
        fail(p, "second transition for the same state and symbol");
    }
    return dfa;
  }

  void read_constraint(const json& c, const std::string& path) {
    if (!c.is_object()) fail(path, "expected an object");
    const json& type = field(c, "type", path);
    if (!type.is_string()) fail(path + ".type", "expected a string");
    const std::string t = type.get<std::string>();
    auto vars = [&] { return refs(field(c, "vars", path), path + ".vars"); };

    ConstraintSpec spec;
    if (t == "neq") {
      auto v = vars();
      if (v.size() != 2) fail(path + ".vars", "neq takes exactly two variables");
      spec = Neq{v[0], v[1]};
    } else if (t == "linear") {
      Linear l;
      l.vars = vars();
      l.coeffs = integers(field(c, "coeffs", path), path + ".coeffs");
      const json& rel = field(c, "rel", path);
      if (rel == "eq") l.rel = LinearRel::Eq;
      else if (rel == "le") l.rel = LinearRel::Leq;
      else fail(path + ".rel", "expected \"eq\" or \"le\"");
      const json& rhs = field(c, "rhs", path);
      if (!rhs.is_number_integer()) fail(path + ".rhs", "expected an integer");
      l.rhs = rhs.get<std::int64_t>();
      spec = std::move(l);
    } else if (t == "alldifferent") {
      spec = AllDifferent{vars()};
    } else if (t == "table") {
      spec = Table{vars(), tuples(field(c, "tuples", path), path + ".tuples")};
    } else if (t == "regular") {
      spec = Regular{vars(), read_dfa(field(c, "dfa", path), path + ".dfa")};
    } else if (t == "slide") {
      Slide s;
      s.vars = vars();
      s.k = integer(field(c, "k", path), path + ".k");
      s.window_tuples = tuples(field(c, "tuples", path), path + ".tuples");
      spec = std::move(s);
    } else {
      fail(path + ".type", "unknown constraint type '" + t + "'");
    }

    try {
      validate(spec, doc_.variables.size());
    } catch (const ModelError& e) {
      fail(path, e.what());
    }
    doc_.constraints.push_back(std::move(spec));
  }

  ModelDocument doc_;
  std::map<std::string, int> index_;
};

inline int line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace detail

inline ModelDocument parse_model(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is one past the offending character
    int line = detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    auto col = what.find("column ");
    auto pos = col == std::string::npos ? col : what.find(": ", col);
    throw ParseError(pos == std::string::npos ? what : what.substr(pos + 2), line, "");
  }
  return detail::DocumentReader().read(root);
}

/// One variable or constraint per line, keys in a fixed order.
inline std::string serialize_model(const ModelDocument& doc) {
  using json = nlohmann::ordered_json;
  auto names = [&](const std::vector<VarRef>& vars) {
    json out = json::array();
    for (VarRef x : vars) out.push_back(doc.variables.at(static_cast<std::size_t>(x.index)).name);
    return out;
  };

  std::vector<json> variables, constraints;
  for (const auto& v : doc.variables) {
    json entry{{"name", v.name}};
    const Domain& d = v.domain;
    if (d.size() >= 2 && static_cast<std::int64_t>(d.max()) - d.min() + 1 == static_cast<std::int64_t>(d.size()))
      entry["range"] = {d.min(), d.max()};
    else
      entry["domain"] = std::vector<int>(d.begin(), d.end());
    variables.push_back(std::move(entry));
  }

  for (const auto& spec : doc.constraints) {
    json c{{"type", spec_name(spec)}};
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Neq>) {
            c["vars"] = names({s.x, s.y});
          } else if constexpr (std::is_same_v<T, Linear>) {
            c["coeffs"] = s.coeffs;
            c["vars"] = names(s.vars);
            c["rel"] = s.rel == LinearRel::Eq ? "eq" : "le";
            c["rhs"] = s.rhs;
          } else if constexpr (std::is_same_v<T, AllDifferent>) {
            c["vars"] = names(s.vars);
          } else if constexpr (std::is_same_v<T, Table>) {
            c["vars"] = names(s.vars);
            c["tuples"] = s.tuples;
          } else if constexpr (std::is_same_v<T, Regular>) {
            c["vars"] = names(s.vars);
            json arcs = json::array();
            for (const auto& [key, to] : s.dfa.transitions) arcs.push_back({key.first, key.second, to});
            c["dfa"] = {{"states", s.dfa.state_count},
                        {"start", s.dfa.start},
                        {"finals", std::vector<int>(s.dfa.finals.begin(), s.dfa.finals.end())},
                        {"transitions", std::move(arcs)}};
          } else {
            c["vars"] = names(s.vars);
            c["k"] = s.k;
            c["tuples"] = s.window_tuples;
          }
        },
        spec);
    constraints.push_back(std::move(c));
  }

  auto list = [](const std::vector<json>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ",\n    " : "\n    ") + items[i].dump();
    return out + (items.empty() ? "]" : "\n  ]");
  };
  return "{\n  \"variables\": " + list(variables) + ",\n  \"constraints\": " + list(constraints) + "\n}\n";
}

inline ProblemState build_problem(const ModelDocument& doc) {
  std::vector<Domain> domains;
  for (const auto& v : doc.variables) domains.push_back(v.domain);
  ProblemState state(std::move(domains));
  for (const auto& c : doc.constraints) post(state, c);
  return state;
}

/// Document for a state built in code; variables are named prefix0, prefix1, ...
inline ModelDocument document_from(const ProblemState& state, const std::string& prefix = "x") {
  ModelDocument doc;
  for (std::size_t i = 0; i < state.var_count(); ++i)
    doc.variables.push_back({prefix + std::to_string(i), state.domain(VarRef{static_cast<int>(i)})});
  doc.constraints = state.constraints();
  return doc;
}

}  // namespace dds::cli
