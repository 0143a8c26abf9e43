#pragma once

// JSON documents for distributions, tau tables, inference problems and
// solutions, and CSV emission for convergence series and sampled curves.
//
// Distribution documents:
//   {"kind": "discrete", "labels": ["a", "b"], "values": [1, 0.5]}
//   {"kind": "piecewise_linear", "points": [[0, 1], [1, 0]]}
// both with an optional "metadata" object of string values.
//
// Numbers are written in shortest round-trip form, so parse(serialize(x))
// reproduces every binary64 value exactly.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "json.hpp"
#include "possibility/approximation.hpp"
#include "possibility/discrete.hpp"
#include "possibility/error.hpp"
#include "possibility/inference.hpp"
#include "possibility/measures.hpp"
#include "possibility/piecewise.hpp"

namespace possibility::io {

using Json = nlohmann::json;
using Metadata = std::map<std::string, std::string>;

/// Document does not match the schema. The message starts with the field path.
class SchemaError : public DomainError {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : DomainError(path.empty() ? what : "field " + path + ": " + what) {}
};

using Distribution = std::variant<DiscreteDistribution, PiecewisePossibility>;

struct DistributionDocument {
  Distribution value;
  Metadata metadata;
};

namespace detail {

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SchemaError("", "malformed JSON at line " + std::to_string(line) + ", column " +
                              std::to_string(column));
  }
}

inline const Json& member(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline std::string join_path(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

inline double unit_number(const Json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v >= 0.0 && v <= 1.0)) {
    throw SchemaError(path, "value " + j.dump() + " is outside [0,1]");
  }
  return v;
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) {
    if (!j[i].is_string()) throw SchemaError(index_path(path, i), "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

inline std::vector<std::pair<double, double>> pair_list(const Json& j, const std::string& path,
                                                       bool unit_second) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) {
    const auto p = index_path(path, i);
    if (!j[i].is_array() || j[i].size() != 2) throw SchemaError(p, "expected a pair [x, v]");
    const double x = number(j[i][0], p + "[0]");
    const double v = unit_second ? unit_number(j[i][1], p + "[1]") : number(j[i][1], p + "[1]");
    out.emplace_back(x, v);
  }
  return out;
}

inline Metadata metadata(const Json& obj, const std::string& path) {
  Metadata out;
  auto it = obj.find("metadata");
  if (it == obj.end()) return out;
  const auto mpath = join_path(path, "metadata");
  if (!it->is_object()) throw SchemaError(mpath, "expected an object");
  for (const auto& [k, v] : it->items()) {
    if (!v.is_string()) throw SchemaError(join_path(mpath, k), "expected a string");
    out[k] = v.get<std::string>();
  }
  return out;
}

template <class Fn>
auto with_path(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const SchemaError&) {
    throw;
  } catch (const DomainError& e) {
    throw SchemaError(path, e.what());
  }
}

inline DiscreteDistribution discrete_from_json(const Json& obj, const std::string& path) {
  auto labels = string_list(member(obj, path, "labels"), join_path(path, "labels"));
  const auto& vj = array(member(obj, path, "values"), join_path(path, "values"));
  std::vector<double> values;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    values.push_back(unit_number(vj[i], index_path(join_path(path, "values"), i)));
  }
  return with_path(path, [&] { return DiscreteDistribution(std::move(labels), std::move(values)); });
}

inline PiecewisePossibility piecewise_from_json(const Json& obj, const std::string& path) {
  const auto pairs = pair_list(member(obj, path, "points"), join_path(path, "points"), true);
  std::vector<Breakpoint> pts;
  pts.reserve(pairs.size());
  for (const auto& [x, v] : pairs) pts.push_back({x, v});
  return with_path(path, [&] { return PiecewisePossibility(std::move(pts)); });
}

inline std::string kind_of(const Json& obj, const std::string& path) {
  const auto& k = member(obj, path, "kind");
  if (!k.is_string()) throw SchemaError(join_path(path, "kind"), "expected a string");
  return k.get<std::string>();
}

inline DistributionDocument distribution_from_json(const Json& obj, const std::string& path) {
  const auto kind = kind_of(obj, path);
  if (kind == "discrete") return {discrete_from_json(obj, path), metadata(obj, path)};
  if (kind == "piecewise_linear") return {piecewise_from_json(obj, path), metadata(obj, path)};
  throw SchemaError(join_path(path, "kind"),
                    "unknown kind '" + kind + "' (expected discrete or piecewise_linear)");
}

inline Json metadata_json(const Metadata& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

inline const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::less_equal: return "<=";
    case Relation::greater_equal: return ">=";
    case Relation::equal: return "=";
  }
  return "?";
}

inline Relation parse_relation(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "<=") return Relation::less_equal;
    if (s == ">=") return Relation::greater_equal;
    if (s == "=" || s == "==") return Relation::equal;
  }
  throw SchemaError(path, "expected one of \"<=\", \">=\", \"=\"");
}

}  // namespace detail

// ---- distributions ---------------------------------------------------------

inline Json to_json(const DiscreteDistribution& d, const Metadata& metadata = {}) {
  Json out{{"kind", "discrete"}, {"labels", d.labels()},
           {"values", std::vector<double>(d.values().begin(), d.values().end())}};
  if (!metadata.empty()) out["metadata"] = detail::metadata_json(metadata);
  return out;
}

inline Json to_json(const PiecewisePossibility& f, const Metadata& metadata = {}) {
  Json pts = Json::array();
  for (const auto& p : f.points()) pts.push_back({p.x, p.v});
  Json out{{"kind", "piecewise_linear"}, {"points", std::move(pts)}};
  if (!metadata.empty()) out["metadata"] = detail::metadata_json(metadata);
  return out;
}

inline DistributionDocument parse_distribution(std::string_view text) {
  return detail::distribution_from_json(detail::parse_json(text), "");
}

inline DiscreteDistribution parse_discrete(std::string_view text) {
  auto doc = parse_distribution(text);
  if (auto* d = std::get_if<DiscreteDistribution>(&doc.value)) return std::move(*d);
  throw SchemaError("kind", "expected a discrete distribution");
}

inline PiecewisePossibility parse_piecewise(std::string_view text) {
  auto doc = parse_distribution(text);
  if (auto* f = std::get_if<PiecewisePossibility>(&doc.value)) return std::move(*f);
  throw SchemaError("kind", "expected a piecewise_linear distribution");
}

inline std::string serialize(const DiscreteDistribution& d, const Metadata& metadata = {}) {
  return to_json(d, metadata).dump(2) + "\n";
}

inline std::string serialize(const PiecewisePossibility& f, const Metadata& metadata = {}) {
  return to_json(f, metadata).dump(2) + "\n";
}

inline std::string serialize(const DistributionDocument& doc) {
  return std::visit([&](const auto& v) { return serialize(v, doc.metadata); }, doc.value);
}

// ---- tau tables ------------------------------------------------------------

/// {"kind": "tau", "points": [[0,0], ..., [1,1]]}
inline Tau parse_tau(std::string_view text) {
  const auto obj = detail::parse_json(text);
  if (detail::kind_of(obj, "") != "tau") throw SchemaError("kind", "expected \"tau\"");
  const auto pairs = detail::pair_list(detail::member(obj, "", "points"), "points", true);
  std::vector<Tau::Point> pts;
  for (const auto& [t, v] : pairs) pts.push_back({t, v});
  return detail::with_path("points", [&] { return Tau(std::move(pts)); });
}

inline std::string serialize(const Tau& tau) {
  Json pts = Json::array();
  for (const auto& p : tau.points()) pts.push_back({p.t, p.value});
  return Json{{"kind", "tau"}, {"points", std::move(pts)}}.dump(2) + "\n";
}

// ---- inference -------------------------------------------------------------

/// {"labels": [...],
///  "constraints": [{"coefficients": [..] or {"label": c, ...},
///                   "relation": "<=" | ">=" | "=", "bound": b}, ...],
///  "objective": {"type": "max_u"} or
///               {"type": "min_distance", "metric": "G" | "K",
///                "prior": [values...] or a discrete distribution document},
///  "require_normalized": true}
inline InferenceProblem parse_problem(std::string_view text) {
  using namespace detail;
  const auto obj = parse_json(text);
  const auto labels = string_list(member(obj, "", "labels"), "labels");

  std::vector<LinearConstraint> constraints;
  if (auto it = obj.find("constraints"); it != obj.end()) {
    const auto& cs = array(*it, "constraints");
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const auto path = index_path("constraints", k);
      LinearConstraint c;
      const auto& coeffs = member(cs[k], path, "coefficients");
      const auto cpath = join_path(path, "coefficients");
      if (coeffs.is_array()) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
          c.coefficients.push_back(number(coeffs[i], index_path(cpath, i)));
        }
      } else if (coeffs.is_object()) {
        c.coefficients.assign(labels.size(), 0.0);
        for (const auto& [label, value] : coeffs.items()) {
          auto pos = std::find(labels.begin(), labels.end(), label);
          if (pos == labels.end()) throw SchemaError(join_path(cpath, label), "unknown label");
          c.coefficients[static_cast<std::size_t>(pos - labels.begin())] =
              number(value, join_path(cpath, label));
        }
      } else {
        throw SchemaError(cpath, "expected an array or an object");
      }
      c.relation = parse_relation(member(cs[k], path, "relation"), join_path(path, "relation"));
      c.bound = number(member(cs[k], path, "bound"), join_path(path, "bound"));
      constraints.push_back(std::move(c));
    }
  }

  const auto& oj = member(obj, "", "objective");
  const auto& type = member(oj, "objective", "type");
  if (!type.is_string()) throw SchemaError("objective.type", "expected a string");
  Objective objective = MaxU{};
  if (type == "min_distance") {
    const auto& mj = member(oj, "objective", "metric");
    if (!mj.is_string()) throw SchemaError("objective.metric", "expected a string");
    const Metric metric = with_path("objective.metric", [&] { return parse_metric(mj.get<std::string>()); });
    const auto& pj = member(oj, "objective", "prior");
    DiscreteDistribution prior = [&] {
      if (pj.is_array()) {
        std::vector<double> values;
        for (std::size_t i = 0; i < pj.size(); ++i) {
          values.push_back(unit_number(pj[i], index_path("objective.prior", i)));
        }
        return with_path("objective.prior", [&] { return DiscreteDistribution(labels, std::move(values)); });
      }
      return discrete_from_json(pj, "objective.prior");
    }();
    objective = MinDistance{std::move(prior), metric};
  } else if (type != "max_u") {
    throw SchemaError("objective.type", "expected \"max_u\" or \"min_distance\"");
  }

  bool require_normalized = true;
  if (auto it = obj.find("require_normalized"); it != obj.end()) {
    if (!it->is_boolean()) throw SchemaError("require_normalized", "expected a boolean");
    require_normalized = it->get<bool>();
  }
  return with_path("", [&] {
    return InferenceProblem(labels, std::move(constraints), std::move(objective), require_normalized);
  });
}

inline std::string serialize(const InferenceProblem& p) {
  Json cs = Json::array();
  for (const auto& c : p.constraints()) {
    cs.push_back({{"coefficients", c.coefficients},
                  {"relation", detail::relation_symbol(c.relation)},
                  {"bound", c.bound}});
  }
  Json objective;
  if (const auto* md = std::get_if<MinDistance>(&p.objective())) {
    objective = {{"type", "min_distance"},
                 {"metric", to_string(md->metric)},
                 {"prior", to_json(md->prior)}};
  } else {
    objective = {{"type", "max_u"}};
  }
  return Json{{"labels", p.labels()},
              {"constraints", std::move(cs)},
              {"objective", std::move(objective)},
              {"require_normalized", p.require_normalized()}}
             .dump(2) + "\n";
}

inline Json to_json(const InferenceSolution& s, const InferenceProblem& p) {
  Json certificate;
  if (const auto* orderings = std::get_if<std::vector<OrderingStatus>>(&s.certificate)) {
    std::size_t optimal = 0;
    std::size_t infeasible = 0;
    for (const auto& o : *orderings) {
      optimal += o.status == lp::Status::optimal;
      infeasible += o.status == lp::Status::infeasible;
    }
    certificate = {{"method", "ordering_enumeration"},
                   {"orderings", orderings->size()},
                   {"optimal", optimal},
                   {"infeasible", infeasible}};
  } else {
    const auto& summary = std::get<SearchSummary>(s.certificate);
    certificate = {{"method", "multistart_pattern_search"},
                   {"starts", summary.starts},
                   {"evaluations", summary.evaluations},
                   {"final_step", summary.final_step}};
  }
  const bool max_u = std::holds_alternative<MaxU>(p.objective());
  Json out{{"kind", "inference_solution"},
           {"objective", max_u ? "max_u" : "min_distance"},
           {"objective_value", s.objective_value},
           {"distribution", to_json(s.distribution)},
           {"certificate", std::move(certificate)}};
  if (const auto* md = std::get_if<MinDistance>(&p.objective())) out["metric"] = to_string(md->metric);
  return out;
}

inline std::string serialize(const InferenceSolution& s, const InferenceProblem& p) {
  return to_json(s, p).dump(2) + "\n";
}

// ---- numbers and CSV -------------------------------------------------------

/// Shortest round-trip decimal, '.' separator regardless of locale.
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

/// Fixed notation with `digits` decimals; "inf" for infinities.
inline std::string format_fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[128];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, end);
}

inline void write_csv(std::ostream& out, const ConvergenceSeries& series) {
  out << "n,u,approx_info\n";
  for (const auto& e : series.entries) {
    out << e.n << ',' << format_number(e.u_value) << ',' << format_number(e.approx_info) << '\n';
  }
}

inline void write_csv(std::ostream& out, std::span<const Breakpoint> curve) {
  out << "x,v\n";
  for (const auto& p : curve) out << format_number(p.x) << ',' << format_number(p.v) << '\n';
}

template <class Series>
void emit_csv(const Series& series, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCategory::data, "cannot open '" + path + "' for writing");
  write_csv(file, series);
  if (!file) throw Error(ErrorCategory::data, "write to '" + path + "' failed");
}

inline std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCategory::data, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCategory::data, "cannot open '" + path + "' for writing");
  file << content;
  if (!file) throw Error(ErrorCategory::data, "write to '" + path + "' failed");
}

}  // namespace possibility::io
