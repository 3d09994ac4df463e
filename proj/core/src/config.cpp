// SPDX-License-Identifier: Apache-2.0
#include "thinv/config.hpp"

#include <cmath>
#include <functional>
#include <set>

#include "json.hpp"
#include "thinv/errors.hpp"

namespace thinv {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ValidationError, field + ": " + why);
}

void check_keys(const Json& j, const std::string& field, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) invalid(field, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.count(k)) invalid(field + "." + k, "unknown field");
  }
}

const Json& require(const Json& j, const std::string& field, const char* key) {
  if (!j.contains(key)) invalid(field + "." + key, "missing");
  return j.at(key);
}

double get_double(const Json& j, const std::string& field) {
  if (!j.is_number()) invalid(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(field, "not finite");
  return v;
}

int get_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) invalid(field, "expected an integer");
  return j.get<int>();
}

std::string get_string(const Json& j, const std::string& field) {
  if (!j.is_string()) invalid(field, "expected a string");
  return j.get<std::string>();
}

Complex get_complex(const Json& j, const std::string& field) {
  if (j.is_number()) return {get_double(j, field), 0.0};
  check_keys(j, field, {"re", "im"});
  const double re = get_double(require(j, field, "re"), field + ".re");
  const double im = j.contains("im") ? get_double(j.at("im"), field + ".im") : 0.0;
  return {re, im};
}

const Json& get_array(const Json& j, const std::string& field, bool nonempty) {
  if (!j.is_array()) invalid(field, "expected an array");
  if (nonempty && j.empty()) invalid(field, "must not be empty");
  return j;
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

class SymbolParser {
 public:
  SymbolParser(const Json* named, double invertibility_tol) : named_(named), tol_(invertibility_tol) {}

  PCSymbol resolve(const std::string& name, const std::string& field) {
    if (auto it = done_.find(name); it != done_.end()) return it->second;
    if (!named_ || !named_->contains(name)) invalid(field, "unknown symbol '" + name + "'");
    if (active_.count(name)) invalid(field, "cyclic reference to '" + name + "'");
    active_.insert(name);
    PCSymbol s = parse(named_->at(name), "symbols." + name);
    active_.erase(name);
    done_.emplace(name, s);
    return s;
  }

  PCSymbol parse(const Json& j, const std::string& field) {
    if (!j.is_object()) invalid(field, "expected an expression object");
    const std::string op = get_string(require(j, field, "op"), field + ".op");
    try {
      return build(op, j, field);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ValidationError) throw;
      invalid(field, e.what());
    }
  }

 private:
  PCSymbol build(const std::string& op, const Json& j, const std::string& field) {
    if (op == "const") {
      check_keys(j, field, {"op", "re", "im"});
      const double re = get_double(require(j, field, "re"), field + ".re");
      const double im = j.contains("im") ? get_double(j.at("im"), field + ".im") : 0.0;
      return PCSymbol::constant({re, im});
    }
    if (op == "monomial") {
      check_keys(j, field, {"op", "n"});
      return PCSymbol::monomial(get_int(require(j, field, "n"), field + ".n"));
    }
    if (op == "power_arc") {
      check_keys(j, field, {"op", "beta", "anchor"});
      const Complex beta = get_complex(require(j, field, "beta"), field + ".beta");
      const double anchor = j.contains("anchor") ? get_double(j.at("anchor"), field + ".anchor") : 0.0;
      return PCSymbol::power_arc(beta, CirclePoint(anchor));
    }
    if (op == "piecewise_const") {
      check_keys(j, field, {"op", "breaks", "values"});
      const auto& br = get_array(require(j, field, "breaks"), field + ".breaks", true);
      const auto& va = get_array(require(j, field, "values"), field + ".values", true);
      if (br.size() != va.size()) invalid(field + ".values", "needs one value per break");
      std::vector<double> breaks;
      std::vector<Complex> values;
      for (std::size_t k = 0; k < br.size(); ++k) {
        breaks.push_back(get_double(br[k], field + ".breaks[" + std::to_string(k) + "]"));
        values.push_back(get_complex(va[k], field + ".values[" + std::to_string(k) + "]"));
      }
      return PCSymbol::piecewise_const(std::move(breaks), std::move(values));
    }
    if (op == "half_circle_extension") {
      check_keys(j, field, {"op", "g0"});
      return PCSymbol::half_circle_extension(parse(require(j, field, "g0"), field + ".g0"));
    }
    if (op == "half_circle_interp") {
      check_keys(j, field, {"op", "upper_start", "upper_end", "lower_start", "lower_end", "mode"});
      auto c = [&](const char* k) { return get_complex(require(j, field, k), field + "." + k); };
      InterpMode mode = InterpMode::linear;
      if (j.contains("mode")) {
        const auto m = get_string(j.at("mode"), field + ".mode");
        if (m == "exponential") {
          mode = InterpMode::exponential;
        } else if (m != "linear") {
          invalid(field + ".mode", "expected 'linear' or 'exponential'");
        }
      }
      return PCSymbol::half_circle_interp(c("upper_start"), c("upper_end"), c("lower_start"), c("lower_end"), mode);
    }
    if (op == "sum" || op == "product") {
      const char* key = op == "sum" ? "terms" : "factors";
      check_keys(j, field, {"op", key});
      const auto& arr = get_array(require(j, field, key), field + "." + key, true);
      std::vector<PCSymbol> parts;
      for (std::size_t k = 0; k < arr.size(); ++k) {
        parts.push_back(parse(arr[k], field + "." + key + "[" + std::to_string(k) + "]"));
      }
      return op == "sum" ? PCSymbol::sum(std::move(parts)) : PCSymbol::product(std::move(parts));
    }
    if (op == "inverse" || op == "conjugate" || op == "tilde") {
      check_keys(j, field, {"op", "arg"});
      const PCSymbol arg = parse(require(j, field, "arg"), field + ".arg");
      if (op == "conjugate") return PCSymbol::conjugate(arg);
      if (op == "tilde") return PCSymbol::tilde(arg);
      if (min_modulus(arg, evaluation_grid(arg)) <= tol_) invalid(field + ".arg", "not invertible");
      return PCSymbol::inverse(arg);
    }
    if (op == "ref") {
      check_keys(j, field, {"op", "name"});
      return resolve(get_string(require(j, field, "name"), field + ".name"), field + ".name");
    }
    invalid(field + ".op", "unknown operation '" + op + "'");
  }

  const Json* named_;
  double tol_;
  std::map<std::string, PCSymbol> done_;
  std::set<std::string> active_;
};

Json symbol_json(const PCSymbol& s) {
  const auto& n = s.node();
  auto children = [&] {
    Json arr = Json::array();
    for (const auto& c : n.children) arr.push_back(symbol_json(c));
    return arr;
  };
  switch (n.kind) {
    case SymbolKind::Const: return Json{{"op", "const"}, {"re", n.value.real()}, {"im", n.value.imag()}};
    case SymbolKind::Monomial: return Json{{"op", "monomial"}, {"n", n.n}};
    case SymbolKind::PowerArc:
      return Json{{"op", "power_arc"}, {"beta", complex_json(n.beta)}, {"anchor", n.anchor}};
    case SymbolKind::PiecewiseConst: {
      Json values = Json::array();
      for (Complex v : n.values) values.push_back(complex_json(v));
      return Json{{"op", "piecewise_const"}, {"breaks", n.breaks}, {"values", values}};
    }
    case SymbolKind::HalfCircleExtension:
      return Json{{"op", "half_circle_extension"}, {"g0", symbol_json(n.children.at(0))}};
    case SymbolKind::HalfCircleInterp:
      return Json{{"op", "half_circle_interp"},
                  {"upper_start", complex_json(n.values.at(0))},
                  {"upper_end", complex_json(n.values.at(1))},
                  {"lower_start", complex_json(n.values.at(2))},
                  {"lower_end", complex_json(n.values.at(3))},
                  {"mode", n.mode == InterpMode::linear ? "linear" : "exponential"}};
    case SymbolKind::Sum: return Json{{"op", "sum"}, {"terms", children()}};
    case SymbolKind::Product: return Json{{"op", "product"}, {"factors", children()}};
    case SymbolKind::Inverse: return Json{{"op", "inverse"}, {"arg", symbol_json(n.children.at(0))}};
    case SymbolKind::Conjugate: return Json{{"op", "conjugate"}, {"arg", symbol_json(n.children.at(0))}};
    case SymbolKind::Tilde: return Json{{"op", "tilde"}, {"arg", symbol_json(n.children.at(0))}};
  }
  return Json();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                           e.what());
  }
}

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

Json record_json(const OperatorRecord& r) {
  return Json{{"fredholm", r.fredholm},
              {"index", optional_int(r.index)},
              {"kernel_dim", optional_int(r.kernel_dim)},
              {"cokernel_dim", optional_int(r.cokernel_dim)},
              {"verdict", std::string(to_string(r.verdict))},
              {"kernel_witnesses", r.kernel_witnesses}};
}

Json report_json(const FredholmReport& r) {
  Json j{{"p", r.p},
         {"classification", std::string(to_string(r.classification))},
         {"kernel_dim", optional_int(r.kernel_dim)},
         {"cokernel_dim", optional_int(r.cokernel_dim)},
         {"plus", record_json(r.plus)},
         {"minus", record_json(r.minus)},
         {"toeplitz_c", record_json(r.toeplitz_c)},
         {"toeplitz_d", record_json(r.toeplitz_d)},
         {"kappa1", optional_int(r.kappa1)},
         {"kappa2", optional_int(r.kappa2)},
         {"diag_kernel_dim", optional_int(r.diag_kernel_dim)},
         {"kernel_formula_alternative", optional_int(r.kernel_formula_alternative)},
         {"product_constant", r.product_constant ? complex_json(*r.product_constant) : Json(nullptr)},
         {"evidence", r.evidence}};
  if (r.probing) {
    j["probing"] = Json{{"s_used", r.probing->s_used},
                        {"limit_index_c", r.probing->limit_index_c},
                        {"limit_index_d", r.probing->limit_index_d}};
  } else {
    j["probing"] = nullptr;
  }
  return j;
}

}  // namespace

PCSymbol parse_symbol(const std::string& text) {
  SymbolParser parser(nullptr, kInvertibilityTol);
  return parser.parse(parse_json(text), "symbol");
}

std::string serialize_symbol(const PCSymbol& s) { return symbol_json(s).dump(); }

AnalysisConfig parse_config(const std::string& text) {
  const Json root = parse_json(text);
  check_keys(root, "config",
             {"symbols", "pair", "p_values", "tolerances", "finite_section_n", "curve", "seed", "outputs"});
  AnalysisConfig cfg;

  if (root.contains("tolerances")) {
    const auto& t = root.at("tolerances");
    check_keys(t, "tolerances", {"matching", "invertibility", "winding", "sv_threshold", "quadrature"});
    auto tol = [&](const char* key, double& out) {
      if (!t.contains(key)) return;
      const std::string field = std::string("tolerances.") + key;
      out = get_double(t.at(key), field);
      if (!(out > 0.0)) invalid(field, "must be positive");
    };
    tol("matching", cfg.tolerances.matching);
    tol("invertibility", cfg.tolerances.invertibility);
    tol("winding", cfg.tolerances.winding);
    tol("sv_threshold", cfg.tolerances.sv_threshold);
    tol("quadrature", cfg.tolerances.quadrature);
  }

  const Json& symbols = require(root, "config", "symbols");
  if (!symbols.is_object()) invalid("symbols", "expected an object");
  SymbolParser parser(&symbols, cfg.tolerances.invertibility);
  for (const auto& [name, expr] : symbols.items()) cfg.symbols.emplace(name, parser.resolve(name, "symbols." + name));

  if (root.contains("pair")) {
    const auto& pr = root.at("pair");
    check_keys(pr, "pair", {"a", "b"});
    if (pr.contains("a")) cfg.a = get_string(pr.at("a"), "pair.a");
    if (pr.contains("b")) cfg.b = get_string(pr.at("b"), "pair.b");
  }
  if (!cfg.symbols.count(cfg.a)) invalid("pair.a", "unknown symbol '" + cfg.a + "'");
  if (!cfg.symbols.count(cfg.b)) invalid("pair.b", "unknown symbol '" + cfg.b + "'");

  const auto& ps = get_array(require(root, "config", "p_values"), "p_values", true);
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const std::string field = "p_values[" + std::to_string(k) + "]";
    const double p = get_double(ps[k], field);
    if (!(p > 1.0)) invalid(field, "must lie in (1, inf)");
    cfg.p_values.push_back(p);
  }

  if (root.contains("finite_section_n")) {
    cfg.finite_section_n = get_int(root.at("finite_section_n"), "finite_section_n");
    if (cfg.finite_section_n < 16) invalid("finite_section_n", "must be at least 16");
  }
  if (root.contains("curve")) {
    const auto& c = root.at("curve");
    check_keys(c, "curve", {"target"});
    if (c.contains("target")) cfg.curve_target = get_string(c.at("target"), "curve.target");
  }
  static const std::set<std::string> derived = {"a", "b", "c", "d"};
  if (!derived.count(cfg.curve_target) && !cfg.symbols.count(cfg.curve_target)) {
    invalid("curve.target", "unknown symbol '" + cfg.curve_target + "'");
  }
  if (root.contains("seed")) {
    const auto& s = root.at("seed");
    if (!s.is_number_unsigned()) invalid("seed", "expected a nonnegative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (root.contains("outputs")) {
    const auto& o = root.at("outputs");
    check_keys(o, "outputs", {"report", "curve", "verify", "selftest"});
    auto path = [&](const char* key, std::optional<std::string>& out) {
      if (o.contains(key)) out = get_string(o.at(key), std::string("outputs.") + key);
    };
    path("report", cfg.outputs.report);
    path("curve", cfg.outputs.curve);
    path("verify", cfg.outputs.verify);
    path("selftest", cfg.outputs.selftest);
  }
  return cfg;
}

std::string serialize_config(const AnalysisConfig& cfg) {
  Json symbols = Json::object();
  for (const auto& [name, s] : cfg.symbols) symbols[name] = symbol_json(s);
  Json outputs = Json::object();
  if (cfg.outputs.report) outputs["report"] = *cfg.outputs.report;
  if (cfg.outputs.curve) outputs["curve"] = *cfg.outputs.curve;
  if (cfg.outputs.verify) outputs["verify"] = *cfg.outputs.verify;
  if (cfg.outputs.selftest) outputs["selftest"] = *cfg.outputs.selftest;
  Json root{{"symbols", symbols},
            {"pair", {{"a", cfg.a}, {"b", cfg.b}}},
            {"p_values", cfg.p_values},
            {"tolerances",
             {{"matching", cfg.tolerances.matching},
              {"invertibility", cfg.tolerances.invertibility},
              {"winding", cfg.tolerances.winding},
              {"sv_threshold", cfg.tolerances.sv_threshold},
              {"quadrature", cfg.tolerances.quadrature}}},
            {"finite_section_n", cfg.finite_section_n},
            {"curve", {{"target", cfg.curve_target}}},
            {"seed", cfg.seed},
            {"outputs", outputs}};
  return root.dump(2) + "\n";
}

std::string serialize_reports(const std::vector<FredholmReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return Json{{"reports", arr}}.dump(2) + "\n";
}

std::string serialize_cross_checks(const std::vector<CrossCheckReport>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json j = report_json(c.report);
    j["cross_check"] = Json{{"toeplitz_sum", optional_int(c.toeplitz_sum)},
                            {"matrix_index", optional_int(c.matrix_index)},
                            {"th_sum", optional_int(c.th_sum)},
                            {"section_kernel_plus", optional_int(c.section_kernel_plus)},
                            {"section_kernel_minus", optional_int(c.section_kernel_minus)},
                            {"discrepancies", c.discrepancies}};
    arr.push_back(std::move(j));
  }
  return Json{{"reports", arr}}.dump(2) + "\n";
}

}  // namespace thinv
