// SPDX-License-Identifier: Apache-2.0
#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "thinv/errors.hpp"
#include "thinv/finite_section.hpp"
#include "thinv/symbol_calculus.hpp"
#include "thinv/wiener_hopf.hpp"

namespace thinv::cli {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckRow below(std::string name, double value, double tol) {
  return {std::move(name), "< " + sci(tol), sci(value), value < tol};
}

CheckRow matches(std::string name, const std::string& expected, const std::string& actual) {
  return {std::move(name), expected, actual, expected == actual};
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  PCSymbol laurent(int degree) {
    std::vector<PCSymbol> terms;
    for (int k = -degree; k <= degree; ++k) {
      terms.push_back(Complex(uniform(-1, 1), uniform(-1, 1)) * PCSymbol::monomial(k));
    }
    return PCSymbol::sum(std::move(terms));
  }

  Complex unit_ish() { return std::polar(uniform(0.5, 2.0), uniform(0.0, kTwoPi)); }

  PCSymbol piecewise() {
    const int k = integer(2, 4);
    std::vector<double> breaks;
    std::vector<Complex> values;
    for (int j = 0; j < k; ++j) {
      breaks.push_back(uniform(0.0, kTwoPi));
      values.push_back(unit_ish());
    }
    return PCSymbol::piecewise_const(std::move(breaks), std::move(values));
  }

  /// Invertible PC symbol with jumps, a winding part and a power factor.
  PCSymbol pc_symbol() {
    return piecewise() * PCSymbol::monomial(integer(-2, 2)) *
           PCSymbol::power_arc(uniform(-0.4, 0.4), CirclePoint(uniform(0.0, kTwoPi)));
  }

  /// (a, a m) with m a matching function, so a a~ = b b~.
  MatchingPair matching_pair() {
    const PCSymbol a = pc_symbol();
    const PCSymbol u = piecewise();
    const PCSymbol m = PCSymbol::monomial(integer(-2, 2)) * u * PCSymbol::inverse(PCSymbol::tilde(u));
    return make_matching_pair(a, a * m);
  }

 private:
  std::mt19937_64 rng_;
};

double angle_between(Complex x, Complex y) { return std::abs(std::arg(y / x)); }

}  // namespace

std::vector<CheckRow> verify_suite(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  Generator gen(seed);

  double product_err = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto e = verify_product_identities(gen.laurent(gen.integer(1, 6)), gen.laurent(gen.integer(1, 6)), 16);
    product_err = std::max(product_err, e.max());
  }
  rows.push_back(below("product_identities", product_err, 1e-12));

  double conj = 0.0, fact = 0.0, idem = 0.0, flip = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto blk = block_assembly(gen.laurent(3), gen.laurent(3), 16);
    conj = std::max(conj, blk.conjugation_error);
    fact = std::max(fact, blk.factorization_error);
    idem = std::max(idem, blk.idempotent_error);
    flip = std::max(flip, blk.flip_error);
  }
  rows.push_back(below("block_conjugation", conj, 1e-12));
  rows.push_back(below("block_factorization", fact, 1e-12));
  rows.push_back(below("block_idempotent", idem, 1e-12));
  rows.push_back(below("flip_relations", flip, 1e-12));

  const auto ys = default_y_grid();
  for (double pv : {1.2, 2.0, 4.0}) {
    const HardyExponent p(pv);
    const std::string tag = "p=" + sci(pv);
    const auto lo = weight_functions(p, -INFINITY), hi = weight_functions(p, INFINITY);
    const bool exact = lo.nu == Complex(0.0) && hi.nu == Complex(1.0) && lo.h == Complex(0.0) && hi.h == Complex(0.0);
    rows.push_back(matches("weight_limits " + tag, "exact", exact ? "exact" : "inexact"));
    double parity = 0.0, max_im = -INFINITY;
    int violations = 0;
    const double bound = 1.0 / std::sin(kPi / pv);
    for (double y : ys) {
      if (!std::isfinite(y)) continue;
      const Complex h = weight_functions(p, y).h, hm = weight_functions(p, -y).h;
      parity = std::max({parity, std::abs(h.real() + hm.real()), std::abs(h.imag() - hm.imag())});
      max_im = std::max(max_im, h.imag());
      if (y != 0.0 && !(std::abs(h.imag()) < bound)) ++violations;
    }
    rows.push_back(below("h_parity " + tag, parity, 1e-12));
    rows.push_back(matches("h_lower_half_plane " + tag, "true", max_im < 0.0 ? "true" : "false"));
    rows.push_back(matches("strict_inequality " + tag, "0", std::to_string(violations)));
  }

  {
    const HardyExponent p(4.0);
    const Complex u(1.0, 0.0), w(0.0, 1.0);
    double err = 0.0;
    for (double y : {-1.0, -0.3, 0.0, 0.4, 1.2}) {
      const Complex nu = weight_functions(p, y).nu;
      const Complex z = u * (1.0 - nu) + w * nu;
      err = std::max(err, std::abs(angle_between(u - z, w - z) - kTwoPi / 4.0));
    }
    rows.push_back(below("arc_inscribed_angle p=4", err, 1e-9));
  }
  {
    const HardyExponent p(2.0);
    const Complex u = gen.unit_ish(), w = gen.unit_ish();
    const auto seg = arc(u, w, p);
    double err = 0.0;
    for (const auto& s : seg.samples) err = std::max(err, std::abs(((s.value - u) / (w - u)).imag()));
    rows.push_back(below("arc_collinear p=2", err, 1e-12));
  }

  int mismatches = 0, trials = 0;
  while (trials < 20) {
    const PCSymbol a = gen.pc_symbol();
    const HardyExponent p(gen.uniform(1.2, 4.0));
    const auto ind = toeplitz_index(a, p);
    if (!ind) continue;
    ++trials;
    if (th_index(a, PCSymbol::constant(0.0), p) != *ind) ++mismatches;
  }
  rows.push_back(matches("th_index_reduces_to_toeplitz", "0", std::to_string(mismatches)));

  mismatches = trials = 0;
  while (trials < 10) {
    const MatchingPair pair = gen.matching_pair();
    const HardyExponent p(gen.uniform(1.2, 4.0));
    const auto ic = toeplitz_index(pair.c, p), id = toeplitz_index(pair.d, p);
    if (!ic || !id) continue;
    ++trials;
    const auto m = matrix_toeplitz_index(build_U(pair.a, pair.b), p);
    const int th = th_index(pair.a, pair.b, p) + th_index(pair.a, -pair.b, p);
    if (!m || *m != *ic + *id || th != *ic + *id) ++mismatches;
  }
  rows.push_back(matches("index_route_agreement", "0", std::to_string(mismatches)));
  return rows;
}

std::vector<CheckRow> selftest_suite(const AnalyzerOptions& opts) {
  std::vector<CheckRow> rows;
  const PCSymbol t = PCSymbol::monomial(1);
  const PCSymbol a1 = PCSymbol::constant(std::polar(1.0, kPi / 4)) * PCSymbol::power_arc(0.25);
  const PCSymbol a2 = PCSymbol::piecewise_const({0.0, kPi}, {1.0, -1.0});
  const PCSymbol a4 = PCSymbol::piecewise_const({kPi / 2, 3 * kPi / 2}, {-1.0, 1.0});

  struct Case {
    std::string name;
    MatchingPair pair;
    double p;
    std::string plus;
    std::string minus;
  };
  const MatchingPair ex1 = make_matching_pair(a1, a1 * t);
  const MatchingPair ex2 = make_matching_pair(PCSymbol::constant(Complex(0.0, 1.0)), a2);
  const MatchingPair ex3 = make_matching_pair(a1, a1 * PCSymbol::monomial(-1));
  const MatchingPair ex4 = make_matching_pair(a4, a4 * t);
  const std::vector<Case> cases = {
      {"example1", ex1, 1.5, "invertible", "not_one_sided_invertible"},
      {"example1", ex1, 2.0, "not_fredholm", "not_one_sided_invertible"},
      {"example1", ex1, 3.0, "left_invertible coker=1", "not_one_sided_invertible"},
      {"example2", ex2, 1.5, "right_invertible ker=2", "invertible"},
      {"example2", ex2, 3.0, "left_invertible coker=2", "invertible"},
      {"example3", ex3, 1.5, "invertible", "invertible"},
      {"example3", ex3, 3.0, "left_invertible coker=1", "invertible"},
      {"example4", ex4, 1.5, "invertible", "not_one_sided_invertible"},
      {"example4", ex4, 2.0, "invertible", "not_one_sided_invertible"},
      {"example4", ex4, 3.0, "invertible", "not_one_sided_invertible"},
  };
  auto describe = [](const OperatorRecord& r) {
    std::string s(to_string(r.verdict));
    if (r.verdict == Verdict::left_invertible && r.cokernel_dim) s += " coker=" + std::to_string(*r.cokernel_dim);
    if (r.verdict == Verdict::right_invertible && r.kernel_dim) s += " ker=" + std::to_string(*r.kernel_dim);
    return s;
  };
  for (const auto& c : cases) {
    const std::string tag = c.name + " p=" + sci(c.p);
    std::string plus, minus;
    try {
      const FredholmReport r = classify(c.pair, HardyExponent(c.p), opts);
      plus = describe(r.plus);
      minus = describe(r.minus);
    } catch (const Error& e) {
      plus = minus = std::string("error ") + std::string(to_string(e.code()));
    }
    rows.push_back(matches(tag + " T(a)+H(b)", c.plus, plus));
    rows.push_back(matches(tag + " T(a)-H(b)", c.minus, minus));
  }

  const SeriesValue c0 = c0_series(0.25);
  rows.push_back(below("example3 c0 tail bound", c0.tail_bound, 1e-12));
  rows.push_back(matches("example3 c0 nonzero", "true", std::abs(c0.value) > 1e-3 ? "true" : "false"));
  return rows;
}

std::string format_rows(const std::vector<CheckRow>& rows) {
  std::ostringstream os;
  os << "check,expected,actual,status\n";
  for (const auto& r : rows) os << r.name << ',' << r.expected << ',' << r.actual << ',' << (r.passed ? "pass" : "FAIL") << '\n';
  return os.str();
}

bool all_passed(const std::vector<CheckRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
}

}  // namespace thinv::cli
