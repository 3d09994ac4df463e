// SPDX-License-Identifier: Apache-2.0
#include "thinv/pc_symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "thinv/errors.hpp"

namespace thinv {
namespace {

constexpr double kPointSnap = 1e-13;

bool near_angle(double a, double b) { return angular_distance(a, b) < kPointSnap; }

std::vector<double> merge_angles(std::vector<double> angles) {
  for (double& a : angles) a = canonical_angle(a);
  std::sort(angles.begin(), angles.end());
  std::vector<double> out;
  for (double a : angles) {
    if (!out.empty() && a - out.back() < kAngleSnap) continue;
    out.push_back(a);
  }
  if (out.size() > 1 && kTwoPi - out.back() + out.front() < kAngleSnap) out.pop_back();
  return out;
}

std::vector<double> reflect_angles(const std::vector<double>& angles) {
  std::vector<double> r;
  r.reserve(angles.size());
  for (double a : angles) r.push_back(-a);
  return merge_angles(std::move(r));
}

std::vector<double> union_candidates(const std::vector<PCSymbol>& xs) {
  std::vector<double> all;
  for (const auto& x : xs) {
    const auto& c = x.jump_candidates();
    all.insert(all.end(), c.begin(), c.end());
  }
  return merge_angles(std::move(all));
}

Complex eval_power_arc(const SymbolNode& n, double angle, Side side) {
  double z = canonical_angle(angle - n.anchor);
  if (z < kPointSnap || kTwoPi - z < kPointSnap) z = (side == Side::right) ? 0.0 : kTwoPi;
  return std::exp(Complex(0.0, 1.0) * n.beta * (z - kPi));
}

Complex eval_piecewise(const SymbolNode& n, double angle, Side side) {
  const auto& br = n.breaks;
  const std::size_t m = br.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (near_angle(angle, br[k])) return side == Side::right ? n.values[k] : n.values[(k + m - 1) % m];
  }
  // Interval containing the angle; angles before the first break belong to the last interval.
  auto it = std::upper_bound(br.begin(), br.end(), angle);
  if (it == br.begin()) return n.values[m - 1];
  return n.values[static_cast<std::size_t>(it - br.begin()) - 1];
}

// Whether the one-sided limit at `angle` is taken from the upper half circle.
bool from_upper(double angle, Side side) {
  if (angle < kPointSnap || kTwoPi - angle < kPointSnap) return side == Side::right;
  if (std::fabs(angle - kPi) < kPointSnap) return side == Side::left;
  return angle < kPi;
}

Complex eval_interp(const SymbolNode& n, double angle, Side side) {
  const bool upper = from_upper(angle, side);
  double s;  // position along the half circle, 0 at the start and 1 at the end
  if (upper) {
    s = (angle > kTwoPi - kPointSnap) ? 0.0 : std::clamp(angle / kPi, 0.0, 1.0);
  } else {
    s = (angle < kPointSnap) ? 1.0 : std::clamp((angle - kPi) / kPi, 0.0, 1.0);
  }
  const Complex v0 = upper ? n.values[0] : n.values[2];
  const Complex v1 = upper ? n.values[1] : n.values[3];
  const Complex v = v0 + (v1 - v0) * s;
  return n.mode == InterpMode::linear ? v : std::exp(v);
}

}  // namespace

PCSymbol::PCSymbol() : PCSymbol(constant(0.0)) {}

PCSymbol::PCSymbol(std::shared_ptr<const SymbolNode> node) : node_(std::move(node)) {}

PCSymbol PCSymbol::make(SymbolNode node) {
  return PCSymbol(std::make_shared<const SymbolNode>(std::move(node)));
}

PCSymbol PCSymbol::constant(Complex value) {
  SymbolNode n;
  n.kind = SymbolKind::Const;
  n.value = value;
  return make(std::move(n));
}

PCSymbol PCSymbol::monomial(int k) {
  if (k == 0) return constant(1.0);
  SymbolNode n;
  n.kind = SymbolKind::Monomial;
  n.n = k;
  return make(std::move(n));
}

PCSymbol PCSymbol::power_arc(Complex beta, CirclePoint anchor) {
  if (beta == Complex(0.0, 0.0)) return constant(1.0);
  SymbolNode n;
  n.kind = SymbolKind::PowerArc;
  n.beta = beta;
  n.anchor = anchor.angle();
  n.candidates = {n.anchor};
  return make(std::move(n));
}

PCSymbol PCSymbol::piecewise_const(std::vector<double> breaks, std::vector<Complex> values) {
  if (breaks.empty() || breaks.size() != values.size()) {
    throw Error(ErrorCode::PreconditionViolation, "piecewise_const needs one value per break");
  }
  std::vector<std::pair<double, Complex>> pieces;
  for (std::size_t k = 0; k < breaks.size(); ++k) pieces.emplace_back(canonical_angle(breaks[k]), values[k]);
  std::sort(pieces.begin(), pieces.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SymbolNode n;
  n.kind = SymbolKind::PiecewiseConst;
  for (const auto& [b, v] : pieces) {
    if (!n.breaks.empty() && b - n.breaks.back() < kAngleSnap) {
      throw Error(ErrorCode::PreconditionViolation, "piecewise_const breaks must be distinct");
    }
    n.breaks.push_back(b);
    n.values.push_back(v);
  }
  const bool all_equal = std::all_of(n.values.begin(), n.values.end(),
                                     [&](Complex v) { return v == n.values.front(); });
  if (all_equal) return constant(n.values.front());
  n.candidates = n.breaks;
  return make(std::move(n));
}

PCSymbol PCSymbol::half_circle_extension(PCSymbol g0) {
  SymbolNode n;
  n.kind = SymbolKind::HalfCircleExtension;
  auto cand = g0.jump_candidates();
  const auto refl = reflect_angles(cand);
  cand.insert(cand.end(), refl.begin(), refl.end());
  cand.push_back(0.0);
  cand.push_back(kPi);
  n.candidates = merge_angles(std::move(cand));
  n.children = {std::move(g0)};
  return make(std::move(n));
}

PCSymbol PCSymbol::half_circle_interp(Complex upper_start, Complex upper_end, Complex lower_start,
                                      Complex lower_end, InterpMode mode) {
  SymbolNode n;
  n.kind = SymbolKind::HalfCircleInterp;
  n.values = {upper_start, upper_end, lower_start, lower_end};
  n.mode = mode;
  n.candidates = {0.0, kPi};
  return make(std::move(n));
}

PCSymbol PCSymbol::sum(std::vector<PCSymbol> terms) {
  std::vector<PCSymbol> flat;
  Complex c = 0.0;
  for (auto& t : terms) {
    if (t.kind() == SymbolKind::Sum) {
      for (const auto& u : t.node().children) {
        if (u.kind() == SymbolKind::Const) c += u.node().value;
        else flat.push_back(u);
      }
    } else if (t.kind() == SymbolKind::Const) {
      c += t.node().value;
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (c != Complex(0.0, 0.0)) flat.push_back(constant(c));
  if (flat.empty()) return constant(0.0);
  if (flat.size() == 1) return flat.front();
  SymbolNode n;
  n.kind = SymbolKind::Sum;
  n.candidates = union_candidates(flat);
  n.children = std::move(flat);
  return make(std::move(n));
}

PCSymbol PCSymbol::product(std::vector<PCSymbol> factors) {
  std::vector<PCSymbol> pending(factors.begin(), factors.end());
  std::vector<PCSymbol> rest;
  Complex c = 1.0;
  int power = 0;
  // Same-anchor power functions multiply exactly: phi_a * phi_b = phi_{a+b}.
  std::vector<std::pair<double, Complex>> arcs;
  while (!pending.empty()) {
    PCSymbol f = std::move(pending.back());
    pending.pop_back();
    switch (f.kind()) {
      case SymbolKind::Product:
        pending.insert(pending.end(), f.node().children.begin(), f.node().children.end());
        break;
      case SymbolKind::Const: c *= f.node().value; break;
      case SymbolKind::Monomial: power += f.node().n; break;
      case SymbolKind::PowerArc: {
        auto it = std::find_if(arcs.begin(), arcs.end(),
                               [&](const auto& a) { return near_angle(a.first, f.node().anchor); });
        if (it == arcs.end()) arcs.emplace_back(f.node().anchor, f.node().beta);
        else it->second += f.node().beta;
        break;
      }
      default: rest.push_back(std::move(f));
    }
  }
  if (c == Complex(0.0, 0.0)) return constant(0.0);
  std::vector<PCSymbol> flat;
  if (c != Complex(1.0, 0.0)) flat.push_back(constant(c));
  if (power != 0) flat.push_back(monomial(power));
  std::sort(arcs.begin(), arcs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [anchor, beta] : arcs) {
    if (std::abs(beta) > 0.0) flat.push_back(power_arc(beta, CirclePoint(anchor)));
  }
  std::reverse(rest.begin(), rest.end());
  flat.insert(flat.end(), rest.begin(), rest.end());
  if (flat.empty()) return constant(1.0);
  if (flat.size() == 1) return flat.front();
  SymbolNode n;
  n.kind = SymbolKind::Product;
  n.candidates = union_candidates(flat);
  n.children = std::move(flat);
  return make(std::move(n));
}

PCSymbol PCSymbol::inverse(const PCSymbol& s) {
  const auto& n = s.node();
  switch (n.kind) {
    case SymbolKind::Const:
      if (std::abs(n.value) < kInvertibilityTol) {
        throw Error(ErrorCode::DivisionBySmallModulus, "inverse of a vanishing constant");
      }
      return constant(1.0 / n.value);
    case SymbolKind::Monomial: return monomial(-n.n);
    case SymbolKind::PowerArc: return power_arc(-n.beta, CirclePoint(n.anchor));
    case SymbolKind::PiecewiseConst: {
      std::vector<Complex> v;
      for (Complex x : n.values) {
        if (std::abs(x) < kInvertibilityTol) {
          throw Error(ErrorCode::DivisionBySmallModulus, "inverse of a vanishing piece");
        }
        v.push_back(1.0 / x);
      }
      return piecewise_const(n.breaks, std::move(v));
    }
    case SymbolKind::Inverse: return n.children.front();
    case SymbolKind::Product: {
      std::vector<PCSymbol> f;
      for (const auto& x : n.children) f.push_back(inverse(x));
      return product(std::move(f));
    }
    default: break;
  }
  SymbolNode m;
  m.kind = SymbolKind::Inverse;
  m.candidates = n.candidates;
  m.children = {s};
  return make(std::move(m));
}

PCSymbol PCSymbol::conjugate(const PCSymbol& s) {
  const auto& n = s.node();
  switch (n.kind) {
    case SymbolKind::Const: return constant(std::conj(n.value));
    case SymbolKind::Monomial: return monomial(-n.n);
    case SymbolKind::PowerArc: return power_arc(-std::conj(n.beta), CirclePoint(n.anchor));
    case SymbolKind::PiecewiseConst: {
      std::vector<Complex> v;
      for (Complex x : n.values) v.push_back(std::conj(x));
      return piecewise_const(n.breaks, std::move(v));
    }
    case SymbolKind::Conjugate: return n.children.front();
    case SymbolKind::Product:
    case SymbolKind::Sum: {
      std::vector<PCSymbol> f;
      for (const auto& x : n.children) f.push_back(conjugate(x));
      return n.kind == SymbolKind::Sum ? sum(std::move(f)) : product(std::move(f));
    }
    default: break;
  }
  SymbolNode m;
  m.kind = SymbolKind::Conjugate;
  m.candidates = n.candidates;
  m.children = {s};
  return make(std::move(m));
}

PCSymbol PCSymbol::tilde(const PCSymbol& s) {
  const auto& n = s.node();
  switch (n.kind) {
    case SymbolKind::Const: return s;
    case SymbolKind::Monomial: return monomial(-n.n);
    case SymbolKind::PowerArc: return power_arc(-n.beta, CirclePoint(-n.anchor));
    case SymbolKind::PiecewiseConst: {
      auto br = reflect_angles(n.breaks);
      std::vector<Complex> v;
      for (std::size_t j = 0; j < br.size(); ++j) {
        const double lo = br[j];
        double hi = (j + 1 < br.size()) ? br[j + 1] : br.front() + kTwoPi;
        v.push_back(s.evaluate(-(lo + hi) / 2.0, Side::right));
      }
      return piecewise_const(std::move(br), std::move(v));
    }
    case SymbolKind::Tilde: return n.children.front();
    case SymbolKind::Product:
    case SymbolKind::Sum: {
      std::vector<PCSymbol> f;
      for (const auto& x : n.children) f.push_back(tilde(x));
      return n.kind == SymbolKind::Sum ? sum(std::move(f)) : product(std::move(f));
    }
    default: break;
  }
  SymbolNode m;
  m.kind = SymbolKind::Tilde;
  m.candidates = reflect_angles(n.candidates);
  m.children = {s};
  return make(std::move(m));
}

Complex PCSymbol::evaluate(CirclePoint t, Side side) const {
  const auto& n = *node_;
  const double angle = t.angle();
  switch (n.kind) {
    case SymbolKind::Const: return n.value;
    case SymbolKind::Monomial: return std::polar(1.0, n.n * angle);
    case SymbolKind::PowerArc: return eval_power_arc(n, angle, side);
    case SymbolKind::PiecewiseConst: return eval_piecewise(n, angle, side);
    case SymbolKind::HalfCircleInterp: return eval_interp(n, angle, side);
    case SymbolKind::HalfCircleExtension: {
      const PCSymbol& g0 = n.children.front();
      if (from_upper(angle, side)) {
        // Keep the limit on the upper half even at the endpoints.
        const Side s = (angle > kTwoPi - kPointSnap || angle < kPointSnap) ? Side::right
                       : (std::fabs(angle - kPi) < kPointSnap)              ? Side::left
                                                                            : side;
        const double a = (angle > kTwoPi - kPointSnap) ? 0.0 : angle;
        return g0.evaluate(CirclePoint(a), s);
      }
      const Complex v = g0.evaluate(t.reflected(), opposite(side));
      if (std::abs(v) < kInvertibilityTol) {
        throw Error(ErrorCode::DivisionBySmallModulus, "half circle extension of a vanishing g0");
      }
      return 1.0 / v;
    }
    case SymbolKind::Sum: {
      Complex acc = 0.0;
      for (const auto& c : n.children) acc += c.evaluate(t, side);
      return acc;
    }
    case SymbolKind::Product: {
      Complex acc = 1.0;
      for (const auto& c : n.children) acc *= c.evaluate(t, side);
      return acc;
    }
    case SymbolKind::Inverse: {
      const Complex v = n.children.front().evaluate(t, side);
      if (std::abs(v) < kInvertibilityTol) {
        std::ostringstream os;
        os << "modulus " << std::abs(v) << " at angle " << angle;
        throw Error(ErrorCode::DivisionBySmallModulus, os.str());
      }
      return 1.0 / v;
    }
    case SymbolKind::Conjugate: return std::conj(n.children.front().evaluate(t, side));
    case SymbolKind::Tilde: return n.children.front().evaluate(t.reflected(), opposite(side));
  }
  return 0.0;
}

bool PCSymbol::is_laurent_polynomial() const {
  switch (node_->kind) {
    case SymbolKind::Const:
    case SymbolKind::Monomial: return true;
    case SymbolKind::Sum:
    case SymbolKind::Product:
    case SymbolKind::Tilde:
    case SymbolKind::Conjugate:
      return std::all_of(node_->children.begin(), node_->children.end(),
                         [](const PCSymbol& c) { return c.is_laurent_polynomial(); });
    case SymbolKind::Inverse: {
      const auto k = node_->children.front().kind();
      return k == SymbolKind::Const || k == SymbolKind::Monomial;
    }
    default: return false;
  }
}

PCSymbol operator+(const PCSymbol& x, const PCSymbol& y) { return PCSymbol::sum({x, y}); }
PCSymbol operator-(const PCSymbol& x, const PCSymbol& y) { return PCSymbol::sum({x, -y}); }
PCSymbol operator*(const PCSymbol& x, const PCSymbol& y) { return PCSymbol::product({x, y}); }
PCSymbol operator-(const PCSymbol& x) { return PCSymbol::product({PCSymbol::constant(-1.0), x}); }
PCSymbol operator*(Complex c, const PCSymbol& s) { return PCSymbol::product({PCSymbol::constant(c), s}); }

std::vector<Jump> jump_set(const PCSymbol& s, double tol) {
  auto angles = s.jump_candidates();
  angles.push_back(0.0);
  angles.push_back(kPi);
  angles = merge_angles(std::move(angles));
  std::vector<Jump> out;
  for (double a : angles) {
    const CirclePoint t(a);
    const Complex l = s.evaluate(t, Side::left);
    const Complex r = s.evaluate(t, Side::right);
    const double scale = std::max({1.0, std::abs(l), std::abs(r)});
    if (std::abs(l - r) > tol * scale) out.push_back({t, l, r});
  }
  return out;
}

std::vector<double> evaluation_grid(const PCSymbol& s, int n) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n) + s.jump_candidates().size() + 2);
  for (int k = 0; k < n; ++k) g.push_back(kTwoPi * k / n);
  g.insert(g.end(), s.jump_candidates().begin(), s.jump_candidates().end());
  g.push_back(kPi);
  return merge_angles(std::move(g));
}

double max_difference(const PCSymbol& f, const PCSymbol& g, const std::vector<double>& grid) {
  double m = 0.0;
  for (double a : grid) {
    const CirclePoint t(a);
    for (Side side : {Side::left, Side::right}) {
      m = std::max(m, std::abs(f.evaluate(t, side) - g.evaluate(t, side)));
    }
  }
  return m;
}

double min_modulus(const PCSymbol& s, const std::vector<double>& grid) {
  double m = std::numeric_limits<double>::infinity();
  for (double a : grid) {
    const CirclePoint t(a);
    for (Side side : {Side::left, Side::right}) m = std::min(m, std::abs(s.evaluate(t, side)));
  }
  return m;
}

PCSymbol extend_half_circle(const PCSymbol& g0) {
  const Complex at_one = g0.evaluate(CirclePoint::one(), Side::right);
  const Complex at_minus_one = g0.evaluate(CirclePoint::minus_one(), Side::left);
  auto is_sign = [](Complex v) {
    return std::abs(v - Complex(1.0)) < kInvertibilityTol || std::abs(v + Complex(1.0)) < kInvertibilityTol;
  };
  if (!is_sign(at_one) || !is_sign(at_minus_one)) {
    throw Error(ErrorCode::PreconditionViolation, "g0(1) and g0(-1) must be 1 or -1");
  }
  double m = std::numeric_limits<double>::infinity();
  for (double a : evaluation_grid(g0)) {
    if (a > kPi) break;
    m = std::min({m, std::abs(g0.evaluate(a, Side::left)), std::abs(g0.evaluate(a, Side::right))});
  }
  if (m < kInvertibilityTol) throw Error(ErrorCode::PreconditionViolation, "g0 is not invertible on the upper half circle");
  if (g0.kind() == SymbolKind::Const) return g0;
  return PCSymbol::half_circle_extension(g0);
}

}  // namespace thinv
