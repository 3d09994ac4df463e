// SPDX-License-Identifier: Apache-2.0
#include "thinv/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "thinv/errors.hpp"

namespace thinv {
namespace {

const Complex kI(0.0, 1.0);

// C * exp(i * rate * theta)
struct Exp {
  Complex c;
  Complex rate;
};

// Normal form on [0, 2pi): cuts[0] = 0 < ... < cuts.back() = 2pi and, on each
// interval, a finite sum of exponentials.
struct PiecewiseExp {
  std::vector<double> cuts;
  std::vector<std::vector<Exp>> pieces;
};

PiecewiseExp single(std::vector<Exp> e) { return {{0.0, kTwoPi}, {std::move(e)}}; }

void simplify(std::vector<Exp>& es) {
  std::vector<Exp> out;
  for (const auto& e : es) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Exp& o) { return o.rate == e.rate; });
    if (it == out.end()) out.push_back(e);
    else it->c += e.c;
  }
  std::erase_if(out, [](const Exp& e) { return e.c == Complex(0.0, 0.0); });
  es = std::move(out);
}

const std::vector<Exp>& piece_at(const PiecewiseExp& f, double theta) {
  auto it = std::upper_bound(f.cuts.begin(), f.cuts.end(), theta);
  std::size_t k = (it == f.cuts.begin()) ? 0 : static_cast<std::size_t>(it - f.cuts.begin()) - 1;
  return f.pieces[std::min(k, f.pieces.size() - 1)];
}

std::vector<double> merged_cuts(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> all(x);
  all.insert(all.end(), y.begin(), y.end());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double c : all) {
    if (!out.empty() && c - out.back() < 1e-13) continue;
    out.push_back(c);
  }
  out.back() = kTwoPi;
  return out;
}

template <class Op>
PiecewiseExp combine(const PiecewiseExp& f, const PiecewiseExp& g, Op op) {
  PiecewiseExp r;
  r.cuts = merged_cuts(f.cuts, g.cuts);
  for (std::size_t k = 0; k + 1 < r.cuts.size(); ++k) {
    const double mid = 0.5 * (r.cuts[k] + r.cuts[k + 1]);
    auto v = op(piece_at(f, mid), piece_at(g, mid));
    simplify(v);
    r.pieces.push_back(std::move(v));
  }
  return r;
}

PiecewiseExp add(const PiecewiseExp& f, const PiecewiseExp& g) {
  return combine(f, g, [](const std::vector<Exp>& x, const std::vector<Exp>& y) {
    std::vector<Exp> v(x);
    v.insert(v.end(), y.begin(), y.end());
    return v;
  });
}

PiecewiseExp multiply(const PiecewiseExp& f, const PiecewiseExp& g) {
  return combine(f, g, [](const std::vector<Exp>& x, const std::vector<Exp>& y) {
    std::vector<Exp> v;
    for (const auto& a : x)
      for (const auto& b : y) v.push_back({a.c * b.c, a.rate + b.rate});
    return v;
  });
}

std::optional<PiecewiseExp> invert(PiecewiseExp f) {
  for (auto& p : f.pieces) {
    if (p.size() != 1 || std::abs(p.front().c) < kInvertibilityTol) return std::nullopt;
    p.front() = {1.0 / p.front().c, -p.front().rate};
  }
  return f;
}

// theta -> f(2pi - theta); C e^{i r (2pi - theta)} = (C e^{2 pi i r}) e^{-i r theta}.
PiecewiseExp reflect(const PiecewiseExp& f) {
  PiecewiseExp r;
  for (auto it = f.cuts.rbegin(); it != f.cuts.rend(); ++it) r.cuts.push_back(kTwoPi - *it);
  r.cuts.front() = 0.0;
  r.cuts.back() = kTwoPi;
  for (auto it = f.pieces.rbegin(); it != f.pieces.rend(); ++it) {
    std::vector<Exp> v;
    for (const auto& e : *it) v.push_back({e.c * std::exp(kTwoPi * kI * e.rate), -e.rate});
    r.pieces.push_back(std::move(v));
  }
  return r;
}

PiecewiseExp conjugated(PiecewiseExp f) {
  for (auto& p : f.pieces)
    for (auto& e : p) e = {std::conj(e.c), -std::conj(e.rate)};
  return f;
}

// Keeps f on [0, pi) and g on [pi, 2pi).
PiecewiseExp splice(const PiecewiseExp& f, const PiecewiseExp& g) {
  PiecewiseExp r;
  auto cuts = merged_cuts(merged_cuts(f.cuts, g.cuts), {0.0, kPi, kTwoPi});
  r.cuts = cuts;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    r.pieces.push_back(mid < kPi ? piece_at(f, mid) : piece_at(g, mid));
  }
  return r;
}

std::optional<PiecewiseExp> normal_form(const PCSymbol& s) {
  const auto& n = s.node();
  switch (n.kind) {
    case SymbolKind::Const: return single({{n.value, 0.0}});
    case SymbolKind::Monomial: return single({{1.0, static_cast<double>(n.n)}});
    case SymbolKind::PowerArc: {
      const double a = n.anchor;
      const Exp before{std::exp(kI * n.beta * (kPi - a)), n.beta};
      const Exp after{std::exp(-kI * n.beta * (kPi + a)), n.beta};
      if (a == 0.0) return single({after});
      return PiecewiseExp{{0.0, a, kTwoPi}, {{before}, {after}}};
    }
    case SymbolKind::PiecewiseConst: {
      PiecewiseExp r;
      r.cuts.push_back(0.0);
      if (n.breaks.front() > 0.0) r.pieces.push_back({{n.values.back(), 0.0}});
      for (std::size_t k = 0; k < n.breaks.size(); ++k) {
        if (n.breaks[k] > 0.0) r.cuts.push_back(n.breaks[k]);
        r.pieces.push_back({{n.values[k], 0.0}});
      }
      r.cuts.push_back(kTwoPi);
      return r;
    }
    case SymbolKind::HalfCircleInterp: {
      if (n.mode != InterpMode::exponential) return std::nullopt;
      const auto& v = n.values;
      // exp(u0 + (u1-u0) theta/pi) on the upper half, exp(l0 + (l1-l0)(theta-pi)/pi) below.
      const Complex ru = (v[1] - v[0]) / (kI * kPi);
      const Complex rl = (v[3] - v[2]) / (kI * kPi);
      return PiecewiseExp{{0.0, kPi, kTwoPi},
                          {{{std::exp(v[0]), ru}}, {{std::exp(v[2] - (v[3] - v[2])), rl}}}};
    }
    case SymbolKind::HalfCircleExtension: {
      auto g0 = normal_form(n.children.front());
      if (!g0) return std::nullopt;
      auto lower = invert(reflect(*g0));
      if (!lower) return std::nullopt;
      return splice(*g0, *lower);
    }
    case SymbolKind::Sum:
    case SymbolKind::Product: {
      std::optional<PiecewiseExp> acc;
      for (const auto& c : n.children) {
        auto f = normal_form(c);
        if (!f) return std::nullopt;
        if (!acc) acc = std::move(f);
        else acc = (n.kind == SymbolKind::Sum) ? add(*acc, *f) : multiply(*acc, *f);
      }
      return acc;
    }
    case SymbolKind::Inverse: {
      auto f = normal_form(n.children.front());
      if (!f) return std::nullopt;
      return invert(std::move(*f));
    }
    case SymbolKind::Conjugate: {
      auto f = normal_form(n.children.front());
      if (!f) return std::nullopt;
      return conjugated(std::move(*f));
    }
    case SymbolKind::Tilde: {
      auto f = normal_form(n.children.front());
      if (!f) return std::nullopt;
      return reflect(*f);
    }
  }
  return std::nullopt;
}

// (e^x - 1)/x without cancellation near 0.
Complex expm1_over_x(Complex x) {
  if (std::abs(x) < 1e-2) {
    Complex term = 1.0, acc = 0.0;
    for (int k = 1; k <= 8; ++k) {
      acc += term;
      term *= x / static_cast<double>(k + 1);
    }
    return acc;
  }
  return (std::exp(x) - 1.0) / x;
}

Complex coefficient_of(const PiecewiseExp& f, int n) {
  Complex acc = 0.0;
  for (std::size_t k = 0; k < f.pieces.size(); ++k) {
    const double s = f.cuts[k], len = f.cuts[k + 1] - f.cuts[k];
    for (const auto& e : f.pieces[k]) {
      const Complex w = kI * (e.rate - static_cast<double>(n));
      acc += e.c * std::exp(w * s) * len * expm1_over_x(w * len);
    }
  }
  return acc / kTwoPi;
}

}  // namespace

bool has_analytic_coefficients(const PCSymbol& s) { return normal_form(s).has_value(); }

FourierCoefficient fourier_by_quadrature(const PCSymbol& s, int n, double tol) {
  std::vector<double> cuts = s.jump_candidates();
  cuts.push_back(0.0);
  cuts.push_back(kPi);
  cuts.push_back(kTwoPi);
  std::sort(cuts.begin(), cuts.end());
  auto f = [&](double th) { return s.evaluate(th, Side::right) * std::polar(1.0, -n * th); };
  Complex total = 0.0;
  double err = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    if (b - a < 1e-14) continue;
    // Pre-split so each panel carries at most about two oscillations.
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) * (std::abs(n) + 1) / kPi)));
    for (int j = 0; j < panels; ++j) {
      const double lo = a + (b - a) * j / panels, hi = a + (b - a) * (j + 1) / panels;
      double e = 0.0;
      total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, tol * 1e-3, &e);
      err += e;
    }
  }
  const Complex value = total / kTwoPi;
  err /= kTwoPi;
  if (!(err <= tol)) {
    throw Error(ErrorCode::QuadratureNotConverged, "error bound " + std::to_string(err) + " for index " + std::to_string(n));
  }
  const double bound = std::max(err, 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(value)));
  return {n, value, Provenance::quadrature, bound};
}

FourierCoefficient fourier_coefficient(const PCSymbol& s, int n, double tol) {
  if (auto f = normal_form(s)) return {n, coefficient_of(*f, n), Provenance::analytic, std::nullopt};
  return fourier_by_quadrature(s, n, tol);
}

std::vector<Complex> fourier_range(const PCSymbol& s, int lo, int hi, double tol) {
  std::vector<Complex> out;
  if (hi < lo) return out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  if (auto f = normal_form(s)) {
    for (int n = lo; n <= hi; ++n) out.push_back(coefficient_of(*f, n));
  } else {
    for (int n = lo; n <= hi; ++n) out.push_back(fourier_by_quadrature(s, n, tol).value);
  }
  return out;
}

std::map<int, Complex> laurent_coefficients(const PCSymbol& s) {
  const auto& n = s.node();
  auto fail = [] { return Error(ErrorCode::NotPolynomial, "symbol is not a Laurent polynomial"); };
  std::map<int, Complex> r;
  switch (n.kind) {
    case SymbolKind::Const:
      if (n.value != Complex(0.0, 0.0)) r[0] = n.value;
      return r;
    case SymbolKind::Monomial: r[n.n] = 1.0; return r;
    case SymbolKind::Sum:
      for (const auto& c : n.children)
        for (const auto& [k, v] : laurent_coefficients(c)) r[k] += v;
      return r;
    case SymbolKind::Product: {
      r[0] = 1.0;
      for (const auto& c : n.children) {
        std::map<int, Complex> next;
        for (const auto& [j, u] : r)
          for (const auto& [k, v] : laurent_coefficients(c)) next[j + k] += u * v;
        r = std::move(next);
      }
      return r;
    }
    case SymbolKind::Tilde:
      for (const auto& [k, v] : laurent_coefficients(n.children.front())) r[-k] = v;
      return r;
    case SymbolKind::Conjugate:
      for (const auto& [k, v] : laurent_coefficients(n.children.front())) r[-k] = std::conj(v);
      return r;
    default: throw fail();
  }
}

}  // namespace thinv
