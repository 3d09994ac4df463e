// SPDX-License-Identifier: Apache-2.0
#include "thinv/symbol_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "thinv/errors.hpp"

namespace thinv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxArgStep = 0.25;
constexpr int kMaxDepth = 20;
constexpr int kCircleSeeds = 1024;
const Complex kI(0.0, 1.0);

double y_from_u(double u) {
  if (u >= 1.0) return kInf;
  if (u <= -1.0) return -kInf;
  return std::atanh(u);
}

// Roots of c2 x^2 + c1 x + c0, dropping the degenerate ones.
std::vector<Complex> quadratic_roots(Complex c2, Complex c1, Complex c0) {
  const double scale = std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) return {};
  if (std::abs(c2) < 1e-14 * scale) {
    if (std::abs(c1) < 1e-14 * scale) return {};
    return {-c0 / c1};
  }
  const Complex disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
  // Pick the sign that avoids cancellation.
  const Complex qq = -0.5 * (c1 + (std::real(std::conj(c1) * disc) >= 0.0 ? disc : -disc));
  std::vector<Complex> r;
  if (std::abs(qq) > 0.0) {
    r.push_back(qq / c2);
    r.push_back(c0 / qq);
  } else {
    r.push_back(Complex(0.0));
    r.push_back(Complex(0.0));
  }
  return r;
}

// y values where the arc parameter W = exp(2 pi (y + i/p)) has modulus |w|.
void add_w_roots(const std::vector<Complex>& roots, std::vector<double>& ys) {
  for (Complex w : roots) {
    if (std::abs(w) > 0.0 && std::isfinite(std::abs(w))) ys.push_back(std::log(std::abs(w)) / kTwoPi);
  }
}

// Same for E = exp(pi (y + i/p)).
void add_e_roots(const std::vector<Complex>& roots, std::vector<double>& ys) {
  for (Complex e : roots) {
    if (std::abs(e) > 0.0 && std::isfinite(std::abs(e))) ys.push_back(std::log(std::abs(e)) / kPi);
  }
}

struct CurveModel {
  std::vector<double> jumps;  // sorted canonical angles that carry arcs
  std::function<Complex(double, Side)> point;
  std::function<Complex(double, double)> arc;         // (angle, y)
  std::function<std::vector<double>(double)> arc_ys;  // extra y seeds at a jump
};

class CurveBuilder {
 public:
  explicit CurveBuilder(SymbolCurve& out) : out_(out) {}

  template <class F>
  void segment(int id, const std::vector<double>& seeds, F&& f, bool arc_params) {
    std::vector<std::pair<double, Complex>> pts;
    for (double s : seeds) pts.emplace_back(s, f(s));
    emit(id, pts.front().first, pts.front().second, arc_params);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      refine(id, f, pts[k].first, pts[k].second, pts[k + 1].first, pts[k + 1].second, 0, arc_params);
      emit(id, pts[k + 1].first, pts[k + 1].second, arc_params);
    }
  }

 private:
  template <class F>
  void refine(int id, F& f, double p0, Complex z0, double p1, Complex z1, int depth, bool arc_params) {
    if (depth >= kMaxDepth) return;
    const bool coarse = z0 == Complex(0.0) || z1 == Complex(0.0) || std::fabs(std::arg(z1 / z0)) > kMaxArgStep;
    if (!coarse) return;
    const double pm = 0.5 * (p0 + p1);
    const Complex zm = f(pm);
    refine(id, f, p0, z0, pm, zm, depth + 1, arc_params);
    emit(id, pm, zm, arc_params);
    refine(id, f, pm, zm, p1, z1, depth + 1, arc_params);
  }

  void emit(int id, double param, Complex z, bool arc_params) {
    out_.samples.push_back({id, arc_params ? y_from_u(param) : param, z});
  }

  SymbolCurve& out_;
};

std::vector<double> arc_seeds(std::vector<double> extra_ys) {
  std::vector<double> u;
  const int n = 257;
  const double delta = 1e-6;
  u.push_back(-1.0);
  for (int k = 0; k < n; ++k) u.push_back(k == n / 2 ? 0.0 : -1.0 + delta + k * (2.0 - 2.0 * delta) / (n - 1));
  u.push_back(1.0);
  for (double y : extra_ys) {
    if (std::isfinite(y)) u.push_back(std::tanh(y));
  }
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

SymbolCurve build_curve(const CurveModel& m) {
  SymbolCurve curve;
  CurveBuilder b(curve);
  int id = 0;
  auto circle_part = [&](double lo, double hi) {
    const int n = std::max(16, static_cast<int>(std::ceil(kCircleSeeds * (hi - lo) / kTwoPi)));
    std::vector<double> seeds;
    for (int k = 0; k <= n; ++k) seeds.push_back(lo + (hi - lo) * k / n);
    b.segment(id++, seeds, [&](double th) {
      if (th == lo) return m.point(lo, Side::right);
      if (th == hi) return m.point(hi, Side::left);
      return m.point(th, Side::right);
    }, false);
  };
  if (m.jumps.empty()) {
    circle_part(0.0, kTwoPi);
  } else {
    for (std::size_t k = 0; k < m.jumps.size(); ++k) {
      const double th = m.jumps[k];
      b.segment(id++, arc_seeds(m.arc_ys(th)), [&](double u) { return m.arc(th, y_from_u(u)); }, true);
      const double next = (k + 1 < m.jumps.size()) ? m.jumps[k + 1] : m.jumps.front() + kTwoPi;
      circle_part(th, next);
    }
  }
  double mm = kInf;
  for (const auto& s : curve.samples) mm = std::min(mm, std::abs(s.value));
  curve.min_modulus = mm;
  curve.closed = std::abs(curve.samples.front().value - curve.samples.back().value) < 1e-9;
  return curve;
}

std::vector<double> jump_angles(const std::vector<Jump>& js) {
  std::vector<double> a;
  for (const auto& j : js) a.push_back(j.point.angle());
  return a;
}

Complex det2(const Eigen::Matrix2cd& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

Eigen::Matrix2cd to_matrix(const std::array<Complex, 4>& e) {
  Eigen::Matrix2cd m;
  m << e[0], e[1], e[2], e[3];
  return m;
}

// Numerator and denominator structure of the scalar symbol at t = +-1:
// [a+ E^2 + s (b+ - b-) E - a-] / (E^2 - 1).
struct ScalarEnd {
  Complex a_minus, a_plus, b_jump;
  double sign;
  Complex value(const HardyExponent& p, double y) const {
    const Weights w = weight_functions(p, y);
    return a_plus * w.nu + a_minus * (1.0 - w.nu) + sign * 0.5 * b_jump * w.h;
  }
  std::vector<double> root_ys() const {
    std::vector<double> ys;
    add_e_roots(quadratic_roots(a_plus, sign * b_jump, -a_minus), ys);
    return ys;
  }
};

ScalarEnd scalar_end(const PCSymbol& a, const PCSymbol& b, CirclePoint t) {
  const double sign = (t.angle() == 0.0) ? 1.0 : -1.0;
  return {a.evaluate(t, Side::left), a.evaluate(t, Side::right),
          b.evaluate(t, Side::right) - b.evaluate(t, Side::left), sign};
}

// Entries of the 2x2 symbol at t in the open upper half circle.
struct InteriorBlock {
  Complex a_minus, a_plus, ab_minus, ab_plus;  // a at t and at conj(t)
  Complex beta1, beta2;
  Eigen::Matrix2cd value(const HardyExponent& p, double y) const {
    const Weights w = weight_functions(p, y);
    Eigen::Matrix2cd m;
    m << a_plus * w.nu + a_minus * (1.0 - w.nu), beta1 * w.h, beta2 * w.h, ab_plus * w.nu + ab_minus * (1.0 - w.nu);
    return m;
  }
  bool constant_in_y() const { return a_minus == a_plus && ab_minus == ab_plus && beta1 == 0.0 && beta2 == 0.0; }
  // det numerator (a+ W - a-)(a'+ W - a'-) - 4 beta1 beta2 W.
  std::vector<double> root_ys() const {
    std::vector<double> ys;
    add_w_roots(quadratic_roots(a_plus * ab_plus, -(a_plus * ab_minus + a_minus * ab_plus) - 4.0 * beta1 * beta2,
                                a_minus * ab_minus),
                ys);
    return ys;
  }
};

InteriorBlock interior_block(const PCSymbol& a, const PCSymbol& b, CirclePoint t) {
  const CirclePoint tb = t.reflected();
  InteriorBlock blk;
  blk.a_minus = a.evaluate(t, Side::left);
  blk.a_plus = a.evaluate(t, Side::right);
  blk.ab_minus = a.evaluate(tb, Side::left);
  blk.ab_plus = a.evaluate(tb, Side::right);
  blk.beta1 = (b.evaluate(t, Side::right) - b.evaluate(t, Side::left)) / (2.0 * kI);
  blk.beta2 = (b.evaluate(tb, Side::left) - b.evaluate(tb, Side::right)) / (2.0 * kI);
  return blk;
}

}  // namespace

HardyExponent::HardyExponent(double p) : p_(p), q_(p / (p - 1.0)) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::OutOfDomain, "p must lie in (1, inf)");
}

Weights weight_functions(const HardyExponent& p, double y) {
  if (y == kInf) return {1.0, 0.0};
  if (y == -kInf) return {0.0, 0.0};
  const Complex z = kPi * Complex(y, 1.0 / p.p());
  if (y >= 0.0) {
    const Complex em = std::exp(-z);
    const Complex den = 1.0 - em * em;
    if (std::abs(den) < 1e-300) throw Error(ErrorCode::PoleHit, "sinh vanishes");
    return {1.0 / den, 2.0 * em / den};
  }
  const Complex ep = std::exp(z);
  const Complex den = ep * ep - 1.0;
  if (std::abs(den) < 1e-300) throw Error(ErrorCode::PoleHit, "sinh vanishes");
  return {ep * ep / den, 2.0 * ep / den};
}

std::vector<double> default_y_grid(int n, double delta) {
  // Built from the u <= 0 half and mirrored so the grid is exactly symmetric.
  std::vector<double> half;
  for (int k = 0; k < (n + 1) / 2; ++k) {
    const double u = (n % 2 == 1 && k == n / 2) ? 0.0 : -1.0 + delta + k * (2.0 - 2.0 * delta) / (n - 1);
    half.push_back(std::atanh(u));
  }
  std::vector<double> y{-kInf};
  y.insert(y.end(), half.begin(), half.end());
  for (int k = n / 2 - 1; k >= 0; --k) y.push_back(-half[k]);
  y.push_back(kInf);
  return y;
}

SymbolCurve arc(Complex u, Complex w, const HardyExponent& p, int n_samples) {
  if (u == w) throw Error(ErrorCode::DegenerateArc, "arc endpoints coincide");
  SymbolCurve c;
  for (double y : default_y_grid(n_samples)) {
    const Weights wt = weight_functions(p, y);
    c.samples.push_back({0, y, u * (1.0 - wt.nu) + w * wt.nu});
  }
  double mm = kInf;
  for (const auto& s : c.samples) mm = std::min(mm, std::abs(s.value));
  c.min_modulus = mm;
  return c;
}

SymbolCurve toeplitz_symbol_curve(const PCSymbol& a, const HardyExponent& p) {
  const auto jumps = jump_set(a);
  CurveModel m;
  m.jumps = jump_angles(jumps);
  m.point = [&](double th, Side s) { return a.evaluate(th, s); };
  m.arc = [&](double th, double y) {
    const Weights w = weight_functions(p, y);
    return a.evaluate(th, Side::right) * w.nu + a.evaluate(th, Side::left) * (1.0 - w.nu);
  };
  m.arc_ys = [&](double th) {
    std::vector<double> ys;
    add_w_roots(quadratic_roots(0.0, a.evaluate(th, Side::right), -a.evaluate(th, Side::left)), ys);
    return ys;
  };
  return build_curve(m);
}

SymbolCurve matrix_det_curve(const MatrixSymbol& ms, const HardyExponent& p) {
  std::vector<double> jumps;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (double th : jump_angles(jump_set(ms(i, j)))) jumps.push_back(th);
  std::sort(jumps.begin(), jumps.end());
  jumps.erase(std::unique(jumps.begin(), jumps.end(), [](double x, double y) { return y - x < kAngleSnap; }),
              jumps.end());
  CurveModel m;
  m.jumps = jumps;
  m.point = [&](double th, Side s) { return det2(to_matrix(ms.evaluate(CirclePoint(th), s))); };
  m.arc = [&](double th, double y) {
    const Weights w = weight_functions(p, y);
    const auto lo = to_matrix(ms.evaluate(CirclePoint(th), Side::left));
    const auto hi = to_matrix(ms.evaluate(CirclePoint(th), Side::right));
    return det2(lo * (1.0 - w.nu) + hi * w.nu);
  };
  m.arc_ys = [&](double th) {
    const auto lo = to_matrix(ms.evaluate(CirclePoint(th), Side::left));
    const auto hi = to_matrix(ms.evaluate(CirclePoint(th), Side::right));
    const Complex mid = hi(0, 0) * lo(1, 1) + lo(0, 0) * hi(1, 1) - hi(0, 1) * lo(1, 0) - lo(0, 1) * hi(1, 0);
    std::vector<double> ys;
    add_w_roots(quadratic_roots(det2(hi), -mid, det2(lo)), ys);
    return ys;
  };
  return build_curve(m);
}

int winding(const SymbolCurve& curve, double tol) {
  if (curve.samples.size() < 2) throw Error(ErrorCode::NonIntegerWinding, "curve has fewer than two samples");
  if (!(curve.min_modulus > tol)) {
    throw Error(ErrorCode::CurveThroughOrigin, "minimum modulus " + std::to_string(curve.min_modulus));
  }
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < curve.samples.size(); ++k) {
    total += std::arg(curve.samples[k + 1].value / curve.samples[k].value);
  }
  if (!curve.closed) total += std::arg(curve.samples.front().value / curve.samples.back().value);
  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  if (std::fabs(turns - rounded) >= 0.01) {
    throw Error(ErrorCode::NonIntegerWinding, "residual " + std::to_string(std::fabs(turns - rounded)));
  }
  return static_cast<int>(rounded);
}

std::optional<int> toeplitz_index(const PCSymbol& a, const HardyExponent& p) {
  const auto curve = toeplitz_symbol_curve(a, p);
  if (!(curve.min_modulus > kWindingTol)) return std::nullopt;
  return -winding(curve);
}

std::optional<int> matrix_toeplitz_index(const MatrixSymbol& m, const HardyExponent& p) {
  const auto curve = matrix_det_curve(m, p);
  if (!(curve.min_modulus > kWindingTol)) return std::nullopt;
  return -winding(curve);
}

ThSymbolValue th_symbol(const PCSymbol& a, const PCSymbol& b, const HardyExponent& p, CirclePoint t, double y) {
  if (t.angle() == 0.0 || t.angle() == kPi) return scalar_end(a, b, t).value(p, y);
  if (!t.in_open_upper_half()) throw Error(ErrorCode::OutOfDomain, "t must lie on the closed upper half circle");
  return interior_block(a, b, t).value(p, y);
}

ThFredholmCheck th_fredholm_check(const PCSymbol& a, const PCSymbol& b, const HardyExponent& p, int t_samples,
                                  double tol) {
  const auto all = PCSymbol::sum({a, b, PCSymbol::tilde(a), PCSymbol::tilde(b)});
  std::vector<double> ts;
  for (double th : evaluation_grid(all, t_samples)) {
    if (th <= kPi) ts.push_back(th);
  }
  const auto base_y = default_y_grid();
  ThFredholmCheck res;
  res.min_modulus = kInf;
  auto record = [&](double v, double th, double y) {
    if (v < res.min_modulus) {
      res.min_modulus = v;
      res.witness_t = CirclePoint(th);
      res.witness_y = y;
    }
  };
  auto y_grid = [&](std::vector<double> extra) {
    std::vector<double> ys = base_y;
    ys.insert(ys.end(), extra.begin(), extra.end());
    return ys;
  };
  for (double th : ts) {
    const CirclePoint t(th);
    if (th == 0.0 || th == kPi) {
      const ScalarEnd e = scalar_end(a, b, t);
      if (e.a_minus == e.a_plus && e.b_jump == 0.0) {
        record(std::abs(e.a_plus), th, 0.0);
        continue;
      }
      for (double y : y_grid(e.root_ys())) record(std::abs(e.value(p, y)), th, y);
      continue;
    }
    const InteriorBlock blk = interior_block(a, b, t);
    if (blk.constant_in_y()) {
      record(std::abs(blk.a_plus * blk.ab_plus), th, 0.0);
      continue;
    }
    for (double y : y_grid(blk.root_ys())) record(std::abs(det2(blk.value(p, y))), th, y);
  }
  res.fredholm = res.min_modulus > tol;
  return res;
}

Splitting split_symbols(const PCSymbol& a, const PCSymbol& b) {
  const CirclePoint one = CirclePoint::one(), minus_one = CirclePoint::minus_one();
  const Complex a1p = a.evaluate(one, Side::right), a1m = a.evaluate(one, Side::left);
  const Complex am1p = a.evaluate(minus_one, Side::right), am1m = a.evaluate(minus_one, Side::left);
  if (std::min({std::abs(a1p), std::abs(a1m), std::abs(am1p), std::abs(am1m)}) < kInvertibilityTol) {
    throw Error(ErrorCode::SplitFailure, "a vanishes at 1 or -1");
  }
  // Log branches chosen per half circle so the interpolated argument moves by less than pi.
  const Complex lu0 = std::log(a1p), lu1 = lu0 + std::log(am1m / a1p);
  const Complex ll0 = std::log(am1p), ll1 = ll0 + std::log(a1m / am1p);
  Splitting s;
  s.g = PCSymbol::half_circle_interp(lu0, lu1, ll0, ll1, InterpMode::exponential);
  s.b0 = PCSymbol::half_circle_interp(b.evaluate(one, Side::right), b.evaluate(minus_one, Side::left),
                                      b.evaluate(minus_one, Side::right), b.evaluate(one, Side::left),
                                      InterpMode::linear);
  return s;
}

ThIndexParts th_index_parts(const PCSymbol& a, const PCSymbol& b, const HardyExponent& p) {
  const auto check = th_fredholm_check(a, b, p);
  if (!check.fredholm) {
    throw Error(ErrorCode::NotFredholm, "symbol degenerates at angle " + std::to_string(check.witness_t.angle()) +
                                            ", y = " + std::to_string(check.witness_y));
  }
  const Splitting sp = split_symbols(a, b);

  // T(g) + H(b0) lies in the Toeplitz algebra: g along the circle, Hankel-corrected arcs at +-1.
  CurveModel m;
  std::vector<ScalarEnd> ends;
  for (const CirclePoint t : {CirclePoint::one(), CirclePoint::minus_one()}) {
    const ScalarEnd e = scalar_end(a, b, t);
    if (std::abs(e.a_plus - e.a_minus) > 0.0 || std::abs(e.b_jump) > 0.0) {
      m.jumps.push_back(t.angle());
      ends.push_back(e);
    }
  }
  auto end_at = [&](double th) -> const ScalarEnd& {
    return ends.size() == 2 ? ends[th == 0.0 ? 0 : 1] : ends.front();
  };
  m.point = [&](double th, Side s) { return sp.g.evaluate(th, s); };
  m.arc = [&](double th, double y) { return end_at(th).value(p, y); };
  m.arc_ys = [&](double th) { return end_at(th).root_ys(); };
  const SymbolCurve c1 = build_curve(m);

  const PCSymbol ginv = PCSymbol::inverse(sp.g);
  const PCSymbol a2 = a * ginv;
  const PCSymbol b2 = (b - sp.b0) * ginv;
  const MatrixSymbol u1 = build_U(a2, b2);
  const SymbolCurve c2 = matrix_det_curve(u1, p);

  ThIndexParts parts;
  parts.continuous_part_winding = winding(c1);
  parts.block_index = -winding(c2);
  if (parts.block_index % 2 != 0) {
    throw Error(ErrorCode::NonIntegerWinding, "odd block index " + std::to_string(parts.block_index));
  }
  parts.index = -parts.continuous_part_winding + parts.block_index / 2;
  return parts;
}

int th_index(const PCSymbol& a, const PCSymbol& b, const HardyExponent& p) { return th_index_parts(a, b, p).index; }

void write_curve_csv(std::ostream& os, const SymbolCurve& curve) {
  os << "segment,param,re,im\n";
  os.precision(17);
  for (const auto& s : curve.samples) {
    os << s.segment << ',' << s.param << ',' << s.value.real() << ',' << s.value.imag() << '\n';
  }
}

}  // namespace thinv
