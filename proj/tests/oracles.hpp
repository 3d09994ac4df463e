// SPDX-License-Identifier: Apache-2.0
// Reference computations used by the tests. They share no numerical code with
// the library: quadrature is tanh-sinh, weights come straight from coth/sinh,
// windings from dense sampling.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "thinv/pc_symbol.hpp"

namespace oracle {

using Complex = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;

/// (1/2pi) int_0^{2pi} f(theta) e^{-i n theta} over pieces split at `breaks`.
inline Complex fourier(const std::function<Complex(double)>& f, int n, std::vector<double> breaks) {
  breaks.push_back(0.0);
  breaks.push_back(2 * kPi);
  std::sort(breaks.begin(), breaks.end());
  boost::math::quadrature::tanh_sinh<double> ts;
  Complex total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k], hi = breaks[k + 1];
    if (hi - lo < 1e-14) continue;
    auto g = [&](double th) { return f(th) * std::polar(1.0, -n * th); };
    const double re = ts.integrate([&](double th) { return g(th).real(); }, lo, hi);
    const double im = ts.integrate([&](double th) { return g(th).imag(); }, lo, hi);
    total += Complex(re, im);
  }
  return total / (2 * kPi);
}

inline Complex fourier(const thinv::PCSymbol& s, int n, const std::vector<double>& breaks) {
  return fourier([&](double th) { return s.evaluate(th, thinv::Side::right); }, n, breaks);
}

/// Classical coefficients of phi_beta(e^{i z}) = exp(i beta (z - pi)): sin(pi beta) / (pi (beta - n)).
inline Complex power_coefficient(Complex beta, int n) { return std::sin(kPi * beta) / (kPi * (beta - double(n))); }

inline Complex nu(double p, double y) {
  if (std::isinf(y)) return y > 0 ? 1.0 : 0.0;
  const Complex z = kPi * Complex(y, 1.0 / p);
  return 0.5 * (1.0 + std::cosh(z) / std::sinh(z));
}

inline Complex h(double p, double y) {
  if (std::isinf(y)) return 0.0;
  return 1.0 / std::sinh(kPi * Complex(y, 1.0 / p));
}

/// Continuous argument increment along a polyline of points.
inline double arg_increment(const std::vector<Complex>& pts) {
  double total = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) total += std::arg(pts[k] / pts[k - 1]);
  return total;
}

/// Winding of the arc-completed curve of a scalar PC symbol with jumps only at `jumps`,
/// sampled densely. Returns the minimum modulus seen through `min_mod`.
inline double toeplitz_winding(const thinv::PCSymbol& a, double p, std::vector<double> jumps, double* min_mod) {
  std::sort(jumps.begin(), jumps.end());
  if (jumps.empty()) jumps.push_back(0.0);
  std::vector<Complex> pts;
  const int per_segment = 20000;
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    const double t0 = jumps[k];
    const double t1 = k + 1 < jumps.size() ? jumps[k + 1] : jumps[0] + 2 * kPi;
    const Complex left = a.evaluate(t0, thinv::Side::left), right = a.evaluate(t0, thinv::Side::right);
    for (int j = 0; j <= 4000; ++j) {
      const double u = -1.0 + 2.0 * j / 4000.0;
      const double y = std::abs(u) == 1.0 ? u * INFINITY : std::atanh(u) * 3.0;
      const Complex v = nu(p, y);
      pts.push_back(left * (1.0 - v) + right * v);
    }
    for (int j = 1; j < per_segment; ++j) pts.push_back(a.evaluate(t0 + (t1 - t0) * j / per_segment, thinv::Side::right));
  }
  pts.push_back(pts.front());
  double m = INFINITY;
  for (auto z : pts) m = std::min(m, std::abs(z));
  if (min_mod) *min_mod = m;
  return arg_increment(pts) / (2 * kPi);
}

/// c_0 = Gamma(1 - 2 beta) / Gamma(1 - beta)^2, the zeroth coefficient of |1 - t|^{-2 beta}.
inline double c0_closed_form(double beta) {
  return boost::math::tgamma(1.0 - 2.0 * beta) / std::pow(boost::math::tgamma(1.0 - beta), 2);
}

/// Same value by quadrature of |2 sin(theta/2)|^{-2 beta} / 2pi.
inline double c0_quadrature(double beta) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double v = ts.integrate([&](double th) { return std::pow(2.0 * std::sin(th / 2.0), -2.0 * beta); }, 0.0, 2 * kPi);
  return v / (2 * kPi);
}

/// Dense matrices of T(a) and H(b) for Laurent polynomials given by coefficients.
inline Complex coeff(const std::map<int, Complex>& c, int k) {
  auto it = c.find(k);
  return it == c.end() ? Complex(0.0) : it->second;
}

}  // namespace oracle
