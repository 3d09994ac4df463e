// SPDX-License-Identifier: Apache-2.0
#include "thinv/wiener_hopf.hpp"

#include <algorithm>
#include <cmath>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>

#include "thinv/errors.hpp"
#include "thinv/finite_section.hpp"

namespace thinv {

PCSymbol power_function(Complex beta, CirclePoint anchor) { return PCSymbol::power_arc(beta, anchor); }

Complex xi_power(Complex beta, CirclePoint t) {
  const Complex z = 1.0 - 1.0 / t.value();
  if (std::abs(z) == 0.0) throw Error(ErrorCode::OutOfDomain, "xi is singular at t = 1");
  return std::exp(beta * std::log(z));
}

Complex eta_power(Complex beta, CirclePoint t) {
  const Complex z = 1.0 - t.value();
  if (std::abs(z) == 0.0) throw Error(ErrorCode::OutOfDomain, "eta is singular at t = 1");
  return std::exp(beta * std::log(z));
}

std::vector<Complex> binomial_stream(Complex beta, int n) {
  std::vector<Complex> c;
  if (n <= 0) return c;
  c.reserve(static_cast<std::size_t>(n));
  c.push_back(1.0);
  for (int k = 0; k + 1 < n; ++k) c.push_back(c.back() * (static_cast<double>(k) - beta) / static_cast<double>(k + 1));
  return c;
}

PowerFactorization binomial_streams(Complex beta, int n) {
  if (n < 1) throw Error(ErrorCode::PreconditionViolation, "need at least one term");
  PowerFactorization f;
  f.beta = beta;
  f.xi_coeffs = binomial_stream(-beta, n);
  f.eta_coeffs = binomial_stream(beta, n);
  // Need -1/q < Re beta < 1/p.
  const double rb = beta.real();
  double lo = 1.0, hi = std::numeric_limits<double>::infinity();
  if (rb > 0.0) hi = rb < 1.0 ? 1.0 / rb : 1.0;
  if (rb < 0.0) lo = rb > -1.0 ? std::max(1.0, 1.0 / (1.0 + rb)) : hi;
  f.valid_p = {lo, hi};
  return f;
}

SeriesValue c0_series(double beta, double tail_tol) {
  if (!(beta > 0.0 && beta < 0.5)) throw Error(ErrorCode::SeriesDiverges, "c0 series needs 0 < beta < 1/2");
  using boost::math::polygamma;
  const double gamma_beta = boost::math::tgamma(beta);
  // Smooth interpolant of the k-th term ((beta)_k / k!)^2 = (Gamma(x + beta) / (Gamma(beta) Gamma(x + 1)))^2.
  auto f = [&](double x) {
    const double r = boost::math::tgamma_delta_ratio(x + beta, 1.0 - beta) / gamma_beta;
    return r * r;
  };
  auto d = [&](int order, double x) { return 2.0 * (polygamma(order, x + beta) - polygamma(order, x + 1.0)); };
  int n = 256;
  for (;;) {
    // Explicit sum of terms 0..n-1.
    double sum = 0.0, term = 1.0;
    for (int k = 0; k < n; ++k) {
      sum += term * term;
      term *= (k + beta) / (k + 1.0);
    }
    // Euler-Maclaurin: sum_{k>=n} f(k) = int_n^inf f + f(n)/2 - f'(n)/12 + f'''(n)/720 - ...
    const double x = static_cast<double>(n);
    const double L = d(0, x), L1 = d(1, x), L2 = d(2, x);
    const double fx = f(x);
    const double f1 = fx * L;
    const double f3 = fx * (L * L * L + 3.0 * L * L1 + L2);
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    const double integral = integrator.integrate([&](double s) { return f(x + s); }, 0.0,
                                                 std::numeric_limits<double>::infinity(), 1e-15, &err);
    const double tail = integral + 0.5 * fx - f1 / 12.0 + f3 / 720.0;
    // The next correction term bounds the remainder; add the quadrature error on top.
    const double L3 = d(3, x), L4 = d(4, x);
    const double f5 = fx * (std::pow(L, 5) + 10.0 * std::pow(L, 3) * L1 + 15.0 * L * L1 * L1 +
                            10.0 * L * L * L2 + 10.0 * L1 * L2 + 5.0 * L * L3 + L4);
    const double bound = std::fabs(f5) / 30240.0 + err + 64.0 * std::numeric_limits<double>::epsilon() * sum;
    if (bound < tail_tol || n >= (1 << 20)) {
      if (!(bound < tail_tol)) throw Error(ErrorCode::SeriesDiverges, "tail bound not reached");
      return {Complex(sum + tail, 0.0), bound, n};
    }
    n *= 2;
  }
}

Complex c0_coefficient(double beta, double tail_tol) { return c0_series(beta, tail_tol).value; }

OneSidedInversePlan one_sided_inverse_plan(const PCSymbol& psi, const HardyExponent& p) {
  const auto ind = toeplitz_index(psi, p);
  if (!ind) throw Error(ErrorCode::NotFredholm, "T(psi) is not Fredholm");
  OneSidedInversePlan plan;
  plan.n = -*ind;
  plan.psi0 = psi * PCSymbol::monomial(-plan.n);
  if (plan.n == 0) {
    plan.side = InverseSide::two_sided;
    plan.order = "T^-1(psi0)";
  } else if (plan.n < 0) {
    plan.side = InverseSide::right;
    plan.order = "T^-1(psi0) T(t^" + std::to_string(-plan.n) + ")";
  } else {
    plan.side = InverseSide::left;
    plan.order = "T(t^" + std::to_string(-plan.n) + ") T^-1(psi0)";
  }
  return plan;
}

Eigen::VectorXcd apply_one_sided_inverse(const OneSidedInversePlan& plan, const Eigen::VectorXcd& f, int section,
                                         double* residual) {
  const int m = static_cast<int>(f.size());
  if (section < m + std::abs(plan.n)) throw Error(ErrorCode::PreconditionViolation, "section too small");
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(section);
  g.head(m) = f;
  // T(t^k) shifts coefficients down by k (k > 0) or up and truncates (k < 0).
  auto shift = [&](const Eigen::VectorXcd& x, int k) {
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const Eigen::Index src = j - k;
      if (src >= 0 && src < x.size()) y(j) = x(src);
    }
    return y;
  };
  Eigen::VectorXcd out;
  if (plan.n <= 0) {
    out = section_solve(plan.psi0, shift(g, -plan.n), section, residual);
  } else {
    out = shift(section_solve(plan.psi0, g, section, residual), -plan.n);
  }
  return out.head(m);
}

}  // namespace thinv
