// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "oracles.hpp"
#include "thinv/errors.hpp"
#include "thinv/finite_section.hpp"
#include "thinv/wiener_hopf.hpp"

using namespace thinv;

TEST_CASE("xi_{-beta} eta_beta reproduces phi_beta") {
  for (double beta : {0.25, 0.5, -0.3}) {
    const auto phi = power_function(beta);
    double err = 0.0;
    for (int k = 1; k < 512; ++k) {
      const CirclePoint t(kTwoPi * k / 512.0);
      err = std::max(err, std::abs(xi_power(-beta, t) * eta_power(beta, t) - phi.evaluate(t, Side::right)));
    }
    CHECK(err < 1e-10);
  }
}

TEST_CASE("binomial streams") {
  const Complex beta(0.5, 0.0);
  const auto c = binomial_stream(beta, 50);
  REQUIRE(c.size() == 50);
  CHECK(c[0] == Complex(1.0));
  // (1 - z)^beta: c_{k+1} / c_k = (k - beta) / (k + 1).
  for (int k = 0; k + 1 < 50; ++k) CHECK(std::abs(c[k + 1] - c[k] * (double(k) - beta) / double(k + 1)) < 1e-15);
  // Partial sums of (1 - z)^{1/2} at z = 1/2.
  Complex s = 0.0;
  for (int k = 0; k < 50; ++k) s += c[k] * std::pow(0.5, k);
  CHECK(std::abs(s - std::sqrt(0.5)) < 1e-14);

  const auto f = binomial_streams(0.25, 10);
  // -1/q < 1/4 < 1/p holds exactly for 1 < p < 4.
  CHECK(f.valid_p.first == 1.0);
  CHECK(f.valid_p.second == doctest::Approx(4.0).epsilon(1e-12));
  const auto g = binomial_streams(-0.25, 10);
  CHECK(g.valid_p.first == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("c0 series against the closed form and quadrature") {
  const auto s = c0_series(0.25);
  CHECK(s.tail_bound < 1e-12);
  const double closed = oracle::c0_closed_form(0.25);
  CHECK(std::abs(oracle::c0_quadrature(0.25) - closed) < 1e-8);
  CHECK(std::abs(s.value - closed) < 1e-11);
  CHECK(std::abs(s.value) > 1.0);
  CHECK(std::abs(c0_coefficient(1e-4) - 1.0) < 1e-6);
  CHECK_THROWS_AS(c0_series(0.5), Error);
}

TEST_CASE("one-sided inverse plans") {
  const HardyExponent p(1.5);
  const auto phi = power_function(0.5);
  const auto ind = *toeplitz_index(phi, p);

  const auto right = one_sided_inverse_plan(phi * PCSymbol::monomial(-2), p);
  CHECK(right.n == -(ind + 2));
  const auto left = one_sided_inverse_plan(phi * PCSymbol::monomial(3), p);
  CHECK(left.n == -(ind - 3));
  CHECK(left.side == InverseSide::left);

  // A right inverse of T(t^{-2}) composes back to the identity.
  const auto shift = one_sided_inverse_plan(PCSymbol::monomial(-2), p);
  CHECK(shift.side == InverseSide::right);
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(8);
  f(0) = 1.0;
  f(3) = Complex(0, 2);
  double residual = 0.0;
  const auto x = apply_one_sided_inverse(shift, f, 64, &residual);
  CHECK(residual < 1e-12);
  const auto back = apply_operator(PCSymbol::monomial(-2), PCSymbol::constant(0.0), 1, x, 6);
  CHECK((back - f.head(6)).norm() < 1e-12);
}

TEST_CASE("P xi_{1/2} P maps 1 to 1") {
  // Nonnegative coefficients of xi_{1/2} by quadrature: only the constant term survives.
  const auto xi = [](double th) { return xi_power(0.5, CirclePoint(th)); };
  CHECK(std::abs(oracle::fourier(xi, 0, {}) - 1.0) < 1e-10);
  for (int k = 1; k < 6; ++k) CHECK(std::abs(oracle::fourier(xi, k, {})) < 1e-10);
  CHECK(std::abs(binomial_streams(-0.5, 4).xi_coeffs[0] - 1.0) < 1e-15);
}
