// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "oracles.hpp"
#include "thinv/errors.hpp"
#include "thinv/fourier.hpp"
#include "thinv/pc_symbol.hpp"

using namespace thinv;

namespace {
const PCSymbol kA1 = PCSymbol::constant(std::polar(1.0, kPi / 4)) * PCSymbol::power_arc(0.25);
}

TEST_CASE("circle points are canonical") {
  CHECK(CirclePoint(-kPi / 2).angle() == doctest::Approx(3 * kPi / 2));
  CHECK(CirclePoint(kTwoPi).angle() == 0.0);
  CHECK(CirclePoint(kPi / 3).reflected().angle() == doctest::Approx(5 * kPi / 3));
  CHECK(CirclePoint::minus_one().value().real() == doctest::Approx(-1.0));
}

TEST_CASE("one-sided limits of the primitives") {
  const Complex beta(0.25, 0.0);
  const auto phi = PCSymbol::power_arc(beta);
  // Right limit at 1 is the start of the branch, exp(-i pi beta); left is exp(i pi beta).
  CHECK(std::abs(phi.evaluate(0.0, Side::right) - std::exp(Complex(0, -kPi * 0.25))) < 1e-15);
  CHECK(std::abs(phi.evaluate(0.0, Side::left) - std::exp(Complex(0, kPi * 0.25))) < 1e-15);
  CHECK(std::abs(phi.evaluate(kPi, Side::right) - 1.0) < 1e-15);

  const auto step = PCSymbol::piecewise_const({0.0, kPi}, {1.0, -1.0});
  CHECK(step.evaluate(0.0, Side::right) == Complex(1.0));
  CHECK(step.evaluate(0.0, Side::left) == Complex(-1.0));
  CHECK(step.evaluate(kPi, Side::left) == Complex(1.0));
  CHECK(step.evaluate(kPi, Side::right) == Complex(-1.0));

  CHECK(std::abs(PCSymbol::monomial(3).evaluate(kPi / 2, Side::left) - Complex(0, -1)) < 1e-15);
}

TEST_CASE("tilde swaps sides and reflects the argument") {
  const auto tl = PCSymbol::tilde(kA1);
  for (double th : {0.0, 0.7, kPi, 4.0}) {
    for (Side s : {Side::left, Side::right}) {
      CHECK(std::abs(tl.evaluate(th, s) - kA1.evaluate(-th, opposite(s))) < 1e-14);
    }
  }
  CHECK(PCSymbol::tilde(PCSymbol::monomial(2)).kind() == SymbolKind::Monomial);
  CHECK(PCSymbol::tilde(PCSymbol::monomial(2)).node().n == -2);
}

TEST_CASE("jump set of Example 1") {
  const auto jumps = jump_set(kA1);
  REQUIRE(jumps.size() == 1);
  CHECK(jumps[0].point.angle() == 0.0);
  CHECK(std::abs(jumps[0].right - Complex(1.0, 0.0)) < 1e-14);  // e^{i pi/4} e^{-i pi/4}
  CHECK(std::abs(jumps[0].left - Complex(0.0, 1.0)) < 1e-14);

  const auto none = jump_set(PCSymbol::monomial(1) + PCSymbol::constant(2.0));
  CHECK(none.empty());
}

TEST_CASE("evaluation grid contains the jump angles") {
  const auto step = PCSymbol::piecewise_const({1.0, 2.5}, {1.0, 2.0});
  const auto grid = evaluation_grid(step, 64);
  CHECK(std::find(grid.begin(), grid.end(), 1.0) != grid.end());
  CHECK(std::find(grid.begin(), grid.end(), 2.5) != grid.end());
  CHECK(std::is_sorted(grid.begin(), grid.end()));
}

TEST_CASE("inverse refuses vanishing values") {
  CHECK_THROWS_AS(PCSymbol::inverse(PCSymbol::constant(0.0)), Error);
  const auto inv = PCSymbol::inverse(kA1);
  CHECK(std::abs(inv.evaluate(1.0, Side::right) * kA1.evaluate(1.0, Side::right) - 1.0) < 1e-14);
}

TEST_CASE("Fourier coefficients: closed form against tanh-sinh and the classical formula") {
  // Example 1: a_0 = 2(1+i)/pi.
  const auto a0 = fourier_coefficient(kA1, 0);
  CHECK(a0.provenance == Provenance::analytic);
  CHECK(std::abs(a0.value - 2.0 * Complex(1, 1) / kPi) < 1e-14);

  for (int n = -4; n <= 4; ++n) {
    const Complex classical = std::polar(1.0, kPi / 4) * oracle::power_coefficient(0.25, n);
    CHECK(std::abs(fourier_coefficient(kA1, n).value - classical) < 1e-14);
    CHECK(std::abs(oracle::fourier(kA1, n, {}) - classical) < 1e-9);
  }

  const auto mixed = PCSymbol::piecewise_const({0.5, 2.0, 4.0}, {1.0, Complex(0, 2), -0.5}) *
                     PCSymbol::power_arc(Complex(0.3, 0.1), CirclePoint(1.0)) * PCSymbol::monomial(2);
  for (int n : {-3, 0, 1, 5}) {
    const Complex ref = oracle::fourier(mixed, n, {0.5, 1.0, 2.0, 4.0});
    CHECK(std::abs(fourier_coefficient(mixed, n).value - ref) < 1e-9);
    const auto q = fourier_by_quadrature(mixed, n);
    CHECK(q.provenance == Provenance::quadrature);
    REQUIRE(q.error_bound.has_value());
    CHECK(*q.error_bound <= kQuadratureTol);
    CHECK(std::abs(q.value - ref) < 1e-9);
  }
}

TEST_CASE("quadrature route for a symbol without closed form") {
  const auto s = PCSymbol::inverse(PCSymbol::constant(3.0) + PCSymbol::monomial(1));
  CHECK_FALSE(has_analytic_coefficients(s));
  // 1/(3 + t) = (1/3) sum (-t/3)^k.
  for (int n = 0; n < 4; ++n) {
    const auto c = fourier_coefficient(s, n);
    CHECK(std::abs(c.value - std::pow(-1.0 / 3.0, n) / 3.0) < 1e-10);
  }
  CHECK(std::abs(fourier_coefficient(s, -1).value) < 1e-10);
}

TEST_CASE("Laurent coefficients") {
  const auto poly = PCSymbol::constant(2.0) * PCSymbol::monomial(-1) + PCSymbol::monomial(3);
  const auto c = laurent_coefficients(poly);
  CHECK(c.size() == 2);
  CHECK(c.at(-1) == Complex(2.0));
  CHECK(c.at(3) == Complex(1.0));
  CHECK_THROWS_AS(laurent_coefficients(kA1), Error);
}
