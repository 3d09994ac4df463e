// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "thinv/errors.hpp"
#include "thinv/matching.hpp"

using namespace thinv;

namespace {
const PCSymbol kT = PCSymbol::monomial(1);
const PCSymbol kA1 = PCSymbol::constant(std::polar(1.0, kPi / 4)) * PCSymbol::power_arc(0.25);

double grid_error(const PCSymbol& f, const PCSymbol& g) { return max_difference(f, g, evaluation_grid(f + g, 256)); }
}  // namespace

TEST_CASE("Example 1 pair matches with a a~ = i") {
  const auto r = is_matching_pair(kA1, kA1 * kT);
  REQUIRE(std::holds_alternative<MatchingPair>(r));
  const auto& pair = std::get<MatchingPair>(r);
  REQUIRE(pair.product_constant.has_value());
  CHECK(std::abs(*pair.product_constant - Complex(0, 1)) < 1e-12);
  // c = a / (a t) = t^{-1}, d = a t / a~.
  CHECK(grid_error(pair.c, PCSymbol::monomial(-1)) < 1e-12);
  CHECK(grid_error(pair.d, kA1 * kT * PCSymbol::inverse(PCSymbol::tilde(kA1))) < 1e-12);
  CHECK(is_matching_function(pair.c));
  CHECK(is_matching_function(pair.d));
}

TEST_CASE("non-matching pairs are reported") {
  const auto r = is_matching_pair(kA1, PCSymbol::constant(2.0));
  REQUIRE(std::holds_alternative<NotMatching>(r));
  CHECK(std::get<NotMatching>(r).max_residual > 0.5);
  CHECK_THROWS_AS(make_matching_pair(kA1, PCSymbol::constant(2.0)), Error);
  CHECK_FALSE(is_matching_function(PCSymbol::constant(2.0)));
}

TEST_CASE("pairs with a vanishing b are rejected") {
  const auto step = PCSymbol::piecewise_const({0.0, kPi}, {1.0, 0.0});
  CHECK_THROWS_AS(is_matching_pair(step, step), Error);
}

TEST_CASE("monomial pairs multiply") {
  const auto p1 = make_matching_pair(PCSymbol::monomial(2), PCSymbol::constant(1.0));
  const auto p2 = make_matching_pair(PCSymbol::monomial(3), PCSymbol::constant(1.0));
  const auto prod = pair_product(p1, p2);
  CHECK(grid_error(prod.a, PCSymbol::monomial(5)) < 1e-14);
  CHECK(grid_error(prod.b, PCSymbol::constant(1.0)) < 1e-14);
  const auto inv = pair_inverse(p1);
  CHECK(grid_error(inv.a, PCSymbol::monomial(-2)) < 1e-14);
}

TEST_CASE("subordinated pair of Example 2") {
  const auto step = PCSymbol::piecewise_const({0.0, kPi}, {1.0, -1.0});
  const auto pair = make_matching_pair(PCSymbol::constant(Complex(0, 1)), step);
  const auto [c, d] = subordinated_pair(pair);
  CHECK(grid_error(c, Complex(0, 1) * step) < 1e-14);
  CHECK(grid_error(d, Complex(0, -1) * step) < 1e-14);
}

TEST_CASE("U symbols: the triangular form has determinant c d") {
  const auto pair = make_matching_pair(kA1, kA1 * kT);
  const auto tri = build_U(pair);
  const auto gen = build_U(pair.a, pair.b);
  for (double th : {0.0, 0.4, 2.0, kPi, 5.5}) {
    for (Side s : {Side::left, Side::right}) {
      const auto m = tri.evaluate(CirclePoint(th), s);
      const auto g = gen.evaluate(CirclePoint(th), s);
      const Complex cd = pair.c.evaluate(th, s) * pair.d.evaluate(th, s);
      CHECK(std::abs(m[0] * m[3] - m[1] * m[2] - cd) < 1e-12);
      CHECK(std::abs(g[0] * g[3] - g[1] * g[2] - cd) < 1e-12);
    }
  }
}
