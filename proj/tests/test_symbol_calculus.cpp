// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "thinv/errors.hpp"
#include "thinv/symbol_calculus.hpp"

using namespace thinv;

namespace {
const PCSymbol kT = PCSymbol::monomial(1);
const PCSymbol kA1 = PCSymbol::constant(std::polar(1.0, kPi / 4)) * PCSymbol::power_arc(0.25);
const PCSymbol kStep = PCSymbol::piecewise_const({0.0, kPi}, {1.0, -1.0});
}  // namespace

TEST_CASE("Hardy exponents") {
  CHECK(HardyExponent(3.0).q() == doctest::Approx(1.5));
  CHECK_THROWS_AS(HardyExponent(1.0), Error);
  CHECK_THROWS_AS(HardyExponent(0.5), Error);
}

TEST_CASE("weights against the coth/sinh oracle") {
  for (double p : {1.2, 1.5, 2.0, 3.0, 4.0}) {
    const HardyExponent hp(p);
    for (double y : {-30.0, -2.5, -0.3, 0.0, 0.01, 1.0, 7.0}) {
      const auto w = weight_functions(hp, y);
      CHECK(std::abs(w.nu - oracle::nu(p, y)) < 1e-12);
      CHECK(std::abs(w.h - oracle::h(p, y)) < 1e-12);
    }
  }
  const auto mid = weight_functions(HardyExponent(2.0), 0.0);
  CHECK(std::abs(mid.nu - 0.5) < 1e-15);
  CHECK(std::abs(mid.h - Complex(0, -1)) < 1e-15);
  const auto inf = weight_functions(HardyExponent(3.0), INFINITY);
  CHECK(inf.nu == Complex(1.0));
  CHECK(inf.h == Complex(0.0));
  CHECK(std::abs(std::abs(weight_functions(HardyExponent(4.0), 0.0).h.imag()) - std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("y grid") {
  const auto ys = default_y_grid();
  CHECK(ys.size() == 259);
  CHECK(std::isinf(ys.front()));
  CHECK(std::isinf(ys.back()));
  CHECK(std::find(ys.begin(), ys.end(), 0.0) != ys.end());
  for (std::size_t k = 0; k < ys.size(); ++k) CHECK(ys[k] == -ys[ys.size() - 1 - k]);
}

TEST_CASE("arcs") {
  const auto seg = arc(0.0, 1.0, HardyExponent(2.0));
  for (const auto& s : seg.samples) {
    CHECK(std::abs(s.value.imag()) < 1e-15);
    CHECK(s.value.real() >= -1e-15);
    CHECK(s.value.real() <= 1.0 + 1e-15);
  }
  const auto through = arc(Complex(0, -1), Complex(0, 1), HardyExponent(2.0));
  CHECK(through.min_modulus < 1e-12);
  CHECK_THROWS_AS(arc(1.0, 1.0, HardyExponent(3.0)), Error);

  // p > 2 bends right of u -> w, p < 2 left.
  const auto right = arc(0.0, 1.0, HardyExponent(4.0));
  const auto left = arc(0.0, 1.0, HardyExponent(1.5));
  CHECK(right.samples[right.samples.size() / 2].value.imag() < 0.0);
  CHECK(left.samples[left.samples.size() / 2].value.imag() > 0.0);
}

TEST_CASE("winding of monomials") {
  for (int n = -5; n <= 5; ++n) {
    const auto ind = toeplitz_index(PCSymbol::monomial(n), HardyExponent(1.7));
    REQUIRE(ind.has_value());
    CHECK(*ind == -n);
  }
  CHECK_THROWS_AS(winding(toeplitz_symbol_curve(kStep, HardyExponent(2.0))), Error);
}

TEST_CASE("Example 1 Toeplitz indices against the dense-sampling oracle") {
  const auto pair = make_matching_pair(kA1, kA1 * kT);
  for (double p : {1.5, 3.0}) {
    double mm = 0.0;
    const double w = oracle::toeplitz_winding(pair.d, p, {0.0}, &mm);
    REQUIRE(mm > 1e-3);
    const auto ind = toeplitz_index(pair.d, HardyExponent(p));
    REQUIRE(ind.has_value());
    CHECK(*ind == -static_cast<int>(std::lround(w)));
    CHECK(*toeplitz_index(pair.c, HardyExponent(p)) == 1);
  }
  CHECK(*toeplitz_index(pair.d, HardyExponent(1.5)) == -1);
  CHECK(*toeplitz_index(pair.d, HardyExponent(3.0)) == -2);
  CHECK_FALSE(toeplitz_index(pair.d, HardyExponent(2.0)).has_value());
  CHECK(toeplitz_symbol_curve(pair.d, HardyExponent(2.0)).min_modulus < 1e-7);
}

TEST_CASE("power function index flips at the critical exponent") {
  // phi_{1/2}: jump from i to -i, critical exponent p = 2.
  const auto phi = PCSymbol::power_arc(0.5);
  double mm = 0.0;
  for (double p : {1.5, 2.5}) {
    const double w = oracle::toeplitz_winding(phi, p, {0.0}, &mm);
    CHECK(*toeplitz_index(phi, HardyExponent(p)) == -static_cast<int>(std::lround(w)));
  }
  CHECK(toeplitz_symbol_curve(phi, HardyExponent(1.5)).min_modulus > 0.0);
}

TEST_CASE("TH symbol reduces to the Toeplitz symbol when b = 0") {
  const HardyExponent p(1.5);
  for (double y : {-1.0, 0.0, 2.0}) {
    const auto v = th_symbol(kA1, PCSymbol::constant(0.0), p, CirclePoint::one(), y);
    REQUIRE(std::holds_alternative<Complex>(v));
    const Complex nu = oracle::nu(1.5, y);
    const Complex expect = kA1.evaluate(0.0, Side::right) * nu + kA1.evaluate(0.0, Side::left) * (1.0 - nu);
    CHECK(std::abs(std::get<Complex>(v) - expect) < 1e-12);
  }
  CHECK(std::holds_alternative<Eigen::Matrix2cd>(th_symbol(kA1, kA1, p, CirclePoint(1.0), 0.0)));
}

TEST_CASE("Hankel jump terms at +-1") {
  // b with jumps only at +-1: the scalar symbol picks up +-(b(+-1+0) - b(+-1-0))/2 h_p(y).
  const double p = 2.5;
  const PCSymbol a = PCSymbol::constant(2.0);
  for (double y : {-0.7, 0.0, 1.3}) {
    const Complex jump1 = kStep.evaluate(0.0, Side::right) - kStep.evaluate(0.0, Side::left);
    const Complex at1 = std::get<Complex>(th_symbol(a, kStep, HardyExponent(p), CirclePoint::one(), y));
    CHECK(std::abs(at1 - (2.0 + 0.5 * jump1 * oracle::h(p, y))) < 1e-12);
    const Complex jumpm = kStep.evaluate(kPi, Side::right) - kStep.evaluate(kPi, Side::left);
    const Complex atm = std::get<Complex>(th_symbol(a, kStep, HardyExponent(p), CirclePoint::minus_one(), y));
    CHECK(std::abs(atm - (2.0 - 0.5 * jumpm * oracle::h(p, y))) < 1e-12);
  }
}

TEST_CASE("TH Fredholm check and indices of the worked examples") {
  const auto b1 = kA1 * kT;
  CHECK_FALSE(th_fredholm_check(kA1, b1, HardyExponent(2.0)).fredholm);
  CHECK(th_fredholm_check(kA1, -b1, HardyExponent(2.0)).fredholm);
  CHECK(th_index(kA1, b1, HardyExponent(1.5)) == 0);
  CHECK(th_index(kA1, b1, HardyExponent(3.0)) == -1);
  for (double p : {1.5, 2.0, 3.0}) CHECK(th_index(kA1, -b1, HardyExponent(p)) == 0);
  CHECK_THROWS_AS(th_index(kA1, b1, HardyExponent(2.0)), Error);

  const auto i = PCSymbol::constant(Complex(0, 1));
  for (double p : {1.5, 3.0}) CHECK(th_index(i, -kStep, HardyExponent(p)) == 0);

  const auto a4 = PCSymbol::piecewise_const({kPi / 2, 3 * kPi / 2}, {-1.0, 1.0});
  for (double p : {1.5, 2.0, 3.0}) {
    CHECK(th_index(a4, a4 * kT, HardyExponent(p)) == 0);
    CHECK(th_index(a4, -(a4 * kT), HardyExponent(p)) == 0);
  }
}

TEST_CASE("th_index with b = 0 is the Toeplitz index") {
  const PCSymbol zero = PCSymbol::constant(0.0);
  const std::vector<PCSymbol> symbols = {
      kA1, PCSymbol::monomial(2) * kStep + PCSymbol::constant(3.0),
      PCSymbol::piecewise_const({0.3, 1.1, 4.0}, {Complex(1, 1), -2.0, Complex(0, 0.7)}) * PCSymbol::monomial(-1)};
  for (const auto& a : symbols) {
    for (double p : {1.3, 2.6}) {
      const auto ind = toeplitz_index(a, HardyExponent(p));
      if (!ind) continue;
      CHECK(th_index(a, zero, HardyExponent(p)) == *ind);
    }
  }
}

TEST_CASE("splitting interpolates the limits at +-1") {
  const auto b = kA1 * kT;
  const auto s = split_symbols(kA1, b);
  for (double th : {0.0, kPi}) {
    for (Side side : {Side::left, Side::right}) {
      CHECK(std::abs(s.g.evaluate(th, side) - kA1.evaluate(th, side)) < 1e-12);
      CHECK(std::abs(s.b0.evaluate(th, side) - b.evaluate(th, side)) < 1e-12);
    }
  }
}

TEST_CASE("block index agrees with the subordinated indices") {
  const auto pair = make_matching_pair(kA1, kA1 * kT);
  for (double p : {1.5, 3.0}) {
    const HardyExponent hp(p);
    const int expect = *toeplitz_index(pair.c, hp) + *toeplitz_index(pair.d, hp);
    CHECK(*matrix_toeplitz_index(build_U(pair), hp) == expect);
    CHECK(*matrix_toeplitz_index(build_U(pair.a, pair.b), hp) == expect);
  }
}

TEST_CASE("curve CSV") {
  std::ostringstream os;
  write_curve_csv(os, toeplitz_symbol_curve(PCSymbol::monomial(1), HardyExponent(2.0)));
  const std::string text = os.str();
  CHECK(text.rfind("segment,param,re,im\n", 0) == 0);
}
