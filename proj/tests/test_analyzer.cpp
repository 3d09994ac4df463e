// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "thinv/analyzer.hpp"
#include "thinv/errors.hpp"

using namespace thinv;

namespace {
const PCSymbol kT = PCSymbol::monomial(1);
const PCSymbol kA1 = PCSymbol::constant(std::polar(1.0, kPi / 4)) * PCSymbol::power_arc(0.25);
const MatchingPair kEx1 = make_matching_pair(kA1, kA1 * kT);
}  // namespace

TEST_CASE("negated pair") {
  const auto n = negated(kEx1);
  CHECK(std::abs(n.b.evaluate(1.0, Side::right) + kEx1.b.evaluate(1.0, Side::right)) < 1e-15);
  CHECK(std::abs(n.c.evaluate(1.0, Side::right) + kEx1.c.evaluate(1.0, Side::right)) < 1e-15);
  CHECK(std::abs(n.d.evaluate(1.0, Side::right) + kEx1.d.evaluate(1.0, Side::right)) < 1e-15);
}

TEST_CASE("Example 1 classification") {
  const auto r15 = classify(kEx1, HardyExponent(1.5));
  CHECK(r15.classification == Verdict::invertible);
  CHECK(r15.minus.verdict == Verdict::not_one_sided_invertible);
  CHECK(r15.minus.kernel_witnesses == 1);
  CHECK(*r15.diag_kernel_dim == 1);
  CHECK_FALSE(r15.evidence.empty());

  const auto r3 = classify(kEx1, HardyExponent(3.0));
  CHECK(r3.classification == Verdict::left_invertible);
  CHECK(*r3.cokernel_dim == 1);
  CHECK(*r3.kernel_dim == 0);

  const auto r2 = classify(kEx1, HardyExponent(2.0));
  CHECK(r2.plus.verdict == Verdict::not_fredholm);
  CHECK(r2.minus.fredholm);
  CHECK(*r2.minus.index == 0);
  CHECK(r2.minus.verdict == Verdict::not_one_sided_invertible);
  CHECK(r2.probing.has_value());
}

TEST_CASE("probing the subordinated indices above p = 2") {
  const auto ld = probe_limit(kEx1.d, HardyExponent(2.0));
  CHECK(ld.index == -2);
  CHECK(probe_limit_index(kEx1.c, HardyExponent(2.0)) == 1);
  // T(t^n): no critical exponent.
  const auto mono = probe_limit(PCSymbol::monomial(3), HardyExponent(1.5));
  CHECK(mono.index == -3);
  CHECK_FALSE(mono.critical.has_value());
  // phi_{1/2} changes index at p = 2.
  const auto phi = probe_limit(PCSymbol::power_arc(0.5), HardyExponent(1.5));
  REQUIRE(phi.critical.has_value());
  CHECK(*phi.critical == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(phi.s_used < 2.0);
}

TEST_CASE("classification with probing") {
  // T(a) - H(at) at p = 2 is the plus operator of the negated pair.
  const auto r = classify_with_probing(negated(kEx1), HardyExponent(2.0));
  CHECK(r.classification == Verdict::not_one_sided_invertible);
  CHECK(*r.kernel_dim == 1);
  REQUIRE(r.probing.has_value());
  CHECK(r.probing->limit_index_c == 1);
  CHECK(r.probing->limit_index_d == -2);
  CHECK_THROWS_AS(classify_with_probing(kEx1, HardyExponent(2.0)), Error);

  // Monomial pair (t^n, t^n) with n <= 0: c = 1, d = t^{2n}, both limit indices >= 0.
  const auto mono = make_matching_pair(PCSymbol::monomial(-1), PCSymbol::monomial(-1));
  const auto m = classify_with_probing(mono, HardyExponent(1.5));
  CHECK(m.classification == Verdict::right_invertible);
}

TEST_CASE("Example 2 and Example 4") {
  const auto step = PCSymbol::piecewise_const({0.0, kPi}, {1.0, -1.0});
  const auto ex2 = make_matching_pair(PCSymbol::constant(Complex(0, 1)), step);
  const auto r15 = classify(ex2, HardyExponent(1.5));
  CHECK(*r15.plus.index == 2);
  CHECK(r15.plus.verdict == Verdict::right_invertible);
  CHECK(r15.minus.verdict == Verdict::invertible);
  const auto r3 = classify(ex2, HardyExponent(3.0));
  CHECK(*r3.plus.index == -2);
  CHECK(r3.minus.verdict == Verdict::invertible);

  const auto a4 = PCSymbol::piecewise_const({kPi / 2, 3 * kPi / 2}, {-1.0, 1.0});
  const auto ex4 = make_matching_pair(a4, a4 * kT);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto r = classify(ex4, HardyExponent(p));
    CHECK(r.plus.verdict == Verdict::invertible);
    CHECK(r.minus.verdict == Verdict::not_one_sided_invertible);
    CHECK(r.minus.kernel_witnesses == 1);
  }
}

TEST_CASE("cross check routes") {
  const auto c = cross_check(kEx1, HardyExponent(3.0), 128);
  CHECK(c.consistent());
  CHECK(*c.toeplitz_sum == -1);
  CHECK(*c.matrix_index == -1);
  CHECK(*c.th_sum == -1);
  CHECK(*c.section_kernel_minus == 1);
}

TEST_CASE("verdict names") {
  CHECK(to_string(Verdict::left_invertible) == "left_invertible");
  CHECK(to_string(Verdict::not_fredholm) == "not_fredholm");
}
