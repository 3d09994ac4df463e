// SPDX-License-Identifier: Apache-2.0
#include "thinv/matching.hpp"

#include <algorithm>
#include <cmath>

#include "thinv/errors.hpp"

namespace thinv {
namespace {

std::vector<double> pair_grid(const PCSymbol& a, const PCSymbol& b) {
  return evaluation_grid(PCSymbol::sum({a, b, PCSymbol::tilde(a), PCSymbol::tilde(b)}));
}

MatchingPair assemble(const PCSymbol& a, const PCSymbol& b, double residual, const std::vector<double>& grid,
                      double tol) {
  MatchingPair p;
  p.a = a;
  p.b = b;
  p.c = a * PCSymbol::inverse(b);
  p.d = b * PCSymbol::inverse(PCSymbol::tilde(a));
  p.residual = residual;
  const PCSymbol prod = a * PCSymbol::tilde(a);
  const Complex first = prod.evaluate(grid.front(), Side::right);
  if (max_difference(prod, PCSymbol::constant(first), grid) < tol) p.product_constant = first;
  return p;
}

}  // namespace

MatchingResult is_matching_pair(const PCSymbol& a, const PCSymbol& b, double tol) {
  const auto grid = pair_grid(a, b);
  if (min_modulus(a, grid) < kInvertibilityTol) throw Error(ErrorCode::NotInvertible, "a is not invertible");
  if (min_modulus(b, grid) < kInvertibilityTol) throw Error(ErrorCode::NotInvertible, "b is not invertible");
  const double r = max_difference(a * PCSymbol::tilde(a), b * PCSymbol::tilde(b), grid);
  if (!(r < tol)) return NotMatching{r};
  return assemble(a, b, r, grid, tol);
}

MatchingPair make_matching_pair(const PCSymbol& a, const PCSymbol& b, double tol) {
  auto r = is_matching_pair(a, b, tol);
  if (auto* no = std::get_if<NotMatching>(&r)) {
    throw Error(ErrorCode::PreconditionViolation, "not a matching pair, residual " + std::to_string(no->max_residual));
  }
  return std::get<MatchingPair>(std::move(r));
}

bool is_matching_function(const PCSymbol& c, double tol) {
  const auto grid = evaluation_grid(c);
  return max_difference(c * PCSymbol::tilde(c), PCSymbol::constant(1.0), grid) < tol;
}

std::pair<PCSymbol, PCSymbol> subordinated_pair(const MatchingPair& pair) { return {pair.c, pair.d}; }

std::array<Complex, 4> MatrixSymbol::evaluate(CirclePoint t, Side side) const {
  return {entries[0][0].evaluate(t, side), entries[0][1].evaluate(t, side), entries[1][0].evaluate(t, side),
          entries[1][1].evaluate(t, side)};
}

MatrixSymbol build_U(const MatchingPair& pair) {
  MatrixSymbol u;
  u.entries[0][0] = PCSymbol::constant(0.0);
  u.entries[0][1] = -pair.d;
  u.entries[1][0] = pair.c;
  u.entries[1][1] = PCSymbol::inverse(PCSymbol::tilde(pair.a));
  return u;
}

MatrixSymbol build_U(const PCSymbol& a, const PCSymbol& b) {
  const PCSymbol at_inv = PCSymbol::inverse(PCSymbol::tilde(a));
  const PCSymbol bt = PCSymbol::tilde(b);
  MatrixSymbol u;
  u.entries[0][0] = a - b * bt * at_inv;
  u.entries[0][1] = -(b * at_inv);
  u.entries[1][0] = bt * at_inv;
  u.entries[1][1] = at_inv;
  return u;
}

MatchingPair pair_product(const MatchingPair& p1, const MatchingPair& p2) {
  const PCSymbol a = p1.a * p2.a;
  const PCSymbol b = p1.b * p2.b;
  const auto grid = pair_grid(a, b);
  const double r = max_difference(a * PCSymbol::tilde(a), b * PCSymbol::tilde(b), grid);
  MatchingPair p = assemble(a, b, r, grid, kMatchingTol);
  p.c = p1.c * p2.c;
  p.d = p1.d * p2.d;
  return p;
}

MatchingPair pair_inverse(const MatchingPair& p) {
  const PCSymbol a = PCSymbol::inverse(p.a);
  const PCSymbol b = PCSymbol::inverse(p.b);
  const auto grid = pair_grid(a, b);
  const double r = max_difference(a * PCSymbol::tilde(a), b * PCSymbol::tilde(b), grid);
  return assemble(a, b, r, grid, kMatchingTol);
}

}  // namespace thinv
