// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <variant>

#include "thinv/pc_symbol.hpp"

namespace thinv {

inline constexpr double kMatchingTol = 1e-9;

/// A pair (a, b) with a * tilde(a) = b * tilde(b), together with c = a/b and d = b/tilde(a).
struct MatchingPair {
  PCSymbol a;
  PCSymbol b;
  PCSymbol c;
  PCSymbol d;
  double residual = 0.0;
  /// Value of a * tilde(a) when it is constant on the grid.
  std::optional<Complex> product_constant;
};

struct NotMatching {
  double max_residual = 0.0;
};

using MatchingResult = std::variant<MatchingPair, NotMatching>;

MatchingResult is_matching_pair(const PCSymbol& a, const PCSymbol& b, double tol = kMatchingTol);

/// Convenience wrapper that throws PreconditionViolation when (a, b) do not match.
MatchingPair make_matching_pair(const PCSymbol& a, const PCSymbol& b, double tol = kMatchingTol);

/// Grid check of c * tilde(c) = 1.
bool is_matching_function(const PCSymbol& c, double tol = kMatchingTol);

std::pair<PCSymbol, PCSymbol> subordinated_pair(const MatchingPair& pair);

struct MatrixSymbol {
  std::array<std::array<PCSymbol, 2>, 2> entries;

  const PCSymbol& operator()(int i, int j) const { return entries[i][j]; }
  /// Returns {m00, m01, m10, m11}.
  std::array<Complex, 4> evaluate(CirclePoint t, Side side) const;
};

/// Triangular symbol [[0, -d], [c, tilde(a)^-1]].
MatrixSymbol build_U(const MatchingPair& pair);

/// General symbol with entries a - b tilde(b)/tilde(a), -b/tilde(a), tilde(b)/tilde(a), 1/tilde(a).
MatrixSymbol build_U(const PCSymbol& a, const PCSymbol& b);

MatchingPair pair_product(const MatchingPair& p1, const MatchingPair& p2);
MatchingPair pair_inverse(const MatchingPair& p);

}  // namespace thinv
