// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "thinv/matching.hpp"
#include "thinv/pc_symbol.hpp"

namespace thinv {

inline constexpr double kWindingTol = 1e-7;

/// Exponent p in (1, inf) with its conjugate q.
class HardyExponent {
 public:
  explicit HardyExponent(double p);
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

 private:
  double p_;
  double q_;
};

struct Weights {
  Complex nu;
  Complex h;
};

/// nu_p(y) = (1 + coth(pi(y + i/p)))/2 and h_p(y) = 1/sinh(pi(y + i/p)).
/// y may be +-infinity, where the limits are returned exactly.
Weights weight_functions(const HardyExponent& p, double y);

/// y = atanh(u) over n equispaced u in [-1 + delta, 1 - delta], plus -inf and +inf.
/// Contains 0 when n is odd.
std::vector<double> default_y_grid(int n = 257, double delta = 1e-6);

struct CurveSample {
  int segment = 0;
  double param = 0.0;  // angle on circle segments, y on arcs
  Complex value;
};

struct SymbolCurve {
  std::vector<CurveSample> samples;
  bool closed = false;
  double min_modulus = 0.0;
};

/// Samples of u(1 - nu_p(y)) + w nu_p(y); runs from u to w.
SymbolCurve arc(Complex u, Complex w, const HardyExponent& p, int n_samples = 257);

/// Image of a along the circle with the arc A_p(a(t-0), a(t+0)) filled in at every jump.
SymbolCurve toeplitz_symbol_curve(const PCSymbol& a, const HardyExponent& p);

/// Curve of det((1 - nu) M(t-0) + nu M(t+0)), the arc-completed determinant.
SymbolCurve matrix_det_curve(const MatrixSymbol& m, const HardyExponent& p);

/// Winding number about 0. Throws CurveThroughOrigin or NonIntegerWinding.
int winding(const SymbolCurve& curve, double tol = kWindingTol);

/// Empty when T(a) is not Fredholm on H^p; otherwise its index.
std::optional<int> toeplitz_index(const PCSymbol& a, const HardyExponent& p);

/// Index of the block Toeplitz operator with PC matrix symbol m.
std::optional<int> matrix_toeplitz_index(const MatrixSymbol& m, const HardyExponent& p);

using ThSymbolValue = std::variant<Complex, Eigen::Matrix2cd>;

/// Symbol of T(a)+H(b) at (t, y): a scalar at t = +-1 and a 2x2 matrix on the open upper half circle.
ThSymbolValue th_symbol(const PCSymbol& a, const PCSymbol& b, const HardyExponent& p, CirclePoint t, double y);

struct ThFredholmCheck {
  bool fredholm = false;
  double min_modulus = 0.0;
  CirclePoint witness_t;  // minimizing point
  double witness_y = 0.0;
};

ThFredholmCheck th_fredholm_check(const PCSymbol& a, const PCSymbol& b, const HardyExponent& p,
                                  int t_samples = 1024, double tol = kWindingTol);

struct ThIndexParts {
  int index = 0;
  int continuous_part_winding = 0;  // wind smb(T(g) + H(b0))
  int block_index = 0;              // ind T(U1)
};

/// Index of T(a)+H(b) through the splitting b = b0 + b1, a = g a2.
/// Throws NotFredholm when the symbol is not invertible.
ThIndexParts th_index_parts(const PCSymbol& a, const PCSymbol& b, const HardyExponent& p);
int th_index(const PCSymbol& a, const PCSymbol& b, const HardyExponent& p);

/// The splitting functions used by th_index.
struct Splitting {
  PCSymbol g;
  PCSymbol b0;
};
Splitting split_symbols(const PCSymbol& a, const PCSymbol& b);

/// CSV with header `segment,param,re,im`.
void write_curve_csv(std::ostream& os, const SymbolCurve& curve);

}  // namespace thinv
