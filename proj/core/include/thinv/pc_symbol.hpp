// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "thinv/circle_point.hpp"

namespace thinv {

/// Minimum modulus below which an Inverse node refuses to divide.
inline constexpr double kInvertibilityTol = 1e-9;

struct Jump {
  CirclePoint point;
  Complex left;
  Complex right;
};

enum class SymbolKind {
  Const,
  Monomial,
  PowerArc,
  PiecewiseConst,
  HalfCircleExtension,
  HalfCircleInterp,
  Sum,
  Product,
  Inverse,
  Conjugate,
  Tilde,
};

/// Interpolation mode of a HalfCircleInterp node.
enum class InterpMode { linear, exponential };

class PCSymbol;

/// Immutable node payload. Only the fields relevant to `kind` are meaningful.
struct SymbolNode {
  SymbolKind kind = SymbolKind::Const;
  Complex value{0.0, 0.0};         // Const
  int n = 0;                       // Monomial
  Complex beta{0.0, 0.0};          // PowerArc
  double anchor = 0.0;             // PowerArc, canonical angle
  std::vector<double> breaks;      // PiecewiseConst, sorted canonical angles
  std::vector<Complex> values;     // PiecewiseConst; HalfCircleInterp: {u0, u1, l0, l1}
  InterpMode mode = InterpMode::linear;
  std::vector<PCSymbol> children;  // composite nodes
  std::vector<double> candidates;  // angles where a jump may occur
};

/// Piecewise-continuous function on the unit circle, stored as an expression tree.
///
/// Values are shared and immutable, so copies are cheap.
class PCSymbol {
 public:
  /// Defaults to the zero constant.
  PCSymbol();

  static PCSymbol constant(Complex value);
  static PCSymbol monomial(int n);
  /// phi_beta rotated so its jump sits at `anchor`:
  /// phi(exp(i(anchor + z))) = exp(i beta (z - pi)) for z in (0, 2pi).
  static PCSymbol power_arc(Complex beta, CirclePoint anchor = CirclePoint::one());
  /// Value values[k] on [breaks[k], breaks[k+1]) taken cyclically.
  static PCSymbol piecewise_const(std::vector<double> breaks, std::vector<Complex> values);
  /// g0 on the closed upper half circle, 1/g0(conj t) on the lower one.
  static PCSymbol half_circle_extension(PCSymbol g0);
  /// Angle-linear interpolation on each open half circle. Upper half runs from
  /// `upper_start` at 1+0 to `upper_end` at -1-0; lower half from `lower_start`
  /// at -1+0 to `lower_end` at 1-0. In exponential mode the endpoints are
  /// logarithms and the result is exp of the interpolant.
  static PCSymbol half_circle_interp(Complex upper_start, Complex upper_end, Complex lower_start,
                                     Complex lower_end, InterpMode mode);
  static PCSymbol sum(std::vector<PCSymbol> terms);
  static PCSymbol product(std::vector<PCSymbol> factors);
  static PCSymbol inverse(const PCSymbol& s);
  static PCSymbol conjugate(const PCSymbol& s);
  static PCSymbol tilde(const PCSymbol& s);

  const SymbolNode& node() const noexcept { return *node_; }
  SymbolKind kind() const noexcept { return node_->kind; }

  /// One-sided limit at t. Throws DivisionBySmallModulus from Inverse nodes.
  Complex evaluate(CirclePoint t, Side side) const;
  Complex evaluate(double angle, Side side) const { return evaluate(CirclePoint(angle), side); }

  /// Angles where the expression may be discontinuous (before probing).
  const std::vector<double>& jump_candidates() const noexcept { return node_->candidates; }

  /// True if some node below can carry a jump (anything but Const/Monomial).
  bool is_laurent_polynomial() const;

  friend PCSymbol operator+(const PCSymbol& x, const PCSymbol& y);
  friend PCSymbol operator-(const PCSymbol& x, const PCSymbol& y);
  friend PCSymbol operator*(const PCSymbol& x, const PCSymbol& y);
  friend PCSymbol operator-(const PCSymbol& x);

 private:
  explicit PCSymbol(std::shared_ptr<const SymbolNode> node);
  static PCSymbol make(SymbolNode node);

  std::shared_ptr<const SymbolNode> node_;
};

PCSymbol operator*(Complex c, const PCSymbol& s);

/// Sorted list of points where the left and right limits differ.
/// The points 1 and -1 are always probed.
std::vector<Jump> jump_set(const PCSymbol& s, double tol = 1e-10);

/// Default evaluation grid: n equispaced angles merged with the jump candidates.
std::vector<double> evaluation_grid(const PCSymbol& s, int n = 1024);

/// Maximum of |f - g| over a grid, both sides.
double max_difference(const PCSymbol& f, const PCSymbol& g, const std::vector<double>& grid);

/// Minimum modulus over a grid, both sides.
double min_modulus(const PCSymbol& s, const std::vector<double>& grid);

PCSymbol extend_half_circle(const PCSymbol& g0);

}  // namespace thinv
