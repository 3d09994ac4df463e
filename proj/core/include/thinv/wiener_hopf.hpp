// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "thinv/pc_symbol.hpp"
#include "thinv/symbol_calculus.hpp"

namespace thinv {

/// phi_beta with its jump at `anchor`; limits exp(-i pi beta) from the right, exp(i pi beta) from the left.
PCSymbol power_function(Complex beta, CirclePoint anchor = CirclePoint::one());

/// xi_beta(t) = (1 - 1/t)^beta and eta_beta(t) = (1 - t)^beta on the principal branch,
/// the boundary values of the branches equal to 1 at infinity and at 0. Undefined at t = 1.
Complex xi_power(Complex beta, CirclePoint t);
Complex eta_power(Complex beta, CirclePoint t);

/// Coefficients (-beta)_k / k! of (1 - z)^beta, k = 0..n-1.
std::vector<Complex> binomial_stream(Complex beta, int n);

struct PowerFactorization {
  Complex beta;
  std::vector<Complex> xi_coeffs;   // xi_{-beta}: coefficient of t^{-k}
  std::vector<Complex> eta_coeffs;  // eta_beta: coefficient of t^k
  /// Open interval of p for which phi_beta = xi_{-beta} eta_beta is a Wiener-Hopf factorization in H^p.
  std::pair<double, double> valid_p;
};

PowerFactorization binomial_streams(Complex beta, int n);

struct SeriesValue {
  Complex value;
  double tail_bound = 0.0;  // bound on the truncation error
  int terms = 0;            // summed explicitly before the tail estimate
};

/// c0 = sum_k ((beta)_k / k!)^2, the zeroth coefficient of xi_{-beta} eta_{-beta}.
/// Summed explicitly up to N terms; the rest is an Euler-Maclaurin tail whose next term bounds the error.
SeriesValue c0_series(double beta, double tail_tol = 1e-12);
Complex c0_coefficient(double beta, double tail_tol = 1e-12);

enum class InverseSide { left, right, two_sided };

/// T(psi) = T(t^n) T(psi0) with T(psi0) invertible, so T(psi) is one-sided invertible.
struct OneSidedInversePlan {
  int n = 0;
  PCSymbol psi0;
  InverseSide side = InverseSide::two_sided;
  std::string order;  // composition of the one-sided inverse
};

OneSidedInversePlan one_sided_inverse_plan(const PCSymbol& psi, const HardyExponent& p);

/// Applies the plan's one-sided inverse to the first f.size() coefficients of f, with T^-1(psi0)
/// replaced by the inverse of its size-`section` finite section. Returns the first f.size() coefficients.
Eigen::VectorXcd apply_one_sided_inverse(const OneSidedInversePlan& plan, const Eigen::VectorXcd& f,
                                         int section = 512, double* residual = nullptr);

}  // namespace thinv
