// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "thinv/pc_symbol.hpp"

namespace thinv {

enum class Provenance { analytic, quadrature };

struct FourierCoefficient {
  int index = 0;
  Complex value;
  Provenance provenance = Provenance::analytic;
  std::optional<double> error_bound;  // set only for quadrature
};

inline constexpr double kQuadratureTol = 1e-10;

/// n-th Fourier coefficient (1/2pi) * integral of s(e^{i theta}) e^{-i n theta}.
/// Symbols built from constants, monomials, power functions, step functions and
/// exponential half-circle interpolants are integrated in closed form.
FourierCoefficient fourier_coefficient(const PCSymbol& s, int n, double tol = kQuadratureTol);

/// Coefficients lo..hi inclusive. Reuses one closed-form reduction for all indices.
std::vector<Complex> fourier_range(const PCSymbol& s, int lo, int hi, double tol = kQuadratureTol);

/// Whether fourier_coefficient uses the closed form for this symbol.
bool has_analytic_coefficients(const PCSymbol& s);

/// Exact coefficients of a Laurent polynomial. Throws NotPolynomial otherwise.
std::map<int, Complex> laurent_coefficients(const PCSymbol& s);

/// Adaptive Gauss-Kronrod route, split at the jump candidates. Exposed so the
/// two routes can be compared.
FourierCoefficient fourier_by_quadrature(const PCSymbol& s, int n, double tol = kQuadratureTol);

}  // namespace thinv
