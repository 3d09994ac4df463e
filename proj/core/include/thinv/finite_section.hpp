// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "thinv/matching.hpp"
#include "thinv/pc_symbol.hpp"
#include "thinv/symbol_calculus.hpp"

namespace thinv {

inline constexpr double kSvThreshold = 1e-8;
inline constexpr double kSpectralGap = 100.0;

enum class SectionBasis {
  analytic,  // t^0 .. t^{n-1}
  laurent,   // t^{-N} .. t^{N-1}
};

struct FiniteSectionMatrix {
  Eigen::MatrixXcd entries;
  SectionBasis basis = SectionBasis::analytic;
  int laurent_order = 0;  // N for the Laurent basis

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

/// Entries a_{j-k}.
FiniteSectionMatrix toeplitz_matrix(const PCSymbol& a, int n);
FiniteSectionMatrix toeplitz_matrix(const PCSymbol& a, int rows, int cols);
/// Entries b_{j+k+1}.
FiniteSectionMatrix hankel_matrix(const PCSymbol& b, int n);
FiniteSectionMatrix hankel_matrix(const PCSymbol& b, int rows, int cols);

/// Section of T(a) + sign * H(b).
Eigen::MatrixXcd th_section(const PCSymbol& a, const PCSymbol& b, int sign, int rows, int cols);
/// Section of the adjoint T(conj a) + sign * H(conj tilde b).
Eigen::MatrixXcd th_adjoint_section(const PCSymbol& a, const PCSymbol& b, int sign, int rows, int cols);

/// Truncations on the Laurent basis t^{-N} .. t^{N-1}, which J maps onto itself.
struct BlockAssembly {
  int order = 0;
  Eigen::MatrixXcd P, Q, J;
  Eigen::MatrixXcd block;      // [[PaP+Q, PbQ], [Q b~ P, Q a~ Q + P]]
  Eigen::MatrixXcd factored;   // the diagonalized product form of the block
  double conjugation_error = 0.0;  // block against [[X, Y], [JYJ, JXJ]]
  double factorization_error = 0.0;
  double idempotent_error = 0.0;   // ap + (e-p) against (pap + (e-p))(e + (e-p)ap), p = diag(P, Q)
  double flip_error = 0.0;         // J^2 = I and JPJ = Q
};

BlockAssembly block_assembly(const PCSymbol& a, const PCSymbol& b, int order);

struct ProductIdentityErrors {
  double toeplitz = 0.0;  // T(ab) - T(a)T(b) - H(a)H(b~)
  double hankel = 0.0;    // H(ab) - T(a)H(b) - H(a)T(b~)
  double max() const { return toeplitz > hankel ? toeplitz : hankel; }
};

/// Entrywise check on the infinite matrices, window x window leading entries.
/// Throws NotPolynomial unless a and b are Laurent polynomials.
ProductIdentityErrors verify_product_identities(const PCSymbol& a, const PCSymbol& b, int window);

struct NumericalKernel {
  int dimension = 0;
  std::vector<Eigen::VectorXcd> basis;
  double sv_threshold = kSvThreshold;
  double smallest_kept_sv = 0.0;
  double largest_dropped_sv = 0.0;
};

/// SVD kernel; throws NoSpectralGap unless kept and dropped singular values are 100x apart.
NumericalKernel numerical_kernel(const Eigen::MatrixXcd& m, double sv_threshold = kSvThreshold);
NumericalKernel numerical_kernel(const FiniteSectionMatrix& m, double sv_threshold = kSvThreshold);

/// First n_out coefficients of (T(a) + sign H(b)) x for a polynomial x.
Eigen::VectorXcd apply_operator(const PCSymbol& a, const PCSymbol& b, int sign, const Eigen::VectorXcd& poly,
                                int n_out);

/// Kernel of T(a) + sign H(b) estimated from a tall 2n x n section.
NumericalKernel section_kernel(const PCSymbol& a, const PCSymbol& b, int sign, int n,
                               double sv_threshold = kSvThreshold);
/// Cokernel, from the kernel of the adjoint's tall section.
NumericalKernel section_cokernel(const PCSymbol& a, const PCSymbol& b, int sign, int n,
                                 double sv_threshold = kSvThreshold);

struct KernelFormulaResult {
  int kappa1 = 0;  // ind T(d)
  int kappa2 = 0;  // ind T(c)
  bool mixed = false;
  int dimension = 0;              // predicted dim ker diag(T(a)+H(b), T(a)-H(b))
  int alternative_dimension = 0;  // same with a projection of rank 2 - kappa2
  Eigen::MatrixXcd matrix;
  Eigen::MatrixXcd alternative_matrix;
  double solve_residual = 0.0;
};

/// Throws NotFredholm when T(c) or T(d) is not Fredholm.
KernelFormulaResult kernel_formula_eval(const MatchingPair& pair, const HardyExponent& p, int n);

/// Inverse of the n x n section applied to rhs, with the residual |T_n x - rhs|.
Eigen::VectorXcd section_solve(const PCSymbol& a, const Eigen::VectorXcd& rhs, int n, double* residual = nullptr);

}  // namespace thinv
