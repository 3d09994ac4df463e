// SPDX-License-Identifier: Apache-2.0
#include "thinv/finite_section.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "thinv/errors.hpp"
#include "thinv/fourier.hpp"

namespace thinv {
namespace {

using Mat = Eigen::MatrixXcd;

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Mat multiplication_matrix(const PCSymbol& a, int order) {
  const int n = 2 * order;
  const auto coef = fourier_range(a, -(n - 1), n - 1);
  Mat m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = coef[static_cast<std::size_t>(j - k + n - 1)];
  return m;
}

Complex coeff(const std::map<int, Complex>& c, int k) {
  auto it = c.find(k);
  return it == c.end() ? Complex(0.0) : it->second;
}

}  // namespace

FiniteSectionMatrix toeplitz_matrix(const PCSymbol& a, int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::PreconditionViolation, "section size must be positive");
  const auto coef = fourier_range(a, -(cols - 1), rows - 1);
  FiniteSectionMatrix f;
  f.entries.resize(rows, cols);
  for (int j = 0; j < rows; ++j)
    for (int k = 0; k < cols; ++k) f.entries(j, k) = coef[static_cast<std::size_t>(j - k + cols - 1)];
  return f;
}

FiniteSectionMatrix toeplitz_matrix(const PCSymbol& a, int n) { return toeplitz_matrix(a, n, n); }

FiniteSectionMatrix hankel_matrix(const PCSymbol& b, int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::PreconditionViolation, "section size must be positive");
  const auto coef = fourier_range(b, 1, rows + cols - 1);
  FiniteSectionMatrix f;
  f.entries.resize(rows, cols);
  for (int j = 0; j < rows; ++j)
    for (int k = 0; k < cols; ++k) f.entries(j, k) = coef[static_cast<std::size_t>(j + k)];
  return f;
}

FiniteSectionMatrix hankel_matrix(const PCSymbol& b, int n) { return hankel_matrix(b, n, n); }

Mat th_section(const PCSymbol& a, const PCSymbol& b, int sign, int rows, int cols) {
  return toeplitz_matrix(a, rows, cols).entries + static_cast<double>(sign) * hankel_matrix(b, rows, cols).entries;
}

Mat th_adjoint_section(const PCSymbol& a, const PCSymbol& b, int sign, int rows, int cols) {
  return th_section(PCSymbol::conjugate(a), PCSymbol::conjugate(PCSymbol::tilde(b)), sign, rows, cols);
}

BlockAssembly block_assembly(const PCSymbol& a, const PCSymbol& b, int order) {
  if (order < 1) throw Error(ErrorCode::PreconditionViolation, "order must be positive");
  const int n = 2 * order;
  BlockAssembly r;
  r.order = order;
  r.P = Mat::Zero(n, n);
  r.J = Mat::Zero(n, n);
  // Index i stands for t^{i - N}; J sends t^k to t^{-k-1}.
  for (int i = 0; i < n; ++i) {
    if (i >= order) r.P(i, i) = 1.0;
    r.J(n - 1 - i, i) = 1.0;
  }
  const Mat I = Mat::Identity(n, n);
  r.Q = I - r.P;
  const Mat Ma = multiplication_matrix(a, order);
  const Mat Mb = multiplication_matrix(b, order);
  const Mat Mat_ = multiplication_matrix(PCSymbol::tilde(a), order);
  const Mat Mbt = multiplication_matrix(PCSymbol::tilde(b), order);
  const Mat& P = r.P;
  const Mat& Q = r.Q;
  const Mat& J = r.J;

  const Mat X = P * Ma * P + Q;
  const Mat Y = P * Mb * Q;
  r.block.resize(2 * n, 2 * n);
  r.block << X, Y, Q * Mbt * P, Q * Mat_ * Q + P;

  Mat conj(2 * n, 2 * n);
  conj << X, Y, J * Y * J, J * X * J;
  r.conjugation_error = max_abs(r.block - conj);

  Mat left(2 * n, 2 * n), mid = Mat::Zero(2 * n, 2 * n), right(2 * n, 2 * n);
  left << I, I, J, -J;
  mid.topLeftCorner(n, n) = X + Y * J;
  mid.bottomRightCorner(n, n) = X - Y * J;
  right << I, J, I, -J;
  r.factored = 0.5 * left * mid * right;
  r.factorization_error = max_abs(conj - r.factored);

  Mat sym(2 * n, 2 * n), proj = Mat::Zero(2 * n, 2 * n);
  sym << Ma, Mb, Mbt, Mat_;
  proj.topLeftCorner(n, n) = P;
  proj.bottomRightCorner(n, n) = Q;
  const Mat e = Mat::Identity(2 * n, 2 * n);
  const Mat lhs = sym * proj + (e - proj);
  const Mat rhs = (proj * sym * proj + (e - proj)) * (e + (e - proj) * sym * proj);
  r.idempotent_error = max_abs(lhs - rhs);
  r.flip_error = std::max(max_abs(J * J - I), max_abs(J * P * J - Q));
  return r;
}

ProductIdentityErrors verify_product_identities(const PCSymbol& a, const PCSymbol& b, int window) {
  const auto ca = laurent_coefficients(a);
  const auto cb = laurent_coefficients(b);
  const auto cab = laurent_coefficients(a * b);
  int deg = 0;
  for (const auto* c : {&ca, &cb})
    for (const auto& [k, v] : *c) deg = std::max(deg, std::abs(k));
  // Beyond this the summands vanish.
  const int m_max = 2 * window + 2 * deg + 2;
  ProductIdentityErrors e;
  for (int j = 0; j < window; ++j) {
    for (int k = 0; k < window; ++k) {
      Complex t1 = 0.0, t2 = 0.0;
      for (int m = 0; m < m_max; ++m) {
        // T(a)T(b) + H(a)H(b~); b~_k = b_{-k}.
        t1 += coeff(ca, j - m) * coeff(cb, m - k) + coeff(ca, j + m + 1) * coeff(cb, -(m + k + 1));
        // T(a)H(b) + H(a)T(b~).
        t2 += coeff(ca, j - m) * coeff(cb, m + k + 1) + coeff(ca, j + m + 1) * coeff(cb, k - m);
      }
      e.toeplitz = std::max(e.toeplitz, std::abs(coeff(cab, j - k) - t1));
      e.hankel = std::max(e.hankel, std::abs(coeff(cab, j + k + 1) - t2));
    }
  }
  return e;
}

NumericalKernel numerical_kernel(const Mat& m, double sv_threshold) {
  NumericalKernel k;
  k.sv_threshold = sv_threshold;
  const Eigen::Index cols = m.cols();
  if (cols == 0) return k;
  if (m.rows() == 0) {
    k.dimension = static_cast<int>(cols);
    for (Eigen::Index i = 0; i < cols; ++i) k.basis.push_back(Eigen::VectorXcd::Unit(cols, i));
    return k;
  }
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Mat& V = svd.matrixV();
  double kept_min = std::numeric_limits<double>::infinity();
  double dropped_max = 0.0;
  bool any_dropped = false;
  for (Eigen::Index i = 0; i < cols; ++i) {
    const double sv = i < s.size() ? s(i) : 0.0;
    if (sv < sv_threshold) {
      any_dropped = true;
      dropped_max = std::max(dropped_max, sv);
      k.basis.push_back(V.col(i));
    } else {
      kept_min = std::min(kept_min, sv);
    }
  }
  k.dimension = static_cast<int>(k.basis.size());
  k.smallest_kept_sv = std::isfinite(kept_min) ? kept_min : 0.0;
  k.largest_dropped_sv = dropped_max;
  if (any_dropped && std::isfinite(kept_min) && kept_min < kSpectralGap * dropped_max) {
    std::ostringstream os;
    os << "kept " << kept_min << " vs dropped " << dropped_max;
    throw Error(ErrorCode::NoSpectralGap, os.str());
  }
  return k;
}

NumericalKernel numerical_kernel(const FiniteSectionMatrix& m, double sv_threshold) {
  return numerical_kernel(m.entries, sv_threshold);
}

Eigen::VectorXcd apply_operator(const PCSymbol& a, const PCSymbol& b, int sign, const Eigen::VectorXcd& poly,
                                int n_out) {
  const int deg = static_cast<int>(poly.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n_out);
  if (deg == 0 || n_out <= 0) return out;
  const auto ca = fourier_range(a, -(deg - 1), n_out - 1);
  const auto cb = fourier_range(b, 1, n_out + deg - 1);
  for (int j = 0; j < n_out; ++j) {
    Complex acc = 0.0;
    for (int k = 0; k < deg; ++k) {
      acc += ca[static_cast<std::size_t>(j - k + deg - 1)] * poly(k);
      acc += static_cast<double>(sign) * cb[static_cast<std::size_t>(j + k)] * poly(k);
    }
    out(j) = acc;
  }
  return out;
}

NumericalKernel section_kernel(const PCSymbol& a, const PCSymbol& b, int sign, int n, double sv_threshold) {
  return numerical_kernel(th_section(a, b, sign, 2 * n, n), sv_threshold);
}

NumericalKernel section_cokernel(const PCSymbol& a, const PCSymbol& b, int sign, int n, double sv_threshold) {
  return numerical_kernel(th_adjoint_section(a, b, sign, 2 * n, n), sv_threshold);
}

Eigen::VectorXcd section_solve(const PCSymbol& a, const Eigen::VectorXcd& rhs, int n, double* residual) {
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(n);
  f.head(std::min<Eigen::Index>(n, rhs.size())) = rhs.head(std::min<Eigen::Index>(n, rhs.size()));
  const Mat t = toeplitz_matrix(a, n).entries;
  Eigen::PartialPivLU<Mat> lu(t);
  Eigen::VectorXcd x = lu.solve(f);
  if (residual) *residual = (t * x - f).norm();
  return x;
}

KernelFormulaResult kernel_formula_eval(const MatchingPair& pair, const HardyExponent& p, int n) {
  const auto k1 = toeplitz_index(pair.d, p);
  const auto k2 = toeplitz_index(pair.c, p);
  if (!k1 || !k2) throw Error(ErrorCode::NotFredholm, "T(c) or T(d) is not Fredholm");
  KernelFormulaResult r;
  r.kappa1 = *k1;
  r.kappa2 = *k2;
  r.mixed = r.kappa1 >= 0 && r.kappa2 < 0;
  if (!r.mixed) {
    r.dimension = std::max(r.kappa1, 0) + std::max(r.kappa2, 0);
    r.alternative_dimension = r.dimension;
    return r;
  }
  // P_{-k2-1} T^-1(c t^{k2}) T(a~^-1) T^-1(d t^{k1}) on span{1, .., t^{k1-1}}.
  const PCSymbol u0 = pair.c * PCSymbol::monomial(r.kappa2);
  const PCSymbol v0 = pair.d * PCSymbol::monomial(r.kappa1);
  const Mat w = toeplitz_matrix(PCSymbol::inverse(PCSymbol::tilde(pair.a)), n).entries;
  const int rows = -r.kappa2;
  const int alt_rows = std::min(n, 2 - r.kappa2);
  r.matrix.resize(rows, r.kappa1);
  r.alternative_matrix.resize(alt_rows, r.kappa1);
  for (int j = 0; j < r.kappa1; ++j) {
    double res1 = 0.0, res2 = 0.0;
    const Eigen::VectorXcd y = section_solve(v0, Eigen::VectorXcd::Unit(n, j), n, &res1);
    const Eigen::VectorXcd z = section_solve(u0, w * y, n, &res2);
    r.solve_residual = std::max({r.solve_residual, res1, res2});
    r.matrix.col(j) = z.head(rows);
    r.alternative_matrix.col(j) = z.head(alt_rows);
  }
  r.dimension = numerical_kernel(r.matrix).dimension;
  r.alternative_dimension = numerical_kernel(r.alternative_matrix).dimension;
  return r;
}

}  // namespace thinv
