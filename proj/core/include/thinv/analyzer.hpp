// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thinv/matching.hpp"
#include "thinv/symbol_calculus.hpp"

namespace thinv {

enum class Verdict {
  invertible,
  left_invertible,
  right_invertible,
  fredholm_unclassified,
  not_one_sided_invertible,
  not_fredholm,
};

std::string_view to_string(Verdict v) noexcept;

struct OperatorRecord {
  bool fredholm = false;
  std::optional<int> index;
  std::optional<int> kernel_dim;
  std::optional<int> cokernel_dim;
  Verdict verdict = Verdict::not_fredholm;
  /// Polynomial kernel vectors found and verified by direct application.
  int kernel_witnesses = 0;
};

struct ProbingRecord {
  double s_used = 0.0;
  int limit_index_c = 0;
  int limit_index_d = 0;
};

struct FredholmReport {
  double p = 2.0;
  OperatorRecord plus;   // T(a) + H(b)
  OperatorRecord minus;  // T(a) - H(b)
  OperatorRecord toeplitz_c;
  OperatorRecord toeplitz_d;
  std::optional<int> kappa1;  // ind T(d)
  std::optional<int> kappa2;  // ind T(c)
  Verdict classification = Verdict::not_fredholm;  // of T(a) + H(b)
  std::optional<int> kernel_dim;                   // of T(a) + H(b)
  std::optional<int> cokernel_dim;
  std::optional<int> diag_kernel_dim;  // dim ker diag(T(a)+H(b), T(a)-H(b))
  std::optional<int> kernel_formula_alternative;
  std::optional<Complex> product_constant;  // a * tilde(a) when constant
  std::vector<std::string> evidence;
  std::optional<ProbingRecord> probing;
};

struct AnalyzerOptions {
  int section_n = 256;  // finite sections used inside the kernel formula
  int witness_n = 32;   // columns of the tall sections searched for kernel vectors
  double sv_threshold = 1e-8;
  double witness_residual = 1e-10;
};

FredholmReport classify(const MatchingPair& pair, const HardyExponent& p, const AnalyzerOptions& opts = {});

struct LimitIndex {
  int index = 0;
  double s_used = 0.0;
  std::optional<double> critical;  // nearest exponent above p where T(sym) fails to be Fredholm
};

/// Index of T(sym) on H^s for s slightly above p. Throws NoFredholmNeighborhood.
LimitIndex probe_limit(const PCSymbol& sym, const HardyExponent& p);
int probe_limit_index(const PCSymbol& sym, const HardyExponent& p);

/// Requires T(a)+H(b) Fredholm on H^p (throws NotFredholmAtP otherwise); T(a)-H(b) may fail.
FredholmReport classify_with_probing(const MatchingPair& pair, const HardyExponent& p,
                                     const AnalyzerOptions& opts = {});

struct CrossCheckReport {
  FredholmReport report;
  std::optional<int> toeplitz_sum;  // ind T(c) + ind T(d)
  std::optional<int> matrix_index;  // -wind det of the arc-completed U(a, b)
  std::optional<int> th_sum;        // th_index(+) + th_index(-)
  std::optional<int> section_kernel_plus;
  std::optional<int> section_kernel_minus;
  std::vector<std::string> discrepancies;
  bool consistent() const { return discrepancies.empty(); }
};

CrossCheckReport cross_check(const MatchingPair& pair, const HardyExponent& p, int n,
                             const AnalyzerOptions& opts = {});

/// The pair (a, -b), whose plus operator is T(a) - H(b).
MatchingPair negated(const MatchingPair& pair);

}  // namespace thinv
