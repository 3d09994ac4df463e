// SPDX-License-Identifier: Apache-2.0
#include "thinv/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thinv/errors.hpp"
#include "thinv/finite_section.hpp"

namespace thinv {
namespace {

Verdict verdict_from(int ker, int coker) {
  if (ker == 0 && coker == 0) return Verdict::invertible;
  if (ker == 0) return Verdict::left_invertible;
  if (coker == 0) return Verdict::right_invertible;
  return Verdict::not_one_sided_invertible;
}

void settle(OperatorRecord& rec, int ker) {
  rec.kernel_dim = ker;
  rec.cokernel_dim = ker - *rec.index;
  rec.verdict = verdict_from(ker, *rec.cokernel_dim);
}

OperatorRecord toeplitz_record(const std::optional<int>& ind) {
  OperatorRecord r;
  r.fredholm = ind.has_value();
  r.index = ind;
  if (ind) {
    // Fredholm scalar Toeplitz operators are one-sided invertible.
    r.kernel_dim = std::max(*ind, 0);
    r.cokernel_dim = std::max(-*ind, 0);
    r.verdict = verdict_from(*r.kernel_dim, *r.cokernel_dim);
  }
  return r;
}

OperatorRecord th_record(const PCSymbol& a, const PCSymbol& b, const HardyExponent& p) {
  OperatorRecord r;
  r.fredholm = th_fredholm_check(a, b, p).fredholm;
  if (r.fredholm) {
    r.index = th_index(a, b, p);
    r.verdict = Verdict::fredholm_unclassified;
  }
  return r;
}

// Number of verified polynomial kernel vectors of T(a) + sign H(b) found in a tall section.
int witness_count(const PCSymbol& a, const PCSymbol& b, int sign, const AnalyzerOptions& opts) {
  NumericalKernel k;
  try {
    k = section_kernel(a, b, sign, opts.witness_n, opts.sv_threshold);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoSpectralGap) return 0;
    throw;
  }
  int count = 0;
  for (const auto& v : k.basis) {
    const auto img = apply_operator(a, b, sign, v, 4 * opts.witness_n);
    if (img.norm() < opts.witness_residual * v.norm()) ++count;
  }
  return count;
}

std::string fmt_index(const char* what, int v) {
  std::ostringstream os;
  os << what << " = " << v;
  return os.str();
}

void finish(FredholmReport& r) {
  r.classification = r.plus.verdict;
  r.kernel_dim = r.plus.kernel_dim;
  r.cokernel_dim = r.plus.cokernel_dim;
}

void resolve_with_indices(const MatchingPair& pair, const HardyExponent& p, const AnalyzerOptions& opts,
                          FredholmReport& r) {
  const int k1 = *r.kappa1, k2 = *r.kappa2;
  const int ip = *r.plus.index, im = *r.minus.index;
  r.evidence.push_back(fmt_index("index sum rule: ind T(d) + ind T(c)", k1 + k2));
  if (ip + im != k1 + k2) {
    r.evidence.push_back("discrepancy: th_index(+) + th_index(-) = " + std::to_string(ip + im) +
                         " differs from the index sum rule");
  }
  if (k1 >= 0 && k2 >= 0) {
    settle(r.plus, ip);
    settle(r.minus, im);
    r.diag_kernel_dim = k1 + k2;
    r.evidence.push_back("subordinated indices both nonnegative: T(a)+H(b) and T(a)-H(b) right-invertible");
    return;
  }
  if (k1 <= 0 && k2 <= 0) {
    settle(r.plus, 0);
    settle(r.minus, 0);
    r.diag_kernel_dim = 0;
    r.evidence.push_back("subordinated indices both nonpositive: T(a)+H(b) and T(a)-H(b) left-invertible");
    return;
  }
  int diag_kernel = 0;
  if (k1 < 0) {
    diag_kernel = k2;
    r.evidence.push_back("dim ker diag(T(a)+H(b), T(a)-H(b)) = dim ker diag(T(d), T(c)) = " + std::to_string(k2));
  } else {
    try {
      const auto kf = kernel_formula_eval(pair, p, opts.section_n);
      diag_kernel = kf.dimension;
      r.kernel_formula_alternative = kf.alternative_dimension;
      r.evidence.push_back("kernel formula on im P_{kappa1-1} gives dim ker diag = " + std::to_string(kf.dimension) +
                           " (alternative projection: " + std::to_string(kf.alternative_dimension) + ")");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSpectralGap) throw;
      r.evidence.push_back("kernel formula inconclusive: no spectral gap");
      return;
    }
  }
  r.diag_kernel_dim = diag_kernel;
  r.plus.kernel_witnesses = witness_count(pair.a, pair.b, +1, opts);
  r.minus.kernel_witnesses = witness_count(pair.a, pair.b, -1, opts);
  const int kp = std::max({ip, 0, r.plus.kernel_witnesses});
  const int km = std::max({im, 0, r.minus.kernel_witnesses});
  if (kp + km == diag_kernel) {
    settle(r.plus, kp);
    settle(r.minus, km);
    r.evidence.push_back("kernel split from index lower bounds and verified kernel vectors (" +
                         std::to_string(r.plus.kernel_witnesses) + " for +, " +
                         std::to_string(r.minus.kernel_witnesses) + " for -)");
    return;
  }
  if (kp + km > diag_kernel) {
    r.evidence.push_back("discrepancy: kernel lower bounds exceed dim ker diag");
    return;
  }
  if (ip == im && diag_kernel > 0 && diag_kernel - ip - im > 0) {
    r.evidence.push_back(
        "ker and coker of T(U(a,b)) both nonzero with equal indices: at least one of T(a)+H(b), T(a)-H(b) is not "
        "one-sided invertible");
  }
}

// Classifies the plus operator of `pair` when it is Fredholm on H^p but T(c) or T(d) is not.
void resolve_single(const MatchingPair& pair, const HardyExponent& p, const AnalyzerOptions& opts,
                    OperatorRecord& rec, std::vector<std::string>& evidence, std::optional<ProbingRecord>& probing,
                    const char* label) {
  rec.kernel_witnesses = witness_count(pair.a, pair.b, +1, opts);
  const int ind = *rec.index;
  const bool witness_blocks = rec.kernel_witnesses >= 1 && rec.kernel_witnesses - ind >= 1;
  if (witness_blocks) {
    rec.verdict = Verdict::not_one_sided_invertible;
    evidence.push_back(std::string(label) + ": verified kernel vector with index " + std::to_string(ind) +
                       " forces a nontrivial cokernel, not one-sided invertible");
  }
  const FredholmReport pr = classify_with_probing(pair, p, opts);
  if (pr.probing && !probing) probing = pr.probing;
  for (const auto& e : pr.evidence) evidence.push_back(std::string(label) + ": " + e);
  if (pr.plus.kernel_dim) {
    if (witness_blocks && *pr.plus.kernel_dim < rec.kernel_witnesses) {
      evidence.push_back(std::string(label) + ": discrepancy between probing and kernel witnesses");
      return;
    }
    rec.kernel_dim = pr.plus.kernel_dim;
    rec.cokernel_dim = pr.plus.cokernel_dim;
    rec.verdict = pr.plus.verdict;
  }
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::invertible: return "invertible";
    case Verdict::left_invertible: return "left_invertible";
    case Verdict::right_invertible: return "right_invertible";
    case Verdict::fredholm_unclassified: return "fredholm_unclassified";
    case Verdict::not_one_sided_invertible: return "not_one_sided_invertible";
    case Verdict::not_fredholm: return "not_fredholm";
  }
  return "unknown";
}

MatchingPair negated(const MatchingPair& pair) {
  MatchingPair n = pair;
  n.b = -pair.b;
  n.c = -pair.c;
  n.d = -pair.d;
  return n;
}

FredholmReport classify(const MatchingPair& pair, const HardyExponent& p, const AnalyzerOptions& opts) {
  FredholmReport r;
  r.p = p.p();
  r.product_constant = pair.product_constant;
  const auto ic = toeplitz_index(pair.c, p);
  const auto id = toeplitz_index(pair.d, p);
  r.toeplitz_c = toeplitz_record(ic);
  r.toeplitz_d = toeplitz_record(id);
  r.kappa1 = id;
  r.kappa2 = ic;
  r.plus = th_record(pair.a, pair.b, p);
  r.minus = th_record(pair.a, -pair.b, p);

  if (ic && id) {
    if (r.plus.fredholm && r.minus.fredholm) {
      resolve_with_indices(pair, p, opts, r);
    } else {
      r.evidence.push_back("discrepancy: T(c), T(d) Fredholm but the symbol of T(a)+H(b) or T(a)-H(b) degenerates");
    }
    finish(r);
    return r;
  }
  r.evidence.push_back("T(c) or T(d) is not Fredholm, so T(a)+H(b) and T(a)-H(b) are not both Fredholm");
  if (r.plus.fredholm) resolve_single(pair, p, opts, r.plus, r.evidence, r.probing, "T(a)+H(b)");
  if (r.minus.fredholm) resolve_single(negated(pair), p, opts, r.minus, r.evidence, r.probing, "T(a)-H(b)");
  finish(r);
  return r;
}

LimitIndex probe_limit(const PCSymbol& sym, const HardyExponent& p) {
  constexpr int kScan = 64;
  std::vector<double> s(kScan);
  for (int k = 0; k < kScan; ++k) s[k] = p.p() + std::pow(10.0, -6.0 + 6.0 * k / (kScan - 1));
  std::optional<int> first;
  int start = 0;
  for (; start < kScan; ++start) {
    first = toeplitz_index(sym, HardyExponent(s[start]));
    if (first) break;
  }
  if (!first) throw Error(ErrorCode::NoFredholmNeighborhood, "T(sym) is not Fredholm on the scan grid");
  LimitIndex out;
  out.index = *first;
  auto same = [&](double x) {
    const auto v = toeplitz_index(sym, HardyExponent(x));
    return v && *v == *first;
  };
  for (int k = start + 1; k < kScan; ++k) {
    if (same(s[k])) continue;
    double lo = s[k - 1], hi = s[k];
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      (same(mid) ? lo : hi) = mid;
    }
    out.critical = 0.5 * (lo + hi);
    break;
  }
  const double upper = out.critical.value_or(p.p() + 1.0);
  out.s_used = 0.5 * (p.p() + upper);
  // The midpoint lies in the same Fredholm component unless the critical point sits below the first scan point.
  if (out.s_used < s[start]) out.s_used = s[start];
  return out;
}

int probe_limit_index(const PCSymbol& sym, const HardyExponent& p) { return probe_limit(sym, p).index; }

FredholmReport classify_with_probing(const MatchingPair& pair, const HardyExponent& p, const AnalyzerOptions& opts) {
  FredholmReport r;
  r.p = p.p();
  r.product_constant = pair.product_constant;
  r.plus = th_record(pair.a, pair.b, p);
  if (!r.plus.fredholm) throw Error(ErrorCode::NotFredholmAtP, "T(a)+H(b) is not Fredholm on H^p");
  r.minus = th_record(pair.a, -pair.b, p);
  r.toeplitz_c = toeplitz_record(toeplitz_index(pair.c, p));
  r.toeplitz_d = toeplitz_record(toeplitz_index(pair.d, p));
  if (r.toeplitz_c.fredholm) r.kappa2 = r.toeplitz_c.index;
  if (r.toeplitz_d.fredholm) r.kappa1 = r.toeplitz_d.index;

  const LimitIndex lc = probe_limit(pair.c, p);
  const LimitIndex ld = probe_limit(pair.d, p);
  const double s = std::min(lc.s_used, ld.s_used);
  r.probing = ProbingRecord{s, lc.index, ld.index};
  r.evidence.push_back("index is constant on Fredholm components in p; limits from above: ind T(c) -> " +
                       std::to_string(lc.index) + ", ind T(d) -> " + std::to_string(ld.index));
  const int ind = *r.plus.index;
  if (lc.index >= 0 && ld.index >= 0) {
    settle(r.plus, ind);
    r.evidence.push_back("limit indices both nonnegative: T(a)+H(b) right-invertible");
  } else if (lc.index <= 0 && ld.index <= 0) {
    settle(r.plus, 0);
    r.evidence.push_back("limit indices both nonpositive: T(a)+H(b) left-invertible");
  } else {
    const FredholmReport at_s = classify(pair, HardyExponent(s), opts);
    if (at_s.plus.index && *at_s.plus.index == ind && at_s.plus.kernel_dim) {
      settle(r.plus, *at_s.plus.kernel_dim);
      r.evidence.push_back("classified on H^s, s = " + std::to_string(s) +
                           "; equal indices on H^s and H^p give equal kernels and cokernels");
    } else {
      r.evidence.push_back("mixed limit indices and no transferable classification at s = " + std::to_string(s));
    }
  }
  finish(r);
  return r;
}

CrossCheckReport cross_check(const MatchingPair& pair, const HardyExponent& p, int n, const AnalyzerOptions& opts) {
  CrossCheckReport c;
  c.report = classify(pair, p, opts);
  const auto& r = c.report;
  if (r.kappa1 && r.kappa2) c.toeplitz_sum = *r.kappa1 + *r.kappa2;
  c.matrix_index = matrix_toeplitz_index(build_U(pair.a, pair.b), p);
  if (r.plus.index && r.minus.index) c.th_sum = *r.plus.index + *r.minus.index;
  if (c.toeplitz_sum != c.matrix_index) c.discrepancies.push_back("ind T(c) + ind T(d) differs from ind T(U(a,b))");
  if (c.toeplitz_sum != c.th_sum) c.discrepancies.push_back("ind T(c) + ind T(d) differs from the sum of TH indices");
  auto kernel_dim = [&](int sign) -> std::optional<int> {
    try {
      return section_kernel(pair.a, pair.b, sign, n, opts.sv_threshold).dimension;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSpectralGap) throw;
      return std::nullopt;
    }
  };
  c.section_kernel_plus = kernel_dim(+1);
  c.section_kernel_minus = kernel_dim(-1);
  auto compare = [&](const char* what, const std::optional<int>& fs, const std::optional<int>& theory) {
    if (!theory) return;
    if (!fs) {
      c.discrepancies.push_back(std::string(what) + ": finite section has no spectral gap");
      return;
    }
    // Sections see the kernel in H^2, which lies inside H^p for p < 2 and contains it for p > 2.
    const double pv = p.p();
    const bool ok = pv < 2.0 ? *fs <= *theory : (pv > 2.0 ? *fs >= *theory : *fs == *theory);
    if (!ok) {
      c.discrepancies.push_back(std::string(what) + ": finite section kernel " + std::to_string(*fs) +
                                " incompatible with predicted " + std::to_string(*theory));
    }
  };
  compare("T(a)+H(b)", c.section_kernel_plus, r.plus.kernel_dim);
  compare("T(a)-H(b)", c.section_kernel_minus, r.minus.kernel_dim);
  return c;
}

}  // namespace thinv
