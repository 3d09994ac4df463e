// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "suites.hpp"
#include "thinv/analyzer.hpp"
#include "thinv/config.hpp"
#include "thinv/errors.hpp"

namespace thinv::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a temporary sibling and renames it into place.
void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("cannot write " + path);
    }
  }
  fs::rename(tmp, target);
}

void emit(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    write_atomic(*path, content);
  } else {
    std::cout << content;
  }
}

AnalysisConfig load(const RunOptions& opts, bool required) {
  AnalysisConfig cfg;
  if (opts.config_path) {
    cfg = parse_config(read_file(*opts.config_path));
  } else if (required) {
    throw UsageError(opts.command + " requires --config");
  }
  if (!opts.p_values.empty()) {
    for (double p : opts.p_values) {
      if (!(p > 1.0)) throw Error(ErrorCode::ValidationError, "--p: values must lie in (1, inf)");
    }
    cfg.p_values = opts.p_values;
  }
  if (opts.n) {
    if (*opts.n < 16) throw Error(ErrorCode::ValidationError, "--n: must be at least 16");
    cfg.finite_section_n = *opts.n;
  }
  return cfg;
}

AnalyzerOptions analyzer_options(const AnalysisConfig& cfg) {
  AnalyzerOptions o;
  o.section_n = cfg.finite_section_n;
  o.sv_threshold = cfg.tolerances.sv_threshold;
  return o;
}

int analyze(const RunOptions& opts) {
  const AnalysisConfig cfg = load(opts, true);
  if (cfg.p_values.empty()) throw UsageError("analyze needs at least one p value");
  const PCSymbol& a = cfg.symbols.at(cfg.a);
  const PCSymbol& b = cfg.symbols.at(cfg.b);
  const MatchingPair pair = make_matching_pair(a, b, cfg.tolerances.matching);
  const AnalyzerOptions aopts = analyzer_options(cfg);
  std::vector<CrossCheckReport> checks;
  bool consistent = true;
  for (double p : cfg.p_values) {
    checks.push_back(cross_check(pair, HardyExponent(p), cfg.finite_section_n, aopts));
    consistent = consistent && checks.back().consistent();
  }
  emit(opts.out ? opts.out : cfg.outputs.report, serialize_cross_checks(checks));
  return consistent ? kSuccess : kCheckFailure;
}

PCSymbol curve_symbol(const AnalysisConfig& cfg) {
  const PCSymbol& a = cfg.symbols.at(cfg.a);
  const PCSymbol& b = cfg.symbols.at(cfg.b);
  if (cfg.curve_target == "a") return a;
  if (cfg.curve_target == "b") return b;
  if (cfg.curve_target == "c" || cfg.curve_target == "d") {
    const MatchingPair pair = make_matching_pair(a, b, cfg.tolerances.matching);
    return cfg.curve_target == "c" ? pair.c : pair.d;
  }
  return cfg.symbols.at(cfg.curve_target);
}

int curve(const RunOptions& opts) {
  const AnalysisConfig cfg = load(opts, true);
  if (cfg.p_values.size() != 1) throw UsageError("curve needs exactly one p value");
  const SymbolCurve c = toeplitz_symbol_curve(curve_symbol(cfg), HardyExponent(cfg.p_values.front()));
  std::ostringstream os;
  os.precision(17);
  write_curve_csv(os, c);
  emit(opts.out ? opts.out : cfg.outputs.curve, os.str());
  return kSuccess;
}

int verify(const RunOptions& opts) {
  const AnalysisConfig cfg = load(opts, false);
  const auto rows = verify_suite(cfg.seed);
  emit(opts.out ? opts.out : cfg.outputs.verify, format_rows(rows));
  return all_passed(rows) ? kSuccess : kCheckFailure;
}

int selftest(const RunOptions& opts) {
  const AnalysisConfig cfg = load(opts, false);
  const auto rows = selftest_suite(analyzer_options(cfg));
  emit(opts.out ? opts.out : cfg.outputs.selftest, format_rows(rows));
  return all_passed(rows) ? kSuccess : kCheckFailure;
}

}  // namespace

int run(const RunOptions& opts) {
  try {
    if (opts.command == "analyze") return analyze(opts);
    if (opts.command == "curve") return curve(opts);
    if (opts.command == "verify") return verify(opts);
    if (opts.command == "selftest") return selftest(opts);
    throw UsageError("unknown command " + opts.command);
  } catch (const UsageError& e) {
    std::cerr << "th-invert: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << "th-invert: " << e.what() << '\n';
    const bool config_error = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError ||
                              e.code() == ErrorCode::PreconditionViolation;
    return config_error ? kUsageError : kCheckFailure;
  } catch (const std::exception& e) {
    std::cerr << "th-invert: " << e.what() << '\n';
    return kCheckFailure;
  }
}

}  // namespace thinv::cli
