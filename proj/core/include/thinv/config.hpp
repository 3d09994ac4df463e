// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thinv/analyzer.hpp"
#include "thinv/pc_symbol.hpp"

namespace thinv {

struct Tolerances {
  double matching = 1e-9;
  double invertibility = kInvertibilityTol;
  double winding = 1e-7;
  double sv_threshold = 1e-8;
  double quadrature = 1e-10;
};

struct OutputPaths {
  std::optional<std::string> report;
  std::optional<std::string> curve;
  std::optional<std::string> verify;
  std::optional<std::string> selftest;
};

/// Batch analysis input. `symbols` holds the named expressions; `a` and `b` name the pair.
struct AnalysisConfig {
  std::map<std::string, PCSymbol> symbols;
  std::string a = "a";
  std::string b = "b";
  std::vector<double> p_values;
  Tolerances tolerances;
  int finite_section_n = 256;
  std::string curve_target = "d";  // a, b, c, d, or a symbol name
  std::uint64_t seed = 1;
  OutputPaths outputs;
};

/// Throws Error(ParseError) with line and column, or Error(ValidationError) naming the field.
AnalysisConfig parse_config(const std::string& text);

/// JSON text that parse_config maps back to an equivalent config.
std::string serialize_config(const AnalysisConfig& config);

/// Expression tree of a symbol in the config grammar.
std::string serialize_symbol(const PCSymbol& s);
PCSymbol parse_symbol(const std::string& text);

/// JSON report document with one record per entry.
std::string serialize_reports(const std::vector<FredholmReport>& reports);
/// Same document with a `cross_check` object per record.
std::string serialize_cross_checks(const std::vector<CrossCheckReport>& checks);

}  // namespace thinv
