// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thinv/analyzer.hpp"

namespace thinv::cli {

struct CheckRow {
  std::string name;
  std::string expected;
  std::string actual;
  bool passed = false;
};

/// Identity checks of the finite-section and symbol-calculus layers.
std::vector<CheckRow> verify_suite(std::uint64_t seed);

/// Regression table over the four worked examples.
std::vector<CheckRow> selftest_suite(const AnalyzerOptions& opts);

/// CSV with header `check,expected,actual,status`.
std::string format_rows(const std::vector<CheckRow>& rows);

bool all_passed(const std::vector<CheckRow>& rows);

}  // namespace thinv::cli
