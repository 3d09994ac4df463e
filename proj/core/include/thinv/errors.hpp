// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thinv {

enum class ErrorCode {
  DivisionBySmallModulus,
  QuadratureNotConverged,
  PreconditionViolation,
  NotInvertible,
  PoleHit,
  DegenerateArc,
  CurveThroughOrigin,
  NonIntegerWinding,
  OutOfDomain,
  SplitFailure,
  SeriesDiverges,
  NotFredholm,
  NotPolynomial,
  NoSpectralGap,
  NoFredholmNeighborhood,
  NotFredholmAtP,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace thinv
