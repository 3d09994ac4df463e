// SPDX-License-Identifier: Apache-2.0
#include "thinv/circle_point.hpp"

#include <cmath>

#include "thinv/errors.hpp"

namespace thinv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionBySmallModulus: return "DivisionBySmallModulus";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::DegenerateArc: return "DegenerateArc";
    case ErrorCode::CurveThroughOrigin: return "CurveThroughOrigin";
    case ErrorCode::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::SplitFailure: return "SplitFailure";
    case ErrorCode::SeriesDiverges: return "SeriesDiverges";
    case ErrorCode::NotFredholm: return "NotFredholm";
    case ErrorCode::NotPolynomial: return "NotPolynomial";
    case ErrorCode::NoSpectralGap: return "NoSpectralGap";
    case ErrorCode::NoFredholmNeighborhood: return "NoFredholmNeighborhood";
    case ErrorCode::NotFredholmAtP: return "NotFredholmAtP";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

double canonical_angle(double angle) noexcept {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

CirclePoint CirclePoint::from_complex(Complex t) { return CirclePoint(std::arg(t)); }

double angular_distance(double a, double b) noexcept {
  const double d = std::fabs(canonical_angle(a) - canonical_angle(b));
  return std::min(d, kTwoPi - d);
}

}  // namespace thinv
