// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "thinv/config.hpp"
#include "thinv/errors.hpp"

using namespace thinv;

namespace {
const char* kExample1 = R"({
  "symbols": {
    "a": {"op": "product", "factors": [
      {"op": "const", "re": 0.7071067811865476, "im": 0.7071067811865476},
      {"op": "power_arc", "beta": {"re": 0.25, "im": 0}}
    ]},
    "b": {"op": "product", "factors": [{"op": "ref", "name": "a"}, {"op": "monomial", "n": 1}]}
  },
  "p_values": [1.5, 3]
})";

ErrorCode code_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("minimal config") {
  const auto cfg = parse_config(
      R"({"symbols": {"a": {"op": "monomial", "n": 1}, "b": {"op": "const", "re": 0, "im": 0}}, "p_values": [2]})");
  CHECK(cfg.p_values == std::vector<double>{2.0});
  CHECK(cfg.finite_section_n == 256);
  CHECK(cfg.symbols.at("a").kind() == SymbolKind::Monomial);
}

TEST_CASE("Example 1 config round-trips") {
  const auto cfg = parse_config(kExample1);
  const std::string once = serialize_config(cfg);
  const auto again = parse_config(once);
  CHECK(serialize_config(again) == once);
  const auto grid = evaluation_grid(cfg.symbols.at("b"), 128);
  CHECK(max_difference(cfg.symbols.at("b"), again.symbols.at("b"), grid) == 0.0);
  CHECK(std::abs(cfg.symbols.at("a").evaluate(0.0, Side::left) - Complex(0, 1)) < 1e-15);
}

TEST_CASE("symbol grammar covers every primitive") {
  const std::vector<std::string> exprs = {
      R"({"op": "piecewise_const", "breaks": [0, 3.14], "values": [1, {"re": 0, "im": 2}]})",
      R"({"op": "half_circle_extension", "g0": {"op": "power_arc", "beta": 0.3}})",
      R"({"op": "half_circle_interp", "upper_start": 1, "upper_end": 2, "lower_start": 3, "lower_end": 4, "mode": "linear"})",
      R"({"op": "sum", "terms": [{"op": "monomial", "n": -2}, {"op": "const", "re": 3}]})",
      R"({"op": "inverse", "arg": {"op": "sum", "terms": [{"op": "monomial", "n": 1}, {"op": "const", "re": 3}]}})",
      R"({"op": "conjugate", "arg": {"op": "power_arc", "beta": {"re": 0.2, "im": 0.1}, "anchor": 1.0}})",
      R"({"op": "tilde", "arg": {"op": "piecewise_const", "breaks": [1.0, 2.0], "values": [1, -1]}})",
  };
  for (const auto& e : exprs) {
    const auto s = parse_symbol(e);
    const auto back = parse_symbol(serialize_symbol(s));
    CHECK(max_difference(s, back, evaluation_grid(s + back, 64)) == 0.0);
  }
}

TEST_CASE("validation errors name the field") {
  const std::string base = R"({"symbols": {"a": {"op": "monomial", "n": 1}, "b": {"op": "const", "re": 1}}, )";
  CHECK(code_of(base + R"("p_values": [1.0]})") == ErrorCode::ValidationError);
  CHECK(message_of(base + R"("p_values": [2, 1.0]})").find("p_values[1]") != std::string::npos);
  CHECK(message_of(base + R"("p_values": [2], "finite_section_n": 8})").find("finite_section_n") != std::string::npos);
  CHECK(message_of(base + R"("p_values": [2], "tolerances": {"winding": 0}})").find("tolerances.winding") !=
        std::string::npos);
  CHECK(message_of(base + R"("p_values": [2], "colour": 1})").find("config.colour") != std::string::npos);
  CHECK(code_of(R"({"symbols": {"a": {"op": "monomial", "n": 1, "m": 2}, "b": {"op": "const", "re": 1}},
                    "p_values": [2]})") == ErrorCode::ValidationError);
  CHECK(message_of(R"({"symbols": {"a": {"op": "ref", "name": "b"}, "b": {"op": "ref", "name": "a"}},
                       "p_values": [2]})").find("cyclic") != std::string::npos);
  CHECK(message_of(R"({"symbols": {"a": {"op": "spline"}, "b": {"op": "const", "re": 1}}, "p_values": [2]})")
            .find("symbols.a.op") != std::string::npos);
  CHECK(code_of(R"({"symbols": {"a": {"op": "inverse", "arg": {"op": "const", "re": 0}}, "b": {"op": "const", "re": 1}},
                    "p_values": [2]})") == ErrorCode::ValidationError);
}

TEST_CASE("parse errors carry line and column") {
  const std::string bad = "{\n  \"symbols\": {\n    \"a\": [1, 2,,]\n  }\n}";
  CHECK(code_of(bad) == ErrorCode::ParseError);
  CHECK(message_of(bad).find("line 3") != std::string::npos);
}

TEST_CASE("report serialization is deterministic") {
  FredholmReport r;
  r.p = 1.5;
  r.evidence = {"index sum rule"};
  CHECK(serialize_reports({r}) == serialize_reports({r}));
  CHECK(serialize_reports({r}).find("\"evidence\"") != std::string::npos);
}
