#include <doctest.h>

#include "ncspectra/config.hpp"
#include "ncspectra/error.hpp"

using namespace ncspectra;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidFamily;
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig c;
  CHECK(c.mode == SignMode::Normalizable);
  CHECK(c.oracle);
  CHECK(c.theta == std::vector<double>{0.0});
  CHECK(c.degree_for(2) == 2);
  CHECK(c.degree_for(-3) == 3);
  CHECK(c.degree_for(0) == 1);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("flat key = value text with comments") {
  const auto c = parse_config_text(R"(
# reference run
family = inverse   # trailing comment
a = -2
b=0.5
theta = 0.001, 0.01,0.05
m = 1,-1, 2
degree = 2
mode = paper
oracle = off
format = json
timestamp = off
grid_points = 2000
out = result.json
)");
  CHECK(c.family == Family::InversePower);
  CHECK(c.a == -2.0);
  CHECK(c.b == 0.5);
  CHECK(c.theta == std::vector<double>{0.001, 0.01, 0.05});
  CHECK(c.m == std::vector<int>{1, -1, 2});
  CHECK(c.degree_for(1) == 2);
  CHECK(c.mode == SignMode::Literal);
  CHECK_FALSE(c.oracle);
  CHECK(c.format == OutputFormat::Json);
  CHECK_FALSE(c.timestamp);
  CHECK(c.grid_points == 2000);
  CHECK(c.out == "result.json");
}

TEST_CASE("later settings override earlier ones") {
  auto c = parse_config_text("a = 2\nb = 3\n");
  apply_setting(c, "a", "5");
  CHECK(c.a == 5.0);
  CHECK(c.b == 3.0);
  const auto d = parse_config_text("c = 7", c);
  CHECK(d.a == 5.0);
  CHECK(d.c == 7.0);
}

TEST_CASE("malformed settings") {
  RunConfig c;
  CHECK(code_of([&] { apply_setting(c, "family", "odd"); }) == ErrorCode::InvalidFamily);
  CHECK(code_of([&] { apply_setting(c, "a", "one"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { apply_setting(c, "a", "nan"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { apply_setting(c, "n", "1.5"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { apply_setting(c, "mode", "literal"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { apply_setting(c, "oracle", "maybe"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { apply_setting(c, "colour", "red"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_config_text("a 1"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { load_config_file("/nonexistent/ncspectra.cfg"); }) ==
        ErrorCode::ConfigError);
  try {
    apply_setting(c, "a", "one");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("a") != std::string::npos);
  }
}

TEST_CASE("validation") {
  RunConfig c;
  c.a = 0.0;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::ConfigError);
  c = RunConfig{};
  c.theta.clear();
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::ConfigError);
  c = RunConfig{};
  c.degree = 4;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::ConfigError);
  c = RunConfig{};
  c.grid_points = 50;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::ConfigError);
  c = RunConfig{};
  c.family = Family::InversePower;
  c.a = -2.0;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("list parsing") {
  CHECK(parse_real_list("0.1") == std::vector<double>{0.1});
  CHECK(parse_real_list(" 1e-3 , -2 ") == std::vector<double>{1e-3, -2.0});
  CHECK(parse_int_list("1,+2,-3") == std::vector<int>{1, 2, -3});
  CHECK_THROWS_AS(parse_real_list("0.1,,0.2"), Error);
  CHECK_THROWS_AS(parse_int_list(""), Error);
}
