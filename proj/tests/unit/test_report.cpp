#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "ncspectra/error.hpp"
#include "ncspectra/report.hpp"

using namespace ncspectra;

namespace {

Report sample() {
  Report r;
  r.command = "sweep";
  SpectrumRow a;
  a.family = "even";
  a.theta = 0.05;
  a.m = -2;
  a.level = 1;
  a.mode = "rederived";
  a.status = "ok";
  a.b_input = 15.0;
  a.b_solved = 14.963784155132543;
  a.E_physical = 1.0 / 3.0;
  a.E_reduced = -1e-300;
  a.gap = 2.5e-12;
  a.nodes = 1;
  a.oracle_verified = true;
  a.branch = "plus";
  a.normalizable = true;
  SpectrumRow b;
  b.family = "inverse";
  b.status = "no_normalizable_solution";
  b.mode = "paper";
  r.rows = {a, b};
  FitRow f;
  f.family = "even";
  f.m = 1;
  f.source = "oracle_fixed_b";
  f.points = 6;
  f.slope = 0.5;
  f.exponent = 0.9995;
  f.r_squared = 0.99999992;
  r.fits = {f};
  VerifyRow v;
  v.family = "even";
  v.entry = "indicial_exponent_sign";
  v.description = "nu, with \"quotes\", commas\nand a newline";
  v.verdict = "rederived";
  v.paper_value = 2.5;
  v.rederived_value = 4.59;
  v.rederived_ok = true;
  r.checks = {v};
  return r;
}

}  // namespace

TEST_CASE("CSV round trip is exact, NaN included") {
  const auto r = sample();
  const auto text = to_csv(r);
  CHECK(text.find("schema=1") != std::string::npos);
  const auto back = parse_csv(text);
  CHECK(equivalent(r, back));
  CHECK(back.rows[0].E_physical == r.rows[0].E_physical);
  CHECK(back.rows[0].E_reduced == -1e-300);
  CHECK(std::isnan(back.rows[1].E_physical));
  CHECK(back.rows[1].nodes == -1);
  CHECK(back.checks[0].description == r.checks[0].description);
  CHECK(to_csv(back) == text);
}

TEST_CASE("JSON round trip, missing reals as null") {
  const auto r = sample();
  const auto text = to_json(r);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["rows"][1]["E_physical"].is_null());
  CHECK(doc["rows"][0]["m"] == -2);
  const auto back = parse_json(text);
  CHECK(equivalent(r, back));
  CHECK(to_json(back) == text);
}

TEST_CASE("timestamps are optional") {
  auto r = sample();
  CHECK(to_csv(r).find("generated") == std::string::npos);
  r.generated = "2026-01-01T00:00:00Z";
  CHECK(to_csv(r).find("2026-01-01T00:00:00Z") != std::string::npos);
  CHECK(parse_csv(to_csv(r)).generated == r.generated);
  CHECK(parse_json(to_json(r)).generated == r.generated);
}

TEST_CASE("equivalence notices a changed cell") {
  auto r = sample();
  auto s = sample();
  s.rows[0].E_physical = std::nextafter(s.rows[0].E_physical, 1.0);
  CHECK_FALSE(equivalent(r, s));
}

TEST_CASE("fixed headers") {
  const auto cols = spectrum_columns();
  CHECK(cols.front() == "family");
  CHECK(std::find(cols.begin(), cols.end(), "mode") != cols.end());
  CHECK(std::find(cols.begin(), cols.end(), "oracle_verified") != cols.end());
  CHECK(std::find(cols.begin(), cols.end(), "constraint_residual") != cols.end());
  CHECK(fit_columns().size() == 9);
  CHECK(verify_columns().front() == "family");
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_json("{not json"), Error);
  CHECK_THROWS_AS(parse_json(R"({"rows": 3})"), Error);
  try {
    parse_csv("family,theta\nfoo\n");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
}

TEST_CASE("deformed problem export") {
  const auto p = deform({Family::InversePower, 2, 4, 0}, {0.1, 1});
  const auto doc = nlohmann::json::parse(problems_to_json({p}, std::nullopt));
  CHECK(doc["command"] == "deform");
  CHECK_FALSE(doc.contains("generated"));
  const auto& terms = doc["problems"][0]["terms"];
  CHECK(terms["-3"].get<double>() == doctest::Approx(0.1));
  CHECK(terms["-4"].get<double>() == doctest::Approx(0.1));
  CHECK(terms["-1"].get<double>() == 2.0);
  const auto csv = problems_to_csv({p}, std::nullopt);
  CHECK(csv.find("power,coefficient") != std::string::npos);
}
