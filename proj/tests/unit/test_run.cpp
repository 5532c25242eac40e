#include <cmath>
#include <numbers>

#include "doctest.h"
#include "json.hpp"
#include "skf/run.hpp"

using namespace skf;
using nlohmann::json;

namespace {

RunConfig quick(std::vector<std::string> checks) {
  auto c = default_config();
  c.checks = std::move(checks);
  c.sampling.points = 20;
  c.sampling.potential_points = 40;
  c.geodesic.count = 1;
  c.geodesic.t_end = 1.0;
  return c;
}

const CheckResult& result(const RunReport& r, const std::string& name) {
  for (const auto& c : r.results)
    if (c.report.check == name) return c;
  throw Error("missing result " + name);
}

}  // namespace

TEST_CASE("default configuration") {
  auto c = default_config();
  CHECK(c.checks == check_names());
  CHECK(c.checks.size() == 13);
  CHECK(c.sampling.points == 100);
  CHECK(c.sampling.seed == 42);
  CHECK(c.derivatives.analytic());
  CHECK(*c.toric.reeb == RealVec{3.0, 1.5, 1.5});
  CHECK(c.tolerances == default_tolerances());
  CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("config parsing") {
  auto c = parse_config(R"({"sampling": {"points": 7, "seed": 3, "r_range": [1, 3]},
                            "derivatives": {"mode": "fd", "fd_step": 1e-4},
                            "tolerances": {"einstein": 1e-5},
                            "checks": ["einstein", "cky"],
                            "toric": {"reeb": "search"}})");
  CHECK(c.sampling.points == 7);
  CHECK(c.sampling.seed == 3);
  CHECK(c.sampling.r_min == 1.0);
  CHECK(c.sampling.r_max == 3.0);
  CHECK_FALSE(c.derivatives.analytic());
  CHECK(c.derivatives.fd_step == 1e-4);
  CHECK(c.tolerances.at("einstein") == 1e-5);
  CHECK(c.tolerances.at("cky") == 1e-7);
  CHECK(c.checks == std::vector<std::string>{"einstein", "cky"});
  CHECK(c.search_reeb);
  CHECK_FALSE(c.toric.reeb.has_value());

  // Round trip through JSON.
  auto again = parse_config(config_to_json(c));
  CHECK(config_to_json(again) == config_to_json(c));
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"checks": ["einstein", "bogus"]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sampling": {"points": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"derivatives": {"fd_step": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"derivatives": {"mode": "symbolic"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"tolerances": {"nonsense": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"colour": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sampling": {"points": "many"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"toric": {"normals": [[2, 0, 0], [0, 1, 0], [0, 0, 1]], "reeb": [1, 1, 1]}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"toric": {"normals": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"toric": {"reeb": "guess"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sampling": {"r_range": [2, 1]}})"), ConfigError);
}

TEST_CASE("overall pass is the conjunction of the checks") {
  auto r = run(quick({"einstein", "cky", "gorenstein"}));
  REQUIRE(r.results.size() == 3);
  CHECK(r.overall_pass);
  for (const auto& c : r.results) CHECK(c.report.pass);
  CHECK(r.results[0].report.check == "einstein");
  CHECK(r.results[2].report.check == "gorenstein");
}

TEST_CASE("negative control: perturbed round coefficient") {
  auto c = quick({"einstein", "kahler", "killing-yano", "paper-displays"});
  c.metric.round = 1.0 / 5.0;
  auto r = run(c);
  CHECK_FALSE(r.overall_pass);
  CHECK_FALSE(result(r, "einstein").report.pass);
  CHECK(result(r, "einstein").report.max_abs > 0.1);
  CHECK_FALSE(result(r, "kahler").report.pass);
  CHECK(result(r, "paper-displays").informational);
}

TEST_CASE("Reeb vector from the search") {
  auto c = quick({"reeb-search", "ricci-flat-potential", "legendre"});
  c.search_reeb = true;
  c.toric.reeb.reset();
  auto r = run(c);
  REQUIRE(r.reeb_search.has_value());
  const RealVec expected{3.0, 1.5, 1.5};
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.reeb_search->reeb[i] - expected[i]) < 1e-4);
  CHECK(r.reeb_search->objective < 1e-12);
  CHECK(r.overall_pass);
  auto j = json::parse(report_to_json(r));
  REQUIRE(j.contains("reeb_found"));
  CHECK(j["reeb_found"].size() == 3);
  CHECK(j["reeb_found"][1].get<double>() == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(j["config"]["toric"]["reeb"] == "search");
  bool seen = false;
  for (const auto& e : j["results"])
    if (e["check"] == "reeb-search") {
      seen = true;
      CHECK(e.contains("objective"));
      CHECK(e.contains("iterations"));
      CHECK(e.contains("reeb_found"));
    }
  CHECK(seen);
}

TEST_CASE("a failing check is recorded and the run continues") {
  auto c = quick({"reeb-search", "einstein"});
  // Valid toric data that is not in Gorenstein form: the search refuses it.
  c.toric.normals = conifold_toric_data().raw.normals;
  c.toric.reeb = RealVec{0.0, 0.0, 1.5};
  auto r = run(c);
  REQUIRE(r.results.size() == 2);
  CHECK_FALSE(r.results[0].report.pass);
  CHECK_FALSE(r.results[0].error.empty());
  CHECK(std::isnan(r.results[0].report.max_abs));
  CHECK(r.results[1].report.pass);
  CHECK_FALSE(r.overall_pass);
  auto j = json::parse(report_to_json(r));
  CHECK(j["results"][0]["max_abs"].is_null());
  CHECK(j["results"][0].contains("error"));
}

TEST_CASE("reports are deterministic apart from timing") {
  auto c = quick({"einstein", "special-killing", "legendre", "geodesic"});
  auto a = report_to_json(run(c), false);
  auto b = report_to_json(run(c), false);
  CHECK(a == b);
  auto j = json::parse(a);
  CHECK(j["version"] == library_version());
  CHECK(j["overall_pass"] == true);
  for (const auto& e : j["results"]) {
    CHECK_FALSE(e.contains("seconds"));
    for (const char* key : {"check", "n_points", "max_abs", "mean_abs", "fitted", "pass"}) CHECK(e.contains(key));
  }
  auto timed = json::parse(report_to_json(run(c)));
  CHECK(timed["results"][0].contains("seconds"));
}

TEST_CASE("special Killing constants in the report") {
  auto r = run(quick({"special-killing"}));
  const auto& f = r.results[0].report.fitted;
  CHECK(f.at("c_eta") == doctest::Approx(-2.0));
  CHECK(f.at("c_Psi1") == doctest::Approx(-4.0));
  CHECK(f.at("c_RePsi") == doctest::Approx(-3.0));
  CHECK(f.at("c_Psi2") == 0.0);
}

TEST_CASE("emitted forms") {
  auto base = t11_chart();
  const double h = std::numbers::pi / 2;
  auto text = emit_forms({make_point(base, {h, 0.0, h, 0.0, 0.0}), make_point(base, {1.0, 0.2, 2.0, 0.3, 0.7})});
  CHECK(text == emit_forms({make_point(base, {h, 0.0, h, 0.0, 0.0}), make_point(base, {1.0, 0.2, 2.0, 0.3, 0.7})}));
  auto j = json::parse(text);
  REQUIRE(j["points"].size() == 2);
  const auto& v0 = j["points"][0]["values"];
  CHECK(v0["RePsi"].size() == 2);
  CHECK(v0["RePsi"]["dtheta1^dtheta2"].get<double>() == doctest::Approx(1.0));
  CHECK(v0["RePsi"]["dphi1^dphi2"].get<double>() == doctest::Approx(-1.0));
  CHECK(v0["eta"].size() == 1);  // cos(pi/2) terms drop out
  const auto& v1 = j["points"][1]["values"];
  REQUIRE(v1["Phi2"].size() == 1);
  CHECK(v1["Phi2"]["dtheta1^dtheta2^dphi1^dphi2"].get<double>() ==
        doctest::Approx(-2.0 / 9.0 * std::sin(1.0) * std::sin(2.0)));
  CHECK(v1["Psi2"]["dpsi^dtheta1^dtheta2^dphi1^dphi2"].get<double>() ==
        doctest::Approx(-2.0 / 27.0 * std::sin(1.0) * std::sin(2.0)));
  CHECK(v1["ImPsi"]["dtheta1^dphi2"].get<double>() == doctest::Approx(-std::sin(2.0) * std::cos(0.7)));
  CHECK(v1["Psi1"].size() == 4);
  REQUIRE(j["forms"].size() == 7);
  for (const auto& f : j["forms"]) {
    CHECK(f.contains("degree"));
    // Every emitted component has a coefficient string, at a generic point.
    for (const auto& [label, value] : v1[f["name"].get<std::string>()].items()) CHECK(f["coefficients"].contains(label));
  }
  CHECK_THROWS_AS(emit_forms({}), Error);
  CHECK_THROWS_AS(emit_forms({make_point(sphere_chart(), {1.0, 0.0})}), ChartMismatch);
}

TEST_CASE("summary text") {
  auto r = run(quick({"gorenstein", "paper-displays"}));
  auto s = report_summary(r);
  CHECK(s.find("PASS gorenstein") != std::string::npos);
  CHECK(s.find("INFO paper-displays") != std::string::npos);
  CHECK(s.find("mismatch: bracketed-psi") != std::string::npos);
  CHECK(s.find("overall: PASS") != std::string::npos);
}
