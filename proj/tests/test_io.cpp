#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "psigrad/config.hpp"
#include "psigrad/flows.hpp"
#include "psigrad/picard.hpp"
#include "psigrad/io.hpp"
#include "psigrad/svg.hpp"

using namespace psigrad;

TEST_CASE("fixed float formatting") {
  CHECK(format_float(1.0) == "1.000000000000e+00");
  CHECK(format_float(-0.00125) == "-1.250000000000e-03");
}

TEST_CASE("csv table layout and validation") {
  CsvTable t({"a", "b"});
  t.add_row({1.0, 2.0});
  t.add_row_raw({"x", "y"});
  CHECK(t.to_string() ==
        "a,b\n1.000000000000e+00,2.000000000000e+00\nx,y\n");
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("trajectory csv header") {
  Trajectory traj;
  traj.grid = Eigen::VectorXd::LinSpaced(3, 0.0, 1.0);
  traj.states.resize(2, 3);
  traj.states << 1, 2, 3, 4, 5, 6;
  const auto path =
      (std::filesystem::temp_directory_path() / "psigrad_traj_test.csv").string();
  write_trajectory_csv(traj, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,x_0,x_1");
  std::filesystem::remove(path);
}

TEST_CASE("bound report csv") {
  BoundReport report;
  report.times = {0.1, 0.2, 0.3};
  report.observed = {1.0, 0.5, 0.9};
  report.bound = {1.1, 0.6, 0.7};
  report.violated_at = {0.3};
  const auto path =
      (std::filesystem::temp_directory_path() / "psigrad_bound_test.csv").string();
  write_bound_report_csv(report, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,observed,bound,violated");
  std::getline(in, line);
  CHECK(line.back() == '0');
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.back() == '1');
  std::filesystem::remove(path);
}

TEST_CASE("polynomial csv") {
  const FracPolynomial poly({{0.0, 1.0}, {2.5, -0.125}});
  const auto path =
      (std::filesystem::temp_directory_path() / "psigrad_poly_test.csv").string();
  write_frac_polynomial_csv(poly, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "exponent,coefficient");
  std::getline(in, line);
  CHECK(line == "0.000000000000e+00,1.000000000000e+00");
  std::getline(in, line);
  CHECK(line == "2.500000000000e+00,-1.250000000000e-01");
  std::filesystem::remove(path);
}

TEST_CASE("fnv1a reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("manifest hashing is canonical") {
  nlohmann::json a = {{"beta", 1.0}, {"alpha", 0.5}};
  nlohmann::json b = {{"alpha", 0.5}, {"beta", 1.0}};
  const auto ma = make_manifest("solve", a.dump(), {"out.csv"});
  const auto mb = make_manifest("solve", b.dump(), {"out.csv"});
  CHECK(ma.config_hash == mb.config_hash);  // key order is canonicalized
  CHECK(ma.tool_version == std::string(kToolVersion));
  const auto j = nlohmann::json::parse(ma.to_json());
  CHECK(j.at("command") == "solve");
  CHECK(j.at("outputs").size() == 1);
  CHECK(j.at("timestamp").get<std::string>().size() == 20);  // ISO-8601 Z form
}

TEST_CASE("svg renderer") {
  SvgSeries s1{"one", {0.0, 1.0, 2.0}, {1.0, 0.5, 0.25}};
  SvgSeries s2{"two", {0.0, 1.0, 2.0}, {2.0, 0.0, -1.0}};
  SvgOptions opts;
  opts.title = "demo";
  const std::string svg = render_line_chart({s1, s2}, opts);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("demo") != std::string::npos);
  // log scale drops nonpositive points but still renders
  opts.log_y = true;
  const std::string logsvg = render_line_chart({s1, s2}, opts);
  CHECK(logsvg.find("polyline") != std::string::npos);
}

TEST_CASE("weight config parsing") {
  const auto from_json =
      weight_config_from_json(nlohmann::json{{"family", "power"}, {"k", 4.0}, {"l", 0.0}});
  CHECK(from_json.family == WeightFamily::kPower);
  CHECK(from_json.k == 4.0);
  CHECK(from_json.build().label() == "t^4");

  CHECK(weight_config_from_token("t").build().label() == "t");
  CHECK(weight_config_from_token("t2").build().label() == "t^2");
  CHECK(weight_config_from_token("t4").build().label() == "t^4");
  CHECK(weight_config_from_token("tlog").build().label() == "t*ln(t+1)");
  CHECK(weight_config_from_token("ln").build().label() == "ln(t)");
  CHECK_THROWS_AS(weight_config_from_token("bogus"), std::invalid_argument);

  const auto round = weight_config_from_json(weight_config_to_json(from_json));
  CHECK(round.family == WeightFamily::kPower);
  CHECK(round.k == 4.0);
}

TEST_CASE("objective config parsing") {
  CHECK(objective_from_json("booth").name == "booth");
  CHECK(objective_from_json(nlohmann::json{{"name", "zakharov"}, {"n", 3}}).dim == 3);
  nlohmann::json quad = {{"name", "quadratic"},
                         {"Q", {{1.0, 0.0}, {0.0, 4.0}}},
                         {"b", {1.0, 4.0}}};
  const auto q = objective_from_json(quad);
  CHECK((*q.y_star - Eigen::Vector2d(1, 1)).norm() < 1e-12);
  CHECK_THROWS_AS(objective_from_json("bogus"), std::invalid_argument);
}

TEST_CASE("solve config parsing") {
  nlohmann::json j = {{"kind", "caputo"},
                      {"alpha", 0.5},
                      {"weight", {{"family", "power"}, {"k", 2.0}, {"l", 0.0}}},
                      {"x0", {1.0}},
                      {"rhs", {{"type", "linear"}, {"lambda", -1.0}}},
                      {"h", 0.01},
                      {"T", 1.0}};
  const auto sc = solve_config_from_json(j);
  CHECK(sc.ivp.alpha == 0.5);
  CHECK(sc.cfg.n_steps == 100);
  CHECK(sc.ivp.kind == IvpKind::kCaputo);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
  CHECK(sc.ivp.rhs(0.0, x)[0] == doctest::Approx(-1.0));

  j["alpha"] = 1.5;
  CHECK_THROWS_AS(solve_config_from_json(j), std::invalid_argument);
  j["alpha"] = 0.5;
  j.erase("x0");
  CHECK_THROWS(solve_config_from_json(j));
}

TEST_CASE("optimize config parsing orients the negexp benchmark") {
  nlohmann::json j = {{"objective", "negexp"},
                      {"init", {1.0, 5.0}},
                      {"alphas", {0.8}},
                      {"weights", {"t", "t4"}},
                      {"h", 0.01},
                      {"T", 1.0}};
  const auto oc = optimize_config_from_json(j);
  CHECK(oc.sweep.descend_negated);
  REQUIRE(oc.sweep.reference_point.has_value());
  CHECK(oc.sweep.reference_point->norm() == 0.0);
  CHECK(oc.sweep.weights.size() == 2);
  CHECK(oc.eps == 0.1);
}
