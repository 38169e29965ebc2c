#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "qgauge/csv.hpp"
#include "qgauge/errors.hpp"
#include "qgauge/report.hpp"
#include "qgauge/scenario.hpp"

using namespace qgauge;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "source": {"dim": 2, "hermitian": true,
               "terms": [{"profile": {"kind": "const", "value": 1.0},
                          "matrix": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]}]},
    "grid": {"t1": 1.0, "steps": 10}
  })");
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1.0}) {
    CHECK(std::stod(csv::format_double(x)) == x);
  }
  CHECK(csv::format_double(1.0) == "1");
  CHECK(csv::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("parse_scenario defaults") {
  const Scenario sc = parse_scenario(minimal());
  CHECK(sc.name == "unnamed");
  CHECK(sc.source.dim() == 2);
  CHECK(sc.source.hermitian_hint());
  CHECK_FALSE(sc.target.has_value());
  CHECK(sc.initial_state == CVector::Unit(2, 0));
  CHECK(sc.time_grid() == TimeGrid(0.0, 1.0, 10));
  CHECK(sc.seed == 0);
  CHECK(sc.tolerance("anything", 0.5) == 0.5);
}

TEST_CASE("parse_scenario full document") {
  json doc = minimal();
  doc["name"] = "full";
  doc["target"] = doc["source"];
  doc["target"]["terms"][0]["profile"] = {{"kind", "cos"}, {"amplitude", 2.0}, {"frequency", 3.0}, {"phase", 0.5}};
  doc["initial_state"] = json::array({json::array({0.6, 0.0}), 0.8});
  doc["gauge_seed"] = json::array({json::array({1.0, 0.0}), json::array({0.0, 1.0})});
  doc["synthesis"] = {{"capacitance", {1.0, 2.0}}, {"inductance", {0.5, 0.25}}};
  doc["seed"] = 18446744073709551615ULL;
  doc["tolerances"] = {{"all", 1e-3}, {"intertwining_residual", 1e-8}};
  const Scenario sc = parse_scenario(doc);
  CHECK(sc.name == "full");
  REQUIRE(sc.target.has_value());
  CHECK((*sc.target)(0.0)(0, 0).real() == doctest::Approx(2.0 * std::cos(0.5)));
  CHECK(sc.initial_state(1) == cplx(0.8, 0.0));
  CHECK(sc.gauge_seed->isIdentity(0.0));
  CHECK(sc.capacitance->size() == 2);
  CHECK((*sc.inductance)(1) == 0.25);
  CHECK(sc.seed == std::numeric_limits<std::uint64_t>::max());
  CHECK(sc.tolerance("intertwining_residual", 1.0) == 1e-8);
  CHECK(sc.tolerance("other", 1.0) == 1e-3);
}

TEST_CASE("parse_scenario rejects invalid documents") {
  auto bad = [](auto edit) {
    json doc = minimal();
    edit(doc);
    CHECK_THROWS_AS(parse_scenario(doc), ConfigError);
  };
  bad([](json& d) { d.erase("source"); });
  bad([](json& d) { d.erase("grid"); });
  bad([](json& d) { d["grid"]["steps"] = 1; });
  bad([](json& d) { d["grid"]["t0"] = 2.0; });
  bad([](json& d) { d["grid"]["steps"] = "many"; });
  bad([](json& d) { d["tolerances"] = {{"all", 0.0}}; });
  bad([](json& d) { d["tolerances"] = {{"all", -1.0}}; });
  bad([](json& d) { d["initial_state"] = {1.0}; });
  bad([](json& d) { d["source"]["terms"][0]["profile"]["kind"] = "sine"; });
  bad([](json& d) { d["source"]["terms"][0]["matrix"] = {{1.0, 2.0}}; });
  bad([](json& d) { d["source"]["terms"] = json::array(); d["source"].erase("dim"); });
  bad([](json& d) { d["target"] = {{"dim", 3}, {"terms", json::array()}}; });
  bad([](json& d) { d["gauge_seed"] = {{1.0}}; });
  bad([](json& d) { d["synthesis"] = {{"capacitance", {1.0}}}; });
  bad([](json& d) { d["source"]["hermitian"] = true; d["source"]["terms"][0]["matrix"][0][1] = {0.0, 1.0}; });
  CHECK_THROWS_AS(parse_scenario(json::array()), ConfigError);
}

TEST_CASE("load_scenario") {
  CHECK(load_scenario(std::filesystem::path(QGAUGE_SOURCE_DIR) / "scenarios/demo_sz_to_sx.json").target.has_value());
  CHECK_THROWS_AS(load_scenario(std::filesystem::path(QGAUGE_SOURCE_DIR) / "scenarios/malformed.json"), ConfigError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ConfigError);
}

TEST_CASE("Hamiltonian JSON round trip") {
  const HamiltonianSpec h(3, {{ConstantProfile{2.0}, CMatrix::Identity(3, 3)},
                              {PolynomialProfile{{0.0, 1.0, -0.5}}, CMatrix::Constant(3, 3, cplx(0.25, -0.5))},
                              {CosineProfile{1.0, 2.0, 0.3}, CMatrix::Zero(3, 3)}});
  const HamiltonianSpec back = parse_hamiltonian(hamiltonian_to_json(h));
  CHECK(back.dim() == 3);
  CHECK_FALSE(back.hermitian_hint());
  for (double t : {0.0, 0.7, 2.5}) CHECK(back(t) == h(t));
  CHECK(hamiltonian_to_json(back) == hamiltonian_to_json(h));

  CMatrix m(2, 2);
  m << cplx(1, 2), cplx(3, 4), cplx(-0.5, 0), cplx(0, -1e-300);
  CHECK(parse_complex_matrix(complex_matrix_to_json(m)) == m);
  CHECK(parse_complex_matrix(json::parse("[[1, 2], [3, 4]]"))(1, 0) == cplx(3.0, 0.0));
}

TEST_CASE("Report conjunction and rendering") {
  Report r("verify", "demo", 42);
  CHECK(r.passed());
  CHECK(r.add_check("small", 1e-9, 1e-6).passed);
  CHECK(r.add_check_at_least("ratio", 15.8, 12.0).passed);
  CHECK(r.passed());
  CHECK_FALSE(r.add_check("nan", std::numeric_limits<double>::quiet_NaN(), 1.0).passed);
  CHECK_FALSE(r.passed());
  CHECK_THROWS(r.add_check("small", 0.0, 1.0));
  r.add_metric("steps", 2000);
  r.add_note("hello");
  CHECK(r.find("ratio")->kind == CheckResult::Kind::at_least);
  CHECK(r.find("missing") == nullptr);

  const auto j = r.to_json();
  CHECK(j["seed"] == 42);
  CHECK(j["passed"] == false);
  CHECK(j["checks"].size() == 3);
  CHECK(j["checks"][0]["tolerance"] == 1e-6);
  CHECK(j["checks"][1]["minimum"] == 12.0);
  CHECK(j["checks"][2]["measured"] == "nan");
  CHECK(j["metrics"]["steps"] == 2000.0);
  CHECK(j["notes"][0] == "hello");

  const std::string text = r.to_text();
  CHECK(text.find("verify demo (seed 42): FAIL") == 0);
  CHECK(text.find("[FAIL] nan") != std::string::npos);
  CHECK(text.find("[pass] ratio: 15.800000000000001 >= 12") != std::string::npos);
}
