#include <doctest.h>

#include <string>

#include "plastcone/errors.hpp"
#include "plastcone/scenario.hpp"

using namespace plastcone;

namespace {

const char* kProjectGood = R"({
  "version": "pc/1",
  "seed": 7,
  "criterion": "von_mises",
  "k": 1.0,
  "sigma": [0, 0, 0, 1, 0, 0],
  "tau": [0, 0, 0, 0.7, 0, 0]
})";

const char* kDriveGood = R"({
  "version": "pc/1",
  "moduli": {"lame": [1.0, 1.0], "rho": 1.0},
  "criterion": "von_mises",
  "k": 1.0,
  "path": {
    "interpolation": "piecewise_constant",
    "knots": [
      {"t": 0.0, "rate": [0, 0, 0, 0.5, 0, 0]},
      {"t": 1.2, "rate": [0, 0, 0, 0.5, 0, 0]}
    ]
  },
  "dt": 0.001,
  "drift": {"kind": "radial_return", "tol": 0.001}
})";

const char* kWaveGood = R"({
  "version": "pc/1",
  "grid": {"n_cells": 50, "dx": 0.02},
  "moduli": {"lame": [2.0, 1.0], "rho": 1.0},
  "criterion": "von_mises",
  "k": 1000000.0,
  "bc": {
    "left": {"kind": "velocity", "program": [[0.0, -0.01]]},
    "right": {"kind": "free"}
  },
  "dt": 0.002,
  "t_end": 0.1,
  "output_stride": 10
})";

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

} // namespace

TEST_CASE("project scenarios parse") {
  const ProjectScenario sc = parse_project_scenario(kProjectGood);
  CHECK(sc.header.version == "pc/1");
  CHECK(sc.header.seed == 7);
  CHECK(sc.header.seed_given);
  CHECK(sc.domain.kind() == CriterionKind::von_mises);
  CHECK(sc.domain.k() == doctest::Approx(1.0));
  CHECK(sc.sigma.s12 == doctest::Approx(1.0));
  CHECK(sc.tau.s12 == doctest::Approx(0.7));
}

TEST_CASE("project scenarios are validated strictly") {
  SUBCASE("malformed JSON") {
    CHECK_THROWS_WITH_AS((void)parse_project_scenario("{nope"), doctest::Contains("JSON"),
                         ValidationError);
  }
  SUBCASE("wrong version is refused by name") {
    CHECK_THROWS_WITH_AS(
        (void)parse_project_scenario(replace_once(kProjectGood, "pc/1", "pc/9")),
        doctest::Contains("pc/9"), ValidationError);
  }
  SUBCASE("unknown fields are refused by name") {
    CHECK_THROWS_WITH_AS(
        (void)parse_project_scenario(replace_once(kProjectGood, "\"seed\"", "\"sneed\"")),
        doctest::Contains("sneed"), ValidationError);
  }
  SUBCASE("missing k is refused by name") {
    CHECK_THROWS_WITH_AS(
        (void)parse_project_scenario(replace_once(kProjectGood, "\"k\": 1.0,", "")),
        doctest::Contains("'k'"), ValidationError);
  }
  SUBCASE("unknown criteria are refused") {
    CHECK_THROWS_WITH_AS(
        (void)parse_project_scenario(replace_once(kProjectGood, "von_mises", "mohr_coulomb")),
        doctest::Contains("mohr_coulomb"), ValidationError);
  }
  SUBCASE("tensors must have six entries") {
    CHECK_THROWS_WITH_AS(
        (void)parse_project_scenario(
            replace_once(kProjectGood, "[0, 0, 0, 1, 0, 0]", "[0, 0, 0, 1]")),
        doctest::Contains("sigma"), ValidationError);
  }
  SUBCASE("seed must be a non-negative integer") {
    CHECK_THROWS_WITH_AS((void)parse_project_scenario(replace_once(kProjectGood, ": 7", ": -7")),
                         doctest::Contains("seed"), ValidationError);
  }
}

TEST_CASE("custom criteria parse into polynomial functions") {
  const std::string text = R"({
    "version": "pc/1",
    "criterion": "custom",
    "functions": [{"level": 0.5, "terms": [[1.0, 1, 0]]}],
    "sigma": [0, 0, 0, 0.70710678118654752, 0, 0],
    "tau": [0, 0, 0, 1, 0, 0]
  })";
  const ProjectScenario sc = parse_project_scenario(text);
  CHECK(sc.domain.kind() == CriterionKind::custom);
  CHECK(sc.domain.functions().size() == 1);
  CHECK(sc.domain.membership(sc.sigma) == doctest::Approx(0.0).epsilon(1e-9));

  SUBCASE("k conflicts with custom functions") {
    CHECK_THROWS_WITH_AS(
        (void)parse_project_scenario(replace_once(text, "\"criterion\"", "\"k\": 1, \"criterion\"")),
        doctest::Contains("'k'"), ValidationError);
  }
  SUBCASE("powers must be non-negative integers") {
    CHECK_THROWS_WITH_AS(
        (void)parse_project_scenario(replace_once(text, "[[1.0, 1, 0]]", "[[1.0, -1, 0]]")),
        doctest::Contains("powers"), ValidationError);
  }
  SUBCASE("non-convex screens reject at parse time") {
    CHECK_THROWS_WITH_AS(
        (void)parse_project_scenario(replace_once(text, "[[1.0, 1, 0]]", "[[-1.0, 1, 0]]")),
        doctest::Contains("convex"), ValidationError);
  }
}

TEST_CASE("drive scenarios parse") {
  const DriveScenario sc = parse_drive_scenario(kDriveGood);
  CHECK(sc.moduli.lambda == doctest::Approx(1.0));
  CHECK(sc.moduli.mu == doctest::Approx(1.0));
  CHECK(sc.moduli.rho == doctest::Approx(1.0));
  CHECK(sc.path.knots.size() == 2);
  CHECK(sc.path.interp == PathInterp::piecewise_constant);
  CHECK(sc.dt == doctest::Approx(1e-3));
  CHECK(sc.drift.kind == DriftKind::radial_return);
  CHECK(sc.drift.drift_tol == doctest::Approx(1e-3));
  CHECK(sc.initial.sigma.norm() == 0.0);
  CHECK_FALSE(sc.header.seed_given);
}

TEST_CASE("drive scenario validation") {
  SUBCASE("the young form fills in the lame constants") {
    const DriveScenario sc = parse_drive_scenario(
        replace_once(kDriveGood, R"("lame": [1.0, 1.0])", R"("young": [2.5, 0.25])"));
    CHECK(sc.moduli.lambda == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sc.moduli.mu == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("exactly one moduli form must be given") {
    CHECK_THROWS_WITH_AS(
        (void)parse_drive_scenario(replace_once(
            kDriveGood, R"("lame": [1.0, 1.0])", R"("lame": [1.0, 1.0], "young": [2.5, 0.25])")),
        doctest::Contains("exactly one"), ValidationError);
  }
  SUBCASE("rho is required") {
    CHECK_THROWS_WITH_AS(
        (void)parse_drive_scenario(replace_once(kDriveGood, R"(, "rho": 1.0)", "")),
        doctest::Contains("rho"), ValidationError);
  }
  SUBCASE("bad interpolation names are refused") {
    CHECK_THROWS_WITH_AS(
        (void)parse_drive_scenario(replace_once(kDriveGood, "piecewise_constant", "cubic")),
        doctest::Contains("cubic"), ValidationError);
  }
  SUBCASE("knot times must increase") {
    CHECK_THROWS_WITH_AS(
        (void)parse_drive_scenario(replace_once(kDriveGood, "\"t\": 1.2", "\"t\": 0.0")),
        doctest::Contains("knot"), ValidationError);
  }
  SUBCASE("dt must be positive") {
    CHECK_THROWS_WITH_AS(
        (void)parse_drive_scenario(replace_once(kDriveGood, "\"dt\": 0.001", "\"dt\": 0")),
        doctest::Contains("dt"), ValidationError);
  }
  SUBCASE("unknown drift kinds are refused") {
    CHECK_THROWS_WITH_AS(
        (void)parse_drive_scenario(replace_once(kDriveGood, "radial_return", "closest_point")),
        doctest::Contains("closest_point"), ValidationError);
  }
  SUBCASE("initial state block") {
    const DriveScenario sc = parse_drive_scenario(replace_once(
        kDriveGood, "\"dt\": 0.001",
        "\"dt\": 0.001, \"initial\": {\"sigma\": [0.5, 0.5, 0.5, 0, 0, 0], \"t\": 0.25}"));
    CHECK(sc.initial.sigma.s11 == doctest::Approx(0.5));
    CHECK(sc.initial.t == doctest::Approx(0.25));
    CHECK_THROWS_WITH_AS(
        (void)parse_drive_scenario(replace_once(
            kDriveGood, "\"dt\": 0.001", "\"dt\": 0.001, \"initial\": {\"sigma0\": [0,0,0,0,0,0]}")),
        doctest::Contains("sigma0"), ValidationError);
  }
}

TEST_CASE("wave scenarios parse") {
  const WaveScenario sc = parse_wave_scenario(kWaveGood);
  CHECK(sc.n_cells == 50);
  CHECK(sc.dx == doctest::Approx(0.02));
  CHECK(sc.config.dt == doctest::Approx(2e-3));
  CHECK(sc.config.t_end == doctest::Approx(0.1));
  CHECK(sc.config.left.kind == BcKind::velocity);
  CHECK(sc.config.left.program.at(0.0) == doctest::Approx(-0.01));
  CHECK(sc.config.right.kind == BcKind::free_end);
  CHECK(sc.config.output_stride == 10);
  CHECK(sc.config.cfl_limit == doctest::Approx(0.9));
  CHECK(sc.config.forcing.knots.empty());
}

TEST_CASE("wave scenario validation") {
  SUBCASE("grid cell count must be a positive integer") {
    CHECK_THROWS_WITH_AS(
        (void)parse_wave_scenario(replace_once(kWaveGood, "\"n_cells\": 50", "\"n_cells\": 0")),
        doctest::Contains("n_cells"), ValidationError);
  }
  SUBCASE("free ends take no program") {
    CHECK_THROWS_WITH_AS(
        (void)parse_wave_scenario(replace_once(kWaveGood, R"({"kind": "free"})",
                                               R"({"kind": "free", "program": [[0, 1]]})")),
        doctest::Contains("free"), ValidationError);
  }
  SUBCASE("unknown boundary kinds are refused") {
    CHECK_THROWS_WITH_AS(
        (void)parse_wave_scenario(replace_once(kWaveGood, "\"kind\": \"velocity\"",
                                               "\"kind\": \"absorbing\"")),
        doctest::Contains("absorbing"), ValidationError);
  }
  SUBCASE("program knots must be [t, value] pairs with increasing times") {
    CHECK_THROWS_WITH_AS(
        (void)parse_wave_scenario(
            replace_once(kWaveGood, "[[0.0, -0.01]]", "[[0.0, -0.01], [0.0, 0.02]]")),
        doctest::Contains("increasing"), ValidationError);
    CHECK_THROWS_WITH_AS(
        (void)parse_wave_scenario(replace_once(kWaveGood, "[[0.0, -0.01]]", "[[0.0]]")),
        doctest::Contains("pairs"), ValidationError);
  }
  SUBCASE("nested unknown fields are refused by name") {
    CHECK_THROWS_WITH_AS(
        (void)parse_wave_scenario(
            replace_once(kWaveGood, "\"dx\": 0.02", "\"dx\": 0.02, \"padding\": 2")),
        doctest::Contains("padding"), ValidationError);
  }
  SUBCASE("forcing programs parse") {
    const WaveScenario sc = parse_wave_scenario(
        replace_once(kWaveGood, "\"dt\":", "\"forcing\": [[0.0, 0.3], [0.05, 0.0]], \"dt\":"));
    CHECK(sc.config.forcing.at(0.01) == doctest::Approx(0.3));
    CHECK(sc.config.forcing.quiet_after() == doctest::Approx(0.05));
  }
}

TEST_CASE("missing files raise a validation error naming the path") {
  CHECK_THROWS_WITH_AS((void)read_text_file("/nonexistent/path.json"),
                       doctest::Contains("/nonexistent/path.json"), ValidationError);
}
