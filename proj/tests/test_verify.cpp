#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "momentkit/momentkit.hpp"

using namespace momentkit;

namespace {

GridSpec small_y_grid() {
  return GridSpec({AxisSpec("y", 0.1, 10.0, 12, AxisSpec::Spacing::geometric)});
}

std::string csv_of(const VerificationReport& report) {
  std::ostringstream os;
  report.write_csv(os);
  return os.str();
}

}  // namespace

TEST_CASE("theorem 1: constant function sits on the boundary") {
  StieltjesFunction one(Measure::point_mass(Rational(0)));
  auto report = verify_theorem1(one, {-1.0, 0.0, 1.0}, small_y_grid());
  CHECK(report.passed());
  CHECK(report.min_margin == Catch::Approx(0.0).margin(1e-15));
  // 12 y-points -> 78 ordered pairs per gamma
  CHECK(report.evaluations == 3 * 78);
  CHECK(report.claim_id == "thm1");
}

TEST_CASE("theorem 1: polylog and atomic examples pass") {
  auto report_g2 = verify_theorem1(g_alpha(2.0), {-2.0, 0.0, 1.0},
                                   small_y_grid());
  CHECK(report_g2.passed());
  CHECK(report_g2.min_margin >= -1e-9);

  auto atoms = two_atom_function(0.3, 0.2, 0.9);
  auto report_atoms = verify_theorem1(atoms, default_gammas(), small_y_grid());
  CHECK(report_atoms.passed());
  // the diagonal pairs keep the minimum pinned at zero
  CHECK(report_atoms.min_margin == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("theorem 1: preconditions") {
  StieltjesFunction f(Measure::point_mass(Rational(1, 2)));
  CHECK_THROWS_AS(verify_theorem1(f, {1.5}, small_y_grid()),
                  std::invalid_argument);
  GridSpec zero_based({AxisSpec("y", 0.0, 1.0, 5)});
  CHECK_THROWS_AS(verify_theorem1(f, {0.0}, zero_based),
                  std::invalid_argument);
}

TEST_CASE("corollary 1: magnitude decay along the imaginary axis") {
  SECTION("constant function: all margins zero") {
    StieltjesFunction one(Measure::point_mass(Rational(0)));
    auto report = verify_corollary1(one, 0.5, small_y_grid());
    CHECK(report.passed());
    CHECK(report.min_margin == Catch::Approx(0.0).margin(1e-15));
    CHECK(report.evaluations == 11);
  }
  SECTION("full point mass decays strictly") {
    StieltjesFunction cauchy(Measure::point_mass(Rational(1)));
    auto report = verify_corollary1(cauchy, 0.0, small_y_grid());
    CHECK(report.passed());
    CHECK(report.min_margin > 0.0);
  }
  SECTION("polylog along the critical line gamma = 1") {
    auto report = verify_corollary1(g_alpha(1.0), 1.0, small_y_grid());
    CHECK(report.passed());
  }
  CHECK_THROWS_AS(
      verify_corollary1(g_alpha(1.0), 1.25, small_y_grid()),
      std::invalid_argument);
}

TEST_CASE("theorem 2: identity factor gives exact boundary margins") {
  auto f = two_atom_function(0.5, 0.3, 0.9);
  StieltjesFunction identity(Measure::point_mass(Rational(1)));
  auto report = verify_theorem2(f, identity, small_y_grid());
  CHECK(report.passed());
  CHECK(report.min_margin == Catch::Approx(0.0).margin(1e-15));
  CHECK(report.notes.at("eq2_min_margin") ==
        Catch::Approx(0.0).margin(1e-15));
  // two rows per y-point
  CHECK(report.evaluations == 2 * 12);
}

TEST_CASE("theorem 2: atomic square against the closed form") {
  StieltjesFunction half(Measure::point_mass(Rational(1, 2)));
  auto report = verify_theorem2(half, half, small_y_grid());
  CHECK(report.passed());
  CHECK(report.min_margin >= 0.0);
  CHECK(report.notes.at("eq2_min_margin") > 0.0);

  // closed form at one grid point: ratio margin for delta_{1/2} * delta_{1/2}
  double y = 1.0;
  Complex product = hadamard_eval(half, half, SlitPoint(0.0, y));
  Complex base = eval(half, SlitPoint(0.0, y));
  double expected_ratio = (1.0 + y * y / 8.0) / (1.0 + y * y / 16.0);
  CHECK((product / base).real() == Catch::Approx(expected_ratio).margin(1e-14));
}

TEST_CASE("theorem 2: density pair") {
  GridSpec grid({AxisSpec("y", 0.1, 10.0, 8, AxisSpec::Spacing::geometric)});
  auto report = verify_theorem2(g_alpha(1.0), g_alpha(1.0), grid);
  CHECK(report.passed());
  CHECK(report.notes.count("eq2_min_margin") == 1);
  CHECK(report.notes.at("eq2_min_margin") >= -1e-9);
}

TEST_CASE("theorem 3: log-log slope is concave for the polylog family") {
  auto report1 = verify_theorem3(DensitySpec::log_power(1.0), small_y_grid());
  CHECK(report1.passed());
  CHECK(report1.notes.at("sigma_mass") == 1.0);
  auto report2 = verify_theorem3(DensitySpec::log_power(2.0), small_y_grid());
  CHECK(report2.passed());
}

TEST_CASE("theorem 3: degenerate grids and gates") {
  SECTION("two points make a single, vacuous pair") {
    GridSpec two({AxisSpec("y", 0.5, 2.0, 2, AxisSpec::Spacing::geometric)});
    auto report = verify_theorem3(DensitySpec::uniform(), two);
    CHECK(report.passed());
    CHECK(report.evaluations == 1);
  }
  SECTION("linear grid is rejected") {
    GridSpec linear({AxisSpec("y", 0.5, 2.0, 5)});
    CHECK_THROWS_AS(verify_theorem3(DensitySpec::uniform(), linear),
                    std::invalid_argument);
  }
  SECTION("hypothesis gate fires before any evaluation") {
    try {
      verify_theorem3(DensitySpec::log_power(0.5), small_y_grid());
      FAIL("expected HypothesisViolationError");
    } catch (const HypothesisViolationError& e) {
      CHECK(e.gate.claim_id == "log-slope-monotone");
      CHECK_FALSE(e.gate.passed());
      CHECK(std::string(e.what()).find("hypothesis gate failed") !=
            std::string::npos);
    }
  }
}

TEST_CASE("theorem 4: exact quotient for the uniform density") {
  auto report = verify_theorem4(DensitySpec::uniform(), 0.5, 6);
  CHECK(report.passed());
  CHECK(report.tolerance == 0.0);  // exact arithmetic all the way through
  CHECK(report.min_margin >= 0.0);
  CHECK(report.notes.at("quotient_a0") == 1.0);
  CHECK(report.notes.at("x") == 0.5);
  CHECK(report.notes.at("order") == 6.0);
  CHECK(report.evaluations == 49);  // sum of row lengths, guard included
}

TEST_CASE("theorem 4: floating path and edge cases") {
  SECTION("log-power density, numeric moments") {
    auto report = verify_theorem4(DensitySpec::log_power(2.0), 0.5, 10);
    CHECK(report.passed());
    CHECK(report.tolerance > 0.0);
  }
  SECTION("x = 1 collapses the quotient to (1, 0, 0, ...)") {
    auto report = verify_theorem4(DensitySpec::uniform(), 1.0, 8);
    CHECK(report.passed());
    CHECK(report.notes.at("quotient_a0") == 1.0);
  }
  SECTION("parameter validation") {
    CHECK_THROWS_AS(verify_theorem4(DensitySpec::uniform(), 0.0, 6),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_theorem4(DensitySpec::uniform(), 1.5, 6),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_theorem4(DensitySpec::uniform(), 0.5, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_theorem4(DensitySpec::uniform(), 0.5, 41),
                    std::invalid_argument);
  }
  SECTION("slope gate applies here too") {
    CHECK_THROWS_AS(verify_theorem4(DensitySpec::log_power(0.5), 0.5, 6),
                    HypothesisViolationError);
  }
}

TEST_CASE("polylog quotient membership") {
  SECTION("equal orders give the trivial quotient") {
    auto report = verify_polylog_quotient(2.0, 2.0, 8);
    CHECK(report.passed());
    CHECK(report.tolerance == 0.0);
  }
  SECTION("integer pairs run exactly") {
    auto r01 = verify_polylog_quotient(0.0, 1.0, 8);
    CHECK(r01.passed());
    CHECK(r01.tolerance == 0.0);
    CHECK(r01.notes.at("alpha") == 0.0);
    CHECK(r01.notes.at("beta") == 1.0);
    auto r12 = verify_polylog_quotient(1.0, 2.0, 8);
    CHECK(r12.passed());
    CHECK(r12.tolerance == 0.0);
  }
  SECTION("fractional orders use the floating path") {
    auto report = verify_polylog_quotient(0.5, 2.5, 8);
    CHECK(report.passed());
    CHECK(report.tolerance > 0.0);
  }
  SECTION("parameter validation") {
    CHECK_THROWS_AS(verify_polylog_quotient(2.0, 1.0, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_polylog_quotient(-1.0, 1.0, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_polylog_quotient(1.0, 51.0, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_polylog_quotient(1.0, 2.0, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("counterexample verification") {
  auto report = verify_counterexample();
  CHECK(report.passed());
  CHECK(report.claim_id == "counterexample");
  CHECK(report.evaluations == 3);
  CHECK(report.min_margin > 0.0);
  CHECK(report.notes.at("closed_form_max_dev") <= 1e-12);

  SECTION("eps = 1 sits exactly on the boundary") {
    auto boundary = verify_counterexample({1.0});
    CHECK(boundary.passed());
    CHECK(boundary.min_margin == Catch::Approx(0.0).margin(1e-15));
  }
  CHECK_THROWS_AS(verify_counterexample({}), std::invalid_argument);
}

TEST_CASE("reports are byte-deterministic") {
  SECTION("passing report, no violation rows") {
    auto r1 = verify_theorem1(g_alpha(2.0), {0.0}, small_y_grid());
    auto r2 = verify_theorem1(g_alpha(2.0), {0.0}, small_y_grid());
    CHECK(csv_of(r1) == csv_of(r2));
    CHECK(csv_of(r1) == "claim_id,gamma,y1,y2,margin\n");
  }
  SECTION("violating report repeats its rows exactly") {
    GridSpec coarse({AxisSpec("rho", 0.0, 1.0, 6), AxisSpec("t1", 0.0, 1.0, 6),
                     AxisSpec("t2", 0.0, 1.0, 6)});
    auto r1 = extreme_range_scan(0.5, 1.0, 1.5, coarse);
    auto r2 = extreme_range_scan(0.5, 1.0, 1.5, coarse);
    REQUIRE_FALSE(r1.passed());
    std::string csv = csv_of(r1);
    CHECK(csv == csv_of(r2));
    CHECK(csv.substr(0, csv.find('\n')) == "claim_id,rho,t1,t2,margin");
    // every data row carries the claim id and three parameters
    CHECK(csv.find("lemma1-range,") != std::string::npos);
  }
}
