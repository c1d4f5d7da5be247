#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "momentkit/momentkit.hpp"
#include "support/oracles.hpp"

using namespace momentkit;

TEST_CASE("slit points") {
  CHECK(SlitPoint::slit_distance(Complex(0.5, 0.0)) == Catch::Approx(0.5));
  CHECK(SlitPoint::slit_distance(Complex(2.0, 0.5)) == Catch::Approx(0.5));
  CHECK(SlitPoint::slit_distance(Complex(1.0, 0.0)) == 0.0);
  CHECK(SlitPoint::slit_distance(Complex(0.0, 1.0)) == Catch::Approx(std::sqrt(2.0)));
  CHECK_NOTHROW(SlitPoint(0.99, 0.0));
  CHECK_NOTHROW(SlitPoint(-100.0, 0.0));
  CHECK_THROWS_AS(SlitPoint(1.5, 0.0), SlitViolationError);
  CHECK_THROWS_AS(SlitPoint(2.0, 1e-9), SlitViolationError);
  CHECK_THROWS_AS(SlitPoint(1.0 + 1e-10, 1e-10), SlitViolationError);
  try {
    SlitPoint(3.0, 1e-9);
    FAIL("expected SlitViolationError");
  } catch (const SlitViolationError& e) {
    CHECK(e.distance == Catch::Approx(1e-9));
  }
  CHECK_THROWS_AS(SlitPoint(std::numeric_limits<double>::infinity(), 0.0),
                  std::invalid_argument);
}

TEST_CASE("evaluation closed forms") {
  SECTION("point mass") {
    StieltjesFunction f{Measure::point_mass(Rational(3, 10))};
    Complex z(0.0, 1.0);
    // not ==: fp contraction may round the two expression sites differently
    CHECK(std::abs(eval(f, SlitPoint(z)) - 1.0 / (1.0 - 0.3 * z)) <= 1e-15);
  }
  SECTION("any function is 1 at the origin") {
    for (const auto& f :
         {StieltjesFunction{Measure::with_density(DensitySpec::uniform())},
          g_alpha(2.0), two_atom_function(0.3, 0.2, 0.9)}) {
      Complex v = eval(f, SlitPoint(0.0, 0.0));
      CHECK(v.real() == Catch::Approx(1.0).margin(1e-12));
      CHECK(v.imag() == Catch::Approx(0.0).margin(1e-13));
    }
  }
  SECTION("uniform density at -1 gives log 2 by quadrature") {
    StieltjesFunction f{Measure::with_density(DensitySpec::uniform())};
    EvalResult r = eval_with_error(f, SlitPoint(-1.0, 0.0));
    CHECK(r.value.real() == Catch::Approx(std::numbers::ln2).margin(1e-12));
    CHECK(r.value.imag() == Catch::Approx(0.0).margin(1e-13));
    CHECK(r.abs_error <= 1e-12);
  }
  SECTION("power density has closed form (p+1)/(p+1+...) checked at -1") {
    // p = 1: integral of 2t/(1+t) dt = 2(1 - log 2)
    StieltjesFunction f{Measure::with_density(DensitySpec::power(1.0))};
    CHECK(eval(f, SlitPoint(-1.0, 0.0)).real() ==
          Catch::Approx(2.0 * (1.0 - std::numbers::ln2)).margin(1e-12));
    // singular p = -1/2: integral of t^(-1/2)/(2(1+t)) dt = pi/4 * 2/2
    StieltjesFunction g{Measure::with_density(DensitySpec::power(-0.5))};
    CHECK(eval(g, SlitPoint(-1.0, 0.0)).real() ==
          Catch::Approx(std::numbers::pi / 4.0).margin(1e-11));
  }
}

TEST_CASE("conjugate symmetry and Pick property") {
  oracles::Sampler sampler(4242);
  auto f = g_alpha(1.5);
  auto two = two_atom_function(0.4, 0.3, 0.8);
  for (int trial = 0; trial < 25; ++trial) {
    double re = sampler.uniform(-3.0, 0.9);
    double im = sampler.uniform(0.05, 5.0);
    for (const auto& fn : {f, two}) {
      Complex up = eval(fn, SlitPoint(re, im));
      Complex down = eval(fn, SlitPoint(re, -im));
      CHECK(std::abs(up - std::conj(down)) <= 1e-12 * std::abs(up));
      // mass sits above zero, so Im f > 0 strictly on the upper half-plane
      CHECK(up.imag() > 0.0);
    }
  }
  // the only exception: all mass at zero gives the constant 1
  StieltjesFunction one{Measure::point_mass(Rational(0))};
  CHECK(eval(one, SlitPoint(0.5, 2.0)) == Complex(1.0, 0.0));
}

TEST_CASE("taylor coefficients are the moments") {
  SECTION("point mass at 1: all ones") {
    StieltjesFunction f{Measure::point_mass(Rational(1))};
    auto seq = taylor(f, 5);
    for (int k = 0; k < 5; ++k) CHECK(seq.term(k).rational() == 1);
  }
  SECTION("uniform: harmonic moments") {
    StieltjesFunction f{Measure::with_density(DensitySpec::uniform())};
    auto seq = taylor(f, 8);
    REQUIRE(seq.exact());
    for (int k = 0; k < 8; ++k) CHECK(seq.term(k).rational() == Rational(1, k + 1));
  }
  SECTION("log-power densities: (k+1)^(-alpha) within 1e-11") {
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
      auto seq = taylor(g_alpha(alpha), 8);
      for (int k = 0; k < 8; ++k)
        CHECK(seq.term_d(k) ==
              Catch::Approx(std::pow(k + 1.0, -alpha)).margin(1e-11));
    }
  }
  SECTION("cache returns consistent prefixes") {
    auto f = g_alpha(2.0);
    auto a = taylor(f, 3);
    auto b = taylor(f, 6);
    auto c = taylor(f, 4);
    for (int k = 0; k < 3; ++k) {
      CHECK(a.term_d(k) == b.term_d(k));
      CHECK(c.term_d(k) == b.term_d(k));
    }
    CHECK(c.size() == 4);
  }
}

TEST_CASE("series evaluation") {
  auto ones = MomentSequence::from_rationals(
      std::vector<Rational>(80, Rational(1)));
  SECTION("geometric series at 1/2") {
    CHECK(series_eval(ones, Complex(0.5, 0.0)).real() ==
          Catch::Approx(2.0).margin(1e-12));
  }
  SECTION("harmonic series at -1/2 gives 2 log(3/2)") {
    std::vector<Rational> h;
    for (int k = 0; k < 80; ++k) h.emplace_back(1, k + 1);
    auto seq = MomentSequence::from_rationals(h);
    CHECK(series_eval(seq, Complex(-0.5, 0.0)).real() ==
          Catch::Approx(2.0 * std::log(1.5)).margin(1e-12));
  }
  SECTION("z = 0 returns the leading term") {
    CHECK(series_eval(ones, Complex(0.0, 0.0)) == Complex(1.0, 0.0));
  }
  SECTION("radius and budget controls") {
    CHECK_THROWS_AS(series_eval(ones, Complex(0.6, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(series_eval(ones, Complex(0.5, 0.0), 10),
                    InsufficientBudgetError);
    try {
      series_eval(ones, Complex(0.5, 0.0), 10);
    } catch (const InsufficientBudgetError& e) {
      CHECK(e.attained_bound > 1e-12);
      CHECK(e.attained_bound == Catch::Approx(std::pow(0.5, 10) / 0.5));
    }
    SeriesResult r = series_eval_with_bound(ones, Complex(0.5, 0.0), 10);
    CHECK(r.terms_used == 10);
  }
}

TEST_CASE("eval agrees with the series inside the disc") {
  oracles::Sampler sampler(11);
  auto f = g_alpha(2.0);
  auto seq = taylor(f, 80);
  for (int trial = 0; trial < 10; ++trial) {
    double r = sampler.uniform(0.05, 0.5);
    double phi = sampler.uniform(0.0, 2.0 * std::numbers::pi);
    Complex z = std::polar(r, phi);
    Complex direct = eval(f, SlitPoint(z));
    Complex series = series_eval(seq, z);
    CHECK(std::abs(direct - series) <= 1e-10);
  }
}

TEST_CASE("hadamard products") {
  SECTION("point mass at 1 is the identity") {
    auto f = g_alpha(2.0);
    StieltjesFunction id{Measure::point_mass(Rational(1))};
    auto product = hadamard(f, id);
    auto a = taylor(f, 6);
    auto b = taylor(product, 6);
    for (int k = 0; k < 6; ++k)
      CHECK(b.term_d(k) == Catch::Approx(a.term_d(k)).margin(1e-13));
    Complex z(0.3, 0.4);
    CHECK(std::abs(eval(product, SlitPoint(z)) - eval(f, SlitPoint(z))) <= 1e-10);
  }
  SECTION("atomic measures multiply exactly") {
    auto f = two_atom_function(0.25, 0.5, 1.0);
    auto g = two_atom_function(0.5, 0.4, 0.8);
    auto product = hadamard(f, g);
    REQUIRE(product.measure_backed());
    const auto& atoms = product.measure().atoms();
    // pairwise locations {0.2, 0.4, 0.4, 0.8}: the duplicate merges
    CHECK(atoms.size() == 3);
    auto a = taylor(f, 12);
    auto b = taylor(g, 12);
    auto c = taylor(product, 12);
    for (int k = 0; k < 12; ++k)
      CHECK(c.term(k).rational() ==
            a.term(k).rational() * b.term(k).rational());
  }
  SECTION("coefficients multiply termwise for density factors") {
    auto f = g_alpha(1.0);
    auto g = g_alpha(2.0);
    auto product = hadamard(f, g);
    auto c = taylor(product, 8);
    auto c3 = taylor(g_alpha(3.0), 8);
    for (int k = 0; k < 8; ++k)
      CHECK(c.term_d(k) == Catch::Approx(c3.term_d(k)).margin(1e-11));
  }
  SECTION("evaluation route: g point mass at t0 composes f(t0 z)") {
    auto f = g_alpha(2.0);
    StieltjesFunction g{Measure::point_mass(Rational(1, 2))};
    Complex z(-1.5, 0.7);
    Complex via_product = hadamard_eval(f, g, SlitPoint(z));
    Complex direct = eval(f, SlitPoint(0.5 * z));
    CHECK(std::abs(via_product - direct) <= 1e-11);
  }
  SECTION("evaluation matches exact pushforward for atoms") {
    auto f = two_atom_function(0.3, 0.2, 0.9);
    auto g = two_atom_function(0.6, 0.5, 1.0);
    Complex z(-2.0, 1.0);
    Complex via_integral = hadamard_eval(f, g, SlitPoint(z));
    auto product = hadamard(f, g);
    Complex exact = eval(product, SlitPoint(z));
    CHECK(std::abs(via_integral - exact) <= 1e-12);
  }
  SECTION("commutes and associates on coefficients") {
    auto f = g_alpha(1.0);  // numeric moments: the product sequence is float
    auto g = two_atom_function(0.3, 0.2, 0.9);
    auto fg = taylor(hadamard(f, g), 20);
    auto gf = taylor(hadamard(g, f), 20);
    CHECK_FALSE(fg.exact());
    // termwise double multiplication commutes bit for bit
    for (int k = 0; k < 20; ++k) CHECK(fg.term_d(k) == gf.term_d(k));
    auto h = StieltjesFunction{Measure::with_density(DensitySpec::power(1.0))};
    auto left = taylor(hadamard(hadamard(f, g), h), 20);
    auto right = taylor(hadamard(f, hadamard(g, h)), 20);
    // association changes rounding order, nothing more
    for (int k = 0; k < 20; ++k)
      CHECK(left.term_d(k) == Catch::Approx(right.term_d(k)).margin(1e-14));
  }
  SECTION("nested products evaluate through reassociation") {
    auto f = g_alpha(1.0);
    auto left = hadamard(f, two_atom_function(0.25, 0.5, 1.0));
    auto right = hadamard(f, two_atom_function(0.5, 0.4, 0.8));
    // both factors are products, so evaluation has to rotate the tree
    auto nested = hadamard(left, right);
    Complex value = eval(nested, SlitPoint(-1.0, 0.0), 1e-9);
    CHECK(std::isfinite(value.real()));
    // cross-check against the series of the termwise coefficients
    auto seq = taylor(nested, 70);
    Complex via_series = series_eval(seq, Complex(-0.5, 0.0));
    Complex direct = eval(nested, SlitPoint(-0.5, 0.0), 1e-10);
    CHECK(std::abs(via_series - direct) <= 1e-9);
  }
}

TEST_CASE("quotient taylor") {
  SECTION("identical operands give (1,0,0,...)") {
    StieltjesFunction f{Measure::with_density(DensitySpec::uniform())};
    auto a = taylor(f, 8);
    REQUIRE(a.exact());
    auto q = quotient_taylor(a, a, 8);
    CHECK(q.term(0).rational() == 1);
    for (int k = 1; k < 8; ++k) CHECK(q.term(k).rational() == 0);
  }
  SECTION("dividing by (1,0,0,...) returns the numerator") {
    StieltjesFunction f{Measure::with_density(DensitySpec::uniform())};
    auto a = taylor(f, 6);
    std::vector<Rational> one{Rational(1), 0, 0, 0, 0, 0};
    auto q = quotient_taylor(a, MomentSequence::from_rationals(one), 6);
    for (int k = 0; k < 6; ++k)
      CHECK(q.term(k).rational() == a.term(k).rational());
  }
  SECTION("reconstructs a known product") {
    oracles::Sampler sampler(3);
    std::vector<Rational> a, b;
    a.push_back(Rational(1));
    b.push_back(Rational(1));
    for (int i = 1; i < 10; ++i) {
      a.push_back(sampler.small_rational());
      b.push_back(sampler.small_rational());
    }
    // c = a (convolution) b, then c / b == a
    std::vector<Rational> c(10, Rational(0));
    for (int i = 0; i < 10; ++i)
      for (int j = 0; i + j < 10; ++j) c[i + j] += a[i] * b[j];
    auto q = quotient_taylor(MomentSequence::from_rationals(c),
                             MomentSequence::from_rationals(b), 10);
    for (int k = 0; k < 10; ++k) CHECK(q.term(k).rational() == a[k]);
  }
  SECTION("float mode and mixed mode") {
    auto a = MomentSequence::from_doubles({1.0, 0.5, 0.25});
    auto b = MomentSequence::from_rationals({Rational(1), Rational(1, 2),
                                             Rational(1, 4)});
    auto q = quotient_taylor(a, b, 3);
    CHECK_FALSE(q.exact());
    CHECK(q.term_d(0) == Catch::Approx(1.0));
    CHECK(q.term_d(1) == Catch::Approx(0.0).margin(1e-15));
  }
  SECTION("zero leading denominator is degenerate") {
    auto a = MomentSequence::from_rationals({Rational(1), Rational(1)});
    auto z = MomentSequence::from_rationals({Rational(0), Rational(1)});
    CHECK_THROWS_AS(quotient_taylor(a, z, 2), DegeneratePointError);
  }
  SECTION("length validation") {
    auto a = MomentSequence::from_rationals({Rational(1)});
    CHECK_THROWS_AS(quotient_taylor(a, a, 2), std::invalid_argument);
  }
}

TEST_CASE("quadrature failure carries the attained estimate") {
  // An oscillation far beyond what the adaptive rule can resolve within its
  // depth limit, so the error estimate stays above the requested tolerance.
  bool threw = false;
  try {
    quad::unit_interval([](double t) { return std::cos(3.0e7 * t); }, 1e-14);
  } catch (const QuadratureError& e) {
    threw = true;
    CHECK(e.attained > 0.0);
    CHECK(e.requested == 1e-14);
  }
  CHECK(threw);
}
