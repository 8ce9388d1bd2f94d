#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "ratio_bounds/bigfloat.hpp"
#include "ratio_bounds/bounds_k.hpp"
#include "ratio_bounds/errors.hpp"
#include "ratio_bounds/oracle.hpp"
#include "reference_values.hpp"

using namespace ratio_bounds;
using namespace ratio_bounds::oracle;
using doctest::Approx;

namespace {

// sum_k (x^2/4)^k / (k! (a)_k), the power series of Gamma(a) (x/2)^(1-a) I_{a-1}(x).
BigFloat hyp_series(const BigFloat& a, const BigFloat& x) {
  const BigFloat q = x * x / 4.0;
  BigFloat term(1.0, a.precision());
  BigFloat sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= q;
    term /= (a + static_cast<double>(k - 1)) * static_cast<double>(k);
    sum += term;
    if (abs(term) < abs(sum) * 1e-70) break;
  }
  return sum;
}

// I_nu/I_{nu-1} = (x/2)/nu * S(nu+1)/S(nu), independent of the continued fraction.
BigFloat series_ratio(double nu, double x, unsigned digits) {
  const auto bits = bits_for_digits(digits + 20);
  const BigFloat bx(x, bits);
  const BigFloat bnu(nu, bits);
  return bx / 2.0 / bnu * hyp_series(bnu + 1.0, bx) / hyp_series(bnu, bx);
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("precision config") {
    PrecisionConfig c;
    CHECK(c.digits == 50);
    CHECK(c.tolerance() == Approx(1e-45));
    CHECK_THROWS_AS(PrecisionConfig::with_digits(10).validate(), DomainError);
    CHECK_THROWS_AS(PrecisionConfig::with_digits(400).validate(), DomainError);
  }

  TEST_CASE("digits from the environment") {
    ::setenv("RATIO_BOUNDS_DIGITS", "35", 1);
    CHECK(PrecisionConfig::from_env().digits == 35);
    ::setenv("RATIO_BOUNDS_DIGITS", "many", 1);
    CHECK_THROWS_AS(PrecisionConfig::from_env(), DomainError);
    ::unsetenv("RATIO_BOUNDS_DIGITS");
    CHECK(PrecisionConfig::from_env().digits == 50);
  }

  TEST_CASE("I oracle against the independent power series") {
    for (double nu : {0.5, 1.0, 2.5, 10.0}) {
      for (double x : {0.01, 1.0, 8.0}) {
        const OracleValue v = oracle_ratio_I(nu, x);
        CAPTURE(nu);
        CAPTURE(x);
        CHECK(relative_difference(v.value, series_ratio(nu, x, 50)) < 1e-30);
      }
    }
  }

  TEST_CASE("I oracle against frozen mpmath values") {
    for (const auto& r : kReferenceI) {
      const OracleValue v = oracle_ratio_I(r.nu, r.x);
      CAPTURE(r.nu);
      CAPTURE(r.x);
      CHECK(relative_difference(v.value, BigFloat(r.value, v.value.precision())) < 1e-38);
    }
  }

  TEST_CASE("K oracle against frozen mpmath values") {
    for (const auto& r : kReferenceK) {
      const OracleValue v = oracle_ratio_K(r.nu, r.x);
      CAPTURE(r.nu);
      CAPTURE(r.x);
      CHECK(relative_difference(v.value, BigFloat(r.value, v.value.precision())) < 1e-38);
      CHECK(v.self_check < 1e-40);
    }
  }

  TEST_CASE("closed-form special cases") {
    CHECK(oracle_ratio_I(0.5, 1).to_double() == Approx(std::tanh(1.0)).epsilon(1e-15));
    CHECK(oracle_ratio_I(1, 1e-8).to_double() == Approx(5e-9).epsilon(1e-15));
    for (double x : {0.1, 7.0, 300.0}) CHECK(oracle_ratio_K(0.5, x).to_double() == Approx(1.0).epsilon(1e-15));
    const double k = oracle_ratio_K(1, 50).to_double();
    CHECK(k >= d_alpha(1, 0, 50));
    CHECK(k <= d_alpha(1, 1, 50));
  }

  TEST_CASE("precision is configurable") {
    const OracleValue lo = oracle_ratio_I(1, 1, PrecisionConfig::with_digits(20));
    const OracleValue hi = oracle_ratio_I(1, 1, PrecisionConfig::with_digits(100));
    CHECK(hi.value.precision() > lo.value.precision());
    CHECK(relative_difference(lo.value, hi.value) < 1e-15);
    CHECK(hi.work >= lo.work);
  }

  TEST_CASE("oracle domain errors") {
    CHECK_THROWS_AS(oracle_ratio_I(-1, 1), DomainError);
    CHECK_THROWS_AS(oracle_ratio_I(1, 0), DomainError);
    CHECK_THROWS_AS(oracle_ratio_K(60, 1), DomainError);
    CHECK_THROWS_AS(oracle_ratio_K(1, -1), DomainError);
    PrecisionConfig c;
    c.max_terms = 20;
    CHECK_THROWS_AS(oracle_ratio_I(1, 1000, c), ConvergenceError);
    PrecisionConfig q;
    q.max_halvings = 1;
    q.quad_step = 2.0;
    CHECK_THROWS_AS(oracle_ratio_K(1, 1e-3, q), AccuracyError);
  }

  TEST_CASE("quadrature cutoff makes the tail negligible") {
    for (double x : {1e-3, 1.0, 1e3}) {
      const double t = quadrature_cutoff(1, x, 50);
      CHECK(x * (std::cosh(t) - 1) - t >= 50 * std::log(10.0) + 25 - 1e-6);
    }
  }

  TEST_CASE("crossing search") {
    auto f = [](double x) { return x; };
    CHECK(crossing_search(f, f, 1e-2, 1e2, 50).empty());
    const auto br = crossing_search(f, [](double) { return 1.0; }, 1e-2, 1e2, 50);
    REQUIRE(br.size() == 1);
    CHECK(br[0].x_lo < 1.0);
    CHECK(br[0].x_hi > 1.0);
    CHECK_THROWS_AS(crossing_search(f, f, 1.0, 0.5, 10), DomainError);
    CHECK_THROWS_AS(crossing_search([](double) { return NAN; }, f, 1.0, 2.0, 10), EvaluationError);
  }
}
