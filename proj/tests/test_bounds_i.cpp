#include <doctest.h>

#include <cmath>

#include "ratio_bounds/bounds_i.hpp"
#include "ratio_bounds/errors.hpp"
#include "ratio_bounds/grid.hpp"
#include "ratio_bounds/oracle.hpp"

using namespace ratio_bounds;
using doctest::Approx;

TEST_SUITE("bounds_i") {
  TEST_CASE("closed forms at nu=1, x=1") {
    CHECK(b_alpha(1, 0, 1) == Approx(0.6180339887498948).epsilon(1e-15));
    CHECK(b_alpha(1, 1, 1) == Approx(0.41421356237309505).epsilon(1e-15));
    CHECK(B_alpha(1, 0, 1) == Approx(0.51073788577645765).epsilon(1e-14));
    CHECK(B_alpha(1, 2, 1) == Approx(0.44010982776751306).epsilon(1e-14));
    CHECK(Btilde_alpha(1, 0, 1) == Approx(0.44538276889462814).epsilon(1e-14));
    CHECK(Btilde_alpha(1, 2, 1) == Approx(0.44644821135494938).epsilon(1e-14));
  }

  TEST_CASE("b_0 at nu=1/2 is identically 1") {
    for (double x : {1e-3, 0.5, 3.0, 1e3}) CHECK(b_alpha(0.5, 0, x) == 1.0);
  }

  TEST_CASE("B collapses to b_0 at alpha = 1 - 2 nu") {
    CHECK(B_alpha(1, -1, 1) == Approx(b_alpha(1, 0, 1)).epsilon(1e-15));
    CHECK(B_alpha(3.7, 1 - 7.4, 0.2) == Approx(b_alpha(3.7, 0, 0.2)).epsilon(1e-15));
  }

  TEST_CASE("cf1 bounds") {
    const Enclosure e = cf1_bounds(1, 1);
    CHECK(e.lower.value == Approx(0.43425854591066488).epsilon(1e-14));
    CHECK(e.upper.value == Approx(0.44721359549995794).epsilon(1e-14));
    const Enclosure z = cf1_bounds(0, 1);
    CHECK(z.upper.value == Approx(2.4142135623730950).epsilon(1e-14));
    CHECK(z.lower.value == Approx(1.6180339887498948).epsilon(1e-14));
    const Enclosure tiny = cf1_bounds(1, 1e-12);
    CHECK(tiny.lower.value < 1e-12);
    CHECK(tiny.upper.value < 1e-12);
    CHECK_THROWS_AS(cf1_bounds(-0.1, 1), ValidityError);
  }

  TEST_CASE("small x limits vanish linearly") {
    CHECK(Btilde_alpha(1, 0, 1e-10) == Approx(0.5e-10).epsilon(1e-9));
    CHECK(b_alpha(2, 1, 1e-10) == Approx(0.25e-10).epsilon(1e-9));
  }

  TEST_CASE("nonpositive x is rejected") {
    CHECK_THROWS_AS(b_alpha(1, 0, 0), DomainError);
    CHECK_THROWS_AS(B_alpha(1, 0, -1), DomainError);
    CHECK_THROWS_AS(Btilde_alpha(1, 0, 0), DomainError);
    CHECK_THROWS_AS(enclosure_I(1, 0, 1), DomainError);
  }

  TEST_CASE("validity table") {
    const auto b0_up = validity_I({Family::b, 0, Side::upper}, 0.3);
    CHECK_FALSE(b0_up.valid);
    CHECK(b0_up.reason.find("nu>=1/2") != std::string::npos);
    CHECK(validity_I({Family::b, 0, Side::upper}, 0.5).valid);
    CHECK(validity_I({Family::b, -1, Side::upper}, 0).valid);
    CHECK(validity_I({Family::b, 1, Side::lower}, 0).valid);
    CHECK(validity_I({Family::b, 3, Side::lower}, 0).valid);
    CHECK_FALSE(validity_I({Family::b, 0.5, Side::lower}, 2).valid);
    CHECK_FALSE(validity_I({Family::b, 0.5, Side::upper}, 2).valid);
    CHECK(validity_I({Family::B, 2, Side::lower}, 0).valid);
    CHECK(validity_I({Family::B, 0, Side::upper}, 0.5).valid);
    CHECK_FALSE(validity_I({Family::B, 0, Side::upper}, 0.4).valid);
    CHECK_FALSE(validity_I({Family::B, 1, Side::lower}, 1).valid);
    CHECK(validity_I({Family::Btilde, 0, Side::lower}, 0).valid);
    CHECK(validity_I({Family::Btilde, 2, Side::upper}, 0).valid);
    CHECK_FALSE(validity_I({Family::Btilde, 1, Side::upper}, 1).valid);
    CHECK(validity_I({Family::cf1, 0, Side::lower}, 0).valid);
    CHECK_FALSE(validity_I({Family::cf1, 0, Side::upper}, -0.5).valid);
  }

  TEST_CASE("evaluate attaches label and verdict without refusing") {
    const BoundValue v = evaluate_I({Family::B, 0, Side::upper}, 0.3, 1);
    CHECK(v.label == "B0");
    CHECK_FALSE(v.validity.valid);
    CHECK(v.value == Approx(B_alpha(0.3, 0, 1)));
    CHECK(evaluate_I({Family::b, -1, Side::upper}, 1, 1).label == "b-1");
    CHECK(evaluate_I({Family::Btilde, 2, Side::upper}, 1, 1).label == "Btilde2");
  }

  TEST_CASE("enclosure levels at nu=1, x=1") {
    const Enclosure e0 = enclosure_I(1, 1, 0);
    CHECK(e0.lower.value == Approx(0.41421356237309505).epsilon(1e-14));
    CHECK(e0.upper.value == Approx(0.6180339887498948).epsilon(1e-14));
    const Enclosure e1 = enclosure_I(1, 1, 1);
    CHECK(e1.lower.label == "Btilde0");
    CHECK(e1.upper.label == "Btilde2");
    CHECK(e1.lower.value == Approx(0.44538276889462814).epsilon(1e-14));
    CHECK(e1.upper.value == Approx(0.44644821135494938).epsilon(1e-14));
    const Enclosure e2 = enclosure_I(1, 1, 2);
    CHECK(e2.lower.value >= e1.lower.value);
    CHECK(e2.upper.value <= e1.upper.value);
    CHECK(e2.contains(0.44638996589653451));
    CHECK_THROWS_AS(enclosure_I(1, 1, 3), DomainError);
    CHECK_THROWS_AS(enclosure_I(-0.5, 1, 1), ValidityError);
  }

  TEST_CASE("enclosure below nu=1/2 excludes the nu>=1/2 families") {
    const Enclosure e = enclosure_I(0.3, 1, 1);
    CHECK(e.lower.validity.valid);
    CHECK(e.upper.validity.valid);
    CHECK(e.upper.label != "B0");
    CHECK(e.contains(1.0462448807510800));
  }

  TEST_CASE("nu=1/2 level 0 upper is 1 above tanh x") {
    const Enclosure e = enclosure_I(0.5, 3, 0);
    CHECK(e.upper.value == 1.0);
    CHECK(e.contains(std::tanh(3.0)));
  }

  TEST_CASE("property: every valid family brackets the oracle on a mixed grid") {
    const oracle::PrecisionConfig cfg = oracle::PrecisionConfig::with_digits(30);
    const BoundSpec specs[] = {{Family::b, 1, Side::lower},      {Family::b, 0, Side::upper},
                               {Family::b, -1, Side::upper},     {Family::B, 2, Side::lower},
                               {Family::B, 0, Side::upper},      {Family::B, 3.5, Side::lower},
                               {Family::B, -2, Side::upper},     {Family::Btilde, 0, Side::lower},
                               {Family::Btilde, 2, Side::upper}, {Family::cf1, 0, Side::lower},
                               {Family::cf1, 0, Side::upper}};
    for (double nu : {0.0, 0.1, 0.5, 0.75, 3.0, 17.0}) {
      for (double x : log_grid(1e-2, 1e2, 9)) {
        const double r = oracle::oracle_ratio_I(nu, x, cfg).to_double();
        for (const auto& s : specs) {
          const BoundValue v = evaluate_I(s, nu, x);
          if (!v.validity.valid) continue;
          CAPTURE(nu);
          CAPTURE(x);
          CAPTURE(v.label);
          if (s.side == Side::lower) {
            CHECK(v.value <= r * (1 + 1e-13));
          } else {
            CHECK(v.value >= r * (1 - 1e-13));
          }
        }
      }
    }
  }

  TEST_CASE("property: b and B decrease in alpha") {
    for (double nu : {0.0, 0.5, 2.0, 20.0}) {
      for (double x : {1e-3, 0.7, 40.0}) {
        double prev_b = b_alpha(nu, -4, x);
        double prev_B = B_alpha(nu, -4, x);
        for (double a = -3.5; a <= 4.0; a += 0.5) {
          CHECK(b_alpha(nu, a, x) <= prev_b);
          CHECK(B_alpha(nu, a, x) <= prev_B * (1 + 1e-15));
          prev_b = b_alpha(nu, a, x);
          prev_B = B_alpha(nu, a, x);
        }
      }
    }
  }
}
