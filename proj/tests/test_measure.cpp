#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gncs/measure.hpp"

using namespace gncs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Independent moment target: n! prod_k [(lambda+k-1/2)_n]^2 / (lambda+1/2)_n
// assembled from plain products rather than log_pochhammer.
double target_oracle(double lam, int r, int n) {
  double out = 1.0;
  for (int j = 1; j <= n; ++j) out *= j;
  for (int k = 1; k < r; ++k) {
    double poch = 1.0;
    for (int j = 0; j < n; ++j) poch *= lam + k - 0.5 + j;
    out *= poch * poch;
  }
  double poch = 1.0;
  for (int j = 0; j < n; ++j) poch *= lam + 0.5 + j;
  return out / poch;
}

}  // namespace

TEST_CASE("gamma-parameter vector of the weight", "[measure]") {
  CHECK(measure::b_parameters({0.75, 2}) == std::vector<double>{0.0, 0.25});
  CHECK(measure::b_parameters({1.5, 3}) ==
        std::vector<double>{0.0, 1.0, 2.0, 2.0});
  CHECK(measure::b_parameters({1.5, 4}) ==
        std::vector<double>{0.0, 1.0, 2.0, 2.0, 3.0, 3.0});
  CHECK_THROWS_AS(measure::b_parameters({0.75, 1}), std::domain_error);
}

TEST_CASE("moment targets", "[measure]") {
  CHECK(measure::moment_target({0.5, 2}, 0) == 1.0);
  // r=2, lambda=1/2: target_n = (n!)^2
  CHECK_THAT(measure::moment_target({0.5, 2}, 2), WithinRel(4.0, 1e-13));
  CHECK_THAT(measure::moment_target({0.5, 2}, 3), WithinRel(36.0, 1e-13));
  // r=3, lambda=3/2: n! (2)_n [(3)_n]^2 -> 1, 18, 1728, 518400
  CHECK_THAT(measure::moment_target({1.5, 3}, 1), WithinRel(18.0, 1e-13));
  CHECK_THAT(measure::moment_target({1.5, 3}, 2), WithinRel(1728.0, 1e-13));
  CHECK_THAT(measure::moment_target({1.5, 3}, 3), WithinRel(518400.0, 1e-13));
  for (double lam : {-0.25, 0.75, 1.5})
    for (int r : {2, 3, 4, 5})
      for (int n : {0, 1, 2, 3})
        CHECK_THAT(measure::moment_target({lam, r}, n),
                   WithinRel(target_oracle(lam, r, n), 1e-12));
}

TEST_CASE("r=2 weight is the Bessel-K closed form", "[measure]") {
  SECTION("lambda = 1/2 reduces to 2 K0(2 sqrt t) exactly") {
    for (double t : {0.1, 1.0, 5.0, 20.0}) {
      const double expect = 2.0 * bessel_k(0.0, 2.0 * std::sqrt(t));
      CHECK_THAT(measure::weight({0.5, 2}, t), WithinRel(expect, 1e-8));
    }
  }
  SECTION("general lambda carries t^{nu/2} K_nu / Gamma(lambda+1/2)") {
    for (double lam : {0.75, 1.5})
      for (double t : {0.1, 1.0, 5.0, 20.0}) {
        const double nu = lam - 0.5;
        const double expect = 2.0 * std::pow(t, 0.5 * nu) *
                              bessel_k(nu, 2.0 * std::sqrt(t)) /
                              std::exp(log_gamma(lam + 0.5));
        CHECK_THAT(measure::weight({lam, 2}, t), WithinRel(expect, 1e-8));
      }
  }
}

TEST_CASE("weight domain guards", "[measure]") {
  CHECK_THROWS_AS(measure::weight({0.75, 1}, 1.0), std::domain_error);
  CHECK_THROWS_AS(measure::weight({0.75, 2}, 1e-4), std::domain_error);
  CHECK_THROWS_AS(measure::weight({0.75, 2}, 30.0), std::domain_error);
  CHECK_THROWS_AS(measure::verify_moments({0.75, 1}, {0}), std::domain_error);
}

TEST_CASE("weight positive on the probe grid", "[measure]") {
  for (int r : {2, 3, 4})
    for (double lam : {0.75, 1.5})
      for (double t : {1e-3, 0.01, 0.1, 1.0, 5.0, 12.0, 25.0})
        CHECK(measure::weight({lam, r}, t) > 0.0);
}

TEST_CASE("identity-resolution moments", "[measure]") {
  SECTION("n = 0 anchored by construction") {
    const auto errs = measure::verify_moments({0.75, 3}, {0});
    CHECK(errs.front() <= 1e-7);
  }
  SECTION("r=2, lambda=1/2, n=2: target 4") {
    const auto errs = measure::verify_moments({0.5, 2}, {2});
    CHECK(errs.front() <= 1e-6);
  }
  SECTION("r=3, lambda=3/2, n=1: target 18") {
    // The quadrature against the absolute moment value, not just the
    // relative-error wrapper.
    const double got = measure::detail::moment_integral({1.5, 3}, 1, 1e-8);
    CHECK_THAT(got, WithinRel(18.0, 1e-6));
  }
  SECTION("grid of r, lambda, n") {
    for (int r : {2, 3, 4})
      for (double lam : {0.75, 1.5}) {
        const auto errs = measure::verify_moments({lam, r}, {0, 1, 2, 3});
        for (double e : errs) CHECK(e <= 1e-6);
      }
  }
}

TEST_CASE("printed prefactor carries a factor two", "[measure]") {
  for (int r : {2, 3, 4})
    for (double lam : {0.75, 1.5})
      CHECK_THAT(measure::printed_prefactor_ratio({lam, r}),
                 WithinRel(2.0, 1e-12));
}
