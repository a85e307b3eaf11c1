#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gncs/measure.hpp"
#include "gncs/specfun.hpp"

using namespace gncs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// ---------------------------------------------------------------------------
// Test-side oracles, independent of the implementation paths they check.
// ---------------------------------------------------------------------------
namespace {

// ln Gamma(1+x) for |x| < 1 from the zeta series
//   ln Gamma(1+x) = -gamma x + sum_{k>=2} zeta(k) (-x)^k / k,
// with enough tabulated zeta values for ~1e-16 at |x| <= 1/2.
double lgamma_series_oracle(double one_plus_x) {
  const double x = one_plus_x - 1.0;
  REQUIRE(std::abs(x) <= 0.5);
  static const double zeta[] = {
      0.0, 0.0,
      1.6449340668482264365, 1.2020569031595942854, 1.0823232337111381916,
      1.0369277551433699263, 1.0173430619844491397, 1.0083492773819228268,
      1.0040773561979443394, 1.0020083928260822144, 1.0009945751278180853,
      1.0004941886041194646, 1.0002460865533080483, 1.0001227133475784891,
      1.0000612481350587048, 1.0000305882363070205, 1.0000152822594086519,
      1.0000076371976378998, 1.0000038172932649998, 1.0000019082127165539,
      1.0000009539620338728, 1.0000004769329867878, 1.0000002384505027277,
      1.0000001192199259653, 1.0000000596081890513, 1.0000000298035035147,
      1.0000000149015548284, 1.0000000074507117898, 1.0000000037253340248,
      1.0000000018626597235, 1.0000000009313274324, 1.0000000004656629065,
      1.0000000002328311834, 1.0000000001164155017, 1.0000000000582077209,
      1.0000000000291038504, 1.0000000000145519219, 1.0000000000072759598,
      1.0000000000036379795, 1.0000000000018189896, 1.0000000000009094948};
  constexpr double euler_gamma = 0.57721566490153286061;
  double acc = -euler_gamma * x;
  double p = -x;  // (-x)^k, starting from k = 1
  for (int k = 2; k <= 40; ++k) {
    p *= -x;
    acc += zeta[k] * p / k;
  }
  return acc;
}

// Modified Bessel I0 by its power series.
double bessel_i0_series(double x) {
  double term = 1.0, acc = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= (x * x / 4.0) / (k * static_cast<double>(k));
    acc += term;
    if (term < 1e-18 * acc) break;
  }
  return acc;
}

// K0 from the series-plus-log expansion
//   K0(x) = -(ln(x/2) + gamma) I0(x) + sum_{k>=1} (x^2/4)^k H_k / (k!)^2.
double bessel_k0_series(double x) {
  constexpr double euler_gamma = 0.57721566490153286061;
  double sum = 0.0, term = 1.0, h = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= (x * x / 4.0) / (k * static_cast<double>(k));
    h += 1.0 / k;
    sum += term * h;
    if (term * h < 1e-18 * (std::abs(sum) + 1.0)) break;
  }
  return -(std::log(0.5 * x) + euler_gamma) * bessel_i0_series(x) + sum;
}

}  // namespace

TEST_CASE("log_gamma reference points", "[specfun]") {
  CHECK_THAT(log_gamma(1.0), WithinAbs(0.0, 1e-15));
  CHECK_THAT(log_gamma(0.5), WithinRel(0.57236494292470008707, 1e-14));
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-2.5), std::domain_error);
}

TEST_CASE("log_gamma(7.25) against the product-recurrence series oracle",
          "[specfun]") {
  // Gamma(7.25) = 6.25 * 5.25 * ... * 1.25 * Gamma(1.25)
  double expected = lgamma_series_oracle(1.25);
  for (double f = 1.25; f < 7.0; f += 1.0) expected += std::log(f);
  CHECK_THAT(log_gamma(7.25), WithinRel(expected, 1e-14));
  CHECK_THAT(log_gamma(7.25), WithinRel(7.0521854507385394449, 1e-14));
}

TEST_CASE("log_pochhammer basics", "[specfun]") {
  const auto empty = log_pochhammer(3.7, 0);
  CHECK(empty.log_abs == 0.0);
  CHECK(empty.sign == 1);

  const auto rising = log_pochhammer(2.0, 3);
  CHECK_THAT(rising.log_abs, WithinRel(std::log(24.0), 1e-14));
  CHECK(rising.sign == 1);

  const auto negative = log_pochhammer(-0.25, 2);
  CHECK_THAT(negative.log_abs, WithinRel(std::log(0.1875), 1e-14));
  CHECK(negative.sign == -1);

  CHECK_THROWS_AS(log_pochhammer(-2.0, 4), std::domain_error);
}

TEST_CASE("pfq elementary reductions", "[specfun]") {
  SECTION("0F0(;;1) = e") {
    const auto res = pfq({{}, {}, 1.0}, 1e-15);
    CHECK_THAT(res.value.real(), WithinRel(2.7182818284590452354, 1e-14));
    CHECK(res.tail_bound <= 1e-15);
  }
  SECTION("1F0(a;;x) = (1-x)^-a") {
    const auto res = pfq({{1.25}, {}, 0.5}, 1e-15);
    CHECK_THAT(res.value.real(), WithinRel(2.3784142300054421334, 5e-14));
  }
  SECTION("0F1(;lambda+1/2;|z|^2) = I0(4) at lambda=1/2, |z|=2") {
    const auto res = pfq({{}, {1.0}, 4.0}, 1e-15);
    CHECK_THAT(res.value.real(), WithinRel(bessel_i0_series(4.0), 1e-13));
  }
}

TEST_CASE("pfq shape and parameter validation", "[specfun]") {
  CHECK_THROWS_AS(pfq({{1.0, 2.0, 3.0}, {1.0}, 0.5}, 1e-12),
                  std::domain_error);  // p > q + 1
  CHECK_THROWS_AS(pfq({{1.0, 2.0}, {3.0}, 1.5}, 1e-12),
                  std::domain_error);  // p = q + 1 with |x| >= 1
  CHECK_THROWS_AS(pfq({{1.0}, {0.0}, 0.5}, 1e-12), std::domain_error);
  CHECK_THROWS_AS(pfq({{1.0}, {-3.0}, 0.5}, 1e-12), std::domain_error);
  CHECK_NOTHROW(pfq({{1.0, 2.0}, {3.0}, cplx(0.4, 0.3)}, 1e-12));
}

TEST_CASE("pfq term recursion matches direct log-gamma terms", "[specfun]") {
  // Partial-sum differences expose the recursion's individual terms.
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> par(0.3, 4.0);
  std::uniform_real_distribution<double> arg(-3.0, 3.0);
  std::uniform_int_distribution<int> pick_n(1, 24);
  for (int probe = 0; probe < 20; ++probe) {
    PfqParams p;
    p.numerator = {par(rng)};
    p.denominator = {par(rng), par(rng)};
    p.argument = arg(rng);
    const int n = pick_n(rng);
    // Recompute the recursion's term n as the ratio-product from term 0.
    cplx term = 1.0;
    for (int k = 0; k < n; ++k) {
      cplx ratio = p.argument / static_cast<double>(k + 1);
      for (double a : p.numerator) ratio *= a + k;
      for (double b : p.denominator) ratio /= b + k;
      term *= ratio;
    }
    const cplx direct = gncs::detail::pfq_term_direct(p, n);
    CHECK_THAT(std::abs(term - direct),
               WithinAbs(0.0, 1e-12 * std::abs(direct)));
  }
}

TEST_CASE("laguerre low orders and random closed-form agreement", "[specfun]") {
  CHECK(laguerre(0, 1.7, 3.9) == 1.0);
  CHECK_THAT(laguerre(1, 0.3, 2.0), WithinRel(1.0 + 0.3 - 2.0, 1e-15));
  CHECK_THAT(laguerre(2, 0.5, 1.0), WithinAbs(-0.125, 1e-14));

  std::mt19937 rng(98765);
  std::uniform_real_distribution<double> alpha(-0.9, 3.0);
  std::uniform_real_distribution<double> xs(0.0, 8.0);
  for (int i = 0; i < 50; ++i) {
    const double a = alpha(rng);
    const double x = xs(rng);
    const double l2 = 0.5 * x * x - (a + 2.0) * x + 0.5 * (a + 1.0) * (a + 2.0);
    const double l3 = (-x * x * x + 3.0 * (a + 3.0) * x * x -
                       3.0 * (a + 2.0) * (a + 3.0) * x +
                       (a + 1.0) * (a + 2.0) * (a + 3.0)) /
                      6.0;
    CHECK_THAT(laguerre(2, a, x), WithinAbs(l2, 1e-13 * (1.0 + std::abs(l2))));
    CHECK_THAT(laguerre(3, a, x), WithinAbs(l3, 1e-13 * (1.0 + std::abs(l3))));
  }
}

TEST_CASE("bessel_k half-integer closed form, series oracle, evenness",
          "[specfun]") {
  for (double x : {0.5, 2.0, 7.0}) {
    const double closed = std::sqrt(pi / (2.0 * x)) * std::exp(-x);
    CHECK_THAT(bessel_k(0.5, x), WithinRel(closed, 1e-11));
  }
  CHECK_THAT(bessel_k(0.0, 2.0), WithinRel(bessel_k0_series(2.0), 1e-11));
  CHECK_THAT(bessel_k(0.0, 2.0), WithinRel(0.11389387274953343565, 1e-11));
  CHECK(bessel_k(-0.75, 1.3) == bessel_k(0.75, 1.3));
  CHECK_THROWS_AS(bessel_k(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_k(0.5, -1.0), std::domain_error);
}

TEST_CASE("meijer weight reduces to Bessel K for m = 2", "[specfun]") {
  SECTION("b = (0,0): G(t|0,0) = 2 K0(2 sqrt t)") {
    const MellinWeight w{{0.0, 0.0}, default_contour_abscissa({0.0, 0.0}), 1.0};
    CHECK_THAT(meijer_g_weight(w, 1.0, 1e-12),
               WithinRel(2.0 * bessel_k(0.0, 2.0), 1e-10));
  }
  SECTION("b = (0,nu): G(t|0,nu) = 2 t^{nu/2} K_nu(2 sqrt t)") {
    const double nu = 0.75, t = 2.0;
    const MellinWeight w{{0.0, nu}, default_contour_abscissa({0.0, nu}), 1.0};
    const double closed =
        2.0 * std::pow(t, 0.5 * nu) * bessel_k(nu, 2.0 * std::sqrt(t));
    CHECK_THAT(meijer_g_weight(w, t, 1e-12), WithinRel(closed, 1e-10));
    CHECK_THAT(closed, WithinRel(0.11982936957794465202, 1e-10));
  }
  SECTION("m < 2 rejected") {
    CHECK_THROWS_AS(meijer_g_weight({{0.5}, 1.0, 1.0}, 1.0, 1e-10),
                    std::domain_error);
  }
}

TEST_CASE("meijer weight Mellin moments are gamma products", "[specfun]") {
  // r = 3, lambda = 3/2: b = (0, 1, 2, 2); int t^n G dt = prod Gamma(b_j+n+1).
  const AlgebraParams p{1.5, 3};
  const auto b = measure::b_parameters(p);
  REQUIRE(b == std::vector<double>{0.0, 1.0, 2.0, 2.0});
  for (int n : {0, 1, 2}) {
    double expect = 0.0;
    for (double bj : b) expect += log_gamma(bj + n + 1.0);
    const double got = measure::detail::moment_integral(p, n, 1e-8) /
                       measure::make_mellin_weight(p).normalization;
    CHECK_THAT(got, WithinRel(std::exp(expect), 1e-6));
  }
}

TEST_CASE("meijer weight nonnegative over the probe grid", "[specfun]") {
  for (int r : {2, 3, 4})
    for (double lam : {0.75, 1.5}) {
      const auto w = measure::make_mellin_weight({lam, r});
      for (int i = 0; i <= 24; ++i) {
        const double t =
            1e-3 * std::pow(25.0 / 1e-3, i / 24.0);  // log-spaced in [1e-3,25]
        CHECK(meijer_g_weight(w, t, 1e-11) >= 0.0);
      }
    }
}
