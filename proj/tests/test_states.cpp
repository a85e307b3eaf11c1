#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "gncs/states.hpp"

using namespace gncs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double bessel_i0_series(double x) {
  double term = 1.0, acc = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= (x * x / 4.0) / (k * static_cast<double>(k));
    acc += term;
    if (term < 1e-18 * acc) break;
  }
  return acc;
}

// Unnormalized |c_n|^2 from the gamma-product form of the expansion, the
// oracle the recurrence must reproduce.
double coeff_sq_oracle(double lam, int r, double z_abs, int n) {
  double lg = n * 2.0 * std::log(z_abs);
  for (int k = 1; k < r; ++k)
    lg += 2.0 * (log_gamma(lam + k - 0.5) - log_gamma(n + lam + k - 0.5));
  lg += log_gamma(n + lam + 0.5) - log_gamma(lam + 0.5) - log_gamma(n + 1.0);
  return std::exp(lg);
}

}  // namespace

TEST_CASE("coefficient ratio reductions", "[states]") {
  SECTION("r=2, lambda=1/2 gives c_n = z^n / n!") {
    const GncsSpec s{{0.5, 2}, 1.7, 0.4};
    for (int n = 1; n <= 20; ++n) {
      const cplx expect = s.z() / static_cast<double>(n);
      CHECK_THAT(std::abs(coefficient_ratio(s, n) - expect),
                 WithinAbs(0.0, 1e-15 * std::abs(expect)));
    }
  }
  SECTION("r=1 keeps only the square-root factor") {
    const GncsSpec s{{0.8, 1}, 0.6, 0.0};
    for (int n = 1; n <= 10; ++n) {
      const double expect = 0.6 * std::sqrt((n + 0.8 - 0.5) / n);
      CHECK_THAT(coefficient_ratio(s, n).real(), WithinRel(expect, 1e-14));
    }
  }
  SECTION("r=3 ratio falls like z/n^2") {
    const GncsSpec s{{0.5, 3}, 1.0, 0.0};
    const double big_n = 4000;
    CHECK_THAT(std::abs(coefficient_ratio(s, 4000)) * big_n * big_n,
               WithinRel(1.0, 1e-2));
  }
}

TEST_CASE("build_state limits and normalization", "[states]") {
  SECTION("z = 0 is the vacuum") {
    const auto s = build_state({{0.9, 3}, 0.0, 0.0});
    CHECK(s.amplitudes[0] == cplx(1.0, 0.0));
    for (std::size_t n = 1; n < s.amplitudes.size(); ++n)
      CHECK(s.amplitudes[n] == cplx(0.0, 0.0));
    CHECK(s.norm_factor == 1.0);
  }
  SECTION("r=2, lambda=1/2, |z|=2: M = I0(4)") {
    const auto s = build_state({{0.5, 2}, 2.0, 0.3});
    CHECK_THAT(s.norm_factor, WithinRel(bessel_i0_series(4.0), 1e-12));
    CHECK_THAT(normalization_pfq({{0.5, 2}, 2.0, 0.3}),
               WithinRel(bessel_i0_series(4.0), 1e-12));
  }
  SECTION("r=1, lambda=3/4, |z|=0.5: M = (1 - 1/4)^(-5/4)") {
    const auto s = build_state({{0.75, 1}, 0.5, 0.0});
    CHECK_THAT(s.norm_factor, WithinRel(std::pow(0.75, -1.25), 1e-12));
  }
  SECTION("normalized sum of squares is one") {
    const auto s = build_state({{1.5, 4}, 2.0, 1.1});
    double n2 = 0.0;
    for (const auto& c : s.amplitudes) n2 += std::norm(c);
    CHECK_THAT(n2, WithinAbs(1.0, 1e-12));
    CHECK(s.tail_bound <= 1e-14);
  }
  SECTION("r=1 divergence guard") {
    CHECK_THROWS_AS(build_state({{0.75, 1}, 1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(build_state({{0.75, 1}, 1.5, 0.0}), std::domain_error);
  }
}

TEST_CASE("coefficients match the gamma-product oracle", "[states]") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> lam_d(-0.4, 2.0);
  std::uniform_int_distribution<int> r_d(1, 5);
  for (int probe = 0; probe < 12; ++probe) {
    const double lam = lam_d(rng);
    const int r = r_d(rng);
    const double z_abs = (r == 1) ? 0.55 : 1.8;
    const auto s = build_state({{lam, r}, z_abs, 0.0});
    for (int n : {0, 1, 3, 7, 15}) {
      const double expect =
          coeff_sq_oracle(lam, r, z_abs, n) / s.norm_factor;
      CHECK_THAT(std::norm(s.amplitudes[static_cast<std::size_t>(n)]),
                 WithinAbs(expect, 1e-12 * (1.0 + expect)));
    }
  }
}

TEST_CASE("amplitude moduli decrease past the turning index", "[states]") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> lam_d(-0.4, 2.0);
  std::uniform_real_distribution<double> z2_d(0.2, 18.0);
  std::uniform_int_distribution<int> r_d(2, 5);
  for (int probe = 0; probe < 16; ++probe) {
    const auto s = build_state(
        {{lam_d(rng), r_d(rng)}, std::sqrt(z2_d(rng)), 0.0});
    for (int n = s.turning_index + 1; n < s.n_max(); ++n)
      CHECK(std::abs(s.amplitudes[static_cast<std::size_t>(n) + 1]) <=
            std::abs(s.amplitudes[static_cast<std::size_t>(n)]) *
                (1.0 + 1e-14));
  }
}

TEST_CASE("overlap: direct sum and closed forms", "[states]") {
  SECTION("self-overlap of a normalized state is one") {
    const auto s = build_state({{0.75, 3}, 1.3, 0.9});
    const cplx o = overlap(s, s);
    CHECK_THAT(o.real(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(o.imag(), WithinAbs(0.0, 1e-13));
  }
  SECTION("r=2, lambda=1/2: 0F1(;1;zbar1 z2)/sqrt(I0 I0)") {
    const GncsSpec a{{0.5, 2}, 1.0, 0.0};
    const GncsSpec b{{0.5, 2}, 2.0, 0.0};
    const cplx direct = overlap(build_state(a), build_state(b));
    double f01 = 0.0;  // 0F1(;1;2) by its series
    {
      double term = 1.0;
      for (int k = 0; k < 100; ++k) {
        f01 += term;
        term *= 2.0 / ((k + 1.0) * (k + 1.0));
      }
    }
    const double expect =
        f01 / std::sqrt(bessel_i0_series(2.0) * bessel_i0_series(4.0));
    CHECK_THAT(direct.real(), WithinRel(expect, 1e-11));
    CHECK_THAT(overlap_closed(a, b).real(), WithinRel(expect, 1e-11));
  }
  SECTION("vacuum projection picks out c_0 = M^{-1/2}") {
    const GncsSpec vac{{1.5, 2}, 0.0, 0.0};
    const GncsSpec b{{1.5, 2}, 1.7, 0.6};
    const auto sb = build_state(b);
    const cplx o = overlap(build_state(vac), sb);
    CHECK_THAT(std::abs(o - sb.amplitudes[0]), WithinAbs(0.0, 1e-14));
    CHECK_THAT(o.real(), WithinRel(1.0 / std::sqrt(sb.norm_factor), 1e-12));
  }
  SECTION("equal-r closed form vs direct across phases") {
    const GncsSpec a{{0.75, 3}, 1.1, 0.3};
    const GncsSpec b{{0.75, 3}, 1.9, -0.8};
    const cplx direct = overlap(build_state(a), build_state(b));
    const cplx closed = overlap_closed(a, b);
    CHECK_THAT(std::abs(direct - closed), WithinAbs(0.0, 1e-10));
  }
  SECTION("mixed-r closed form (r1, r2 in {2,3}) vs direct") {
    const GncsSpec a{{0.75, 2}, 1.2, 0.5};
    const GncsSpec b{{0.75, 3}, 1.2, 0.5};
    const cplx direct = overlap(build_state(a), build_state(b));
    const cplx closed = overlap_closed(a, b);
    CHECK_THAT(std::abs(direct - closed), WithinAbs(0.0, 1e-10));
  }
  SECTION("lambda mismatch rejected") {
    const auto a = build_state({{0.5, 2}, 1.0, 0.0});
    const auto b = build_state({{0.75, 2}, 1.0, 0.0});
    CHECK_THROWS_AS(overlap(a, b), std::domain_error);
    CHECK_THROWS_AS(overlap_closed({{0.5, 2}, 1.0, 0.0}, {{0.75, 2}, 1.0, 0.0}),
                    std::domain_error);
  }
}

TEST_CASE("time evolution", "[states]") {
  const GncsSpec spec{{0.75, 3}, 1.4, 0.7};
  const auto s = build_state(spec);
  SECTION("t = 0 is the identity") {
    const auto e = evolve(s, 0.0);
    for (std::size_t n = 0; n < s.amplitudes.size(); ++n)
      CHECK(e.amplitudes[n] == s.amplitudes[n]);
  }
  SECTION("t = pi is a global phase at the same z") {
    const auto e = evolve(s, pi);
    const cplx phase = std::polar(1.0, -pi * (0.75 + 0.5));
    for (std::size_t n = 0; n < s.amplitudes.size(); ++n)
      CHECK_THAT(std::abs(e.amplitudes[n] - phase * s.amplitudes[n]),
                 WithinAbs(0.0, 1e-13));
  }
  SECTION("t = pi/4 matches the rebuilt state at rotated z") {
    const double t = pi / 4.0;
    const auto e = evolve(s, t);
    const auto rebuilt =
        build_state({spec.params, spec.z_abs, spec.z_phase - 2.0 * t});
    const cplx phase = std::polar(1.0, -t * (0.75 + 0.5));
    REQUIRE(e.n_max() == rebuilt.n_max());
    for (std::size_t n = 0; n < e.amplitudes.size(); ++n)
      CHECK_THAT(std::abs(e.amplitudes[n] - phase * rebuilt.amplitudes[n]),
                 WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("nonlinearity function closed values", "[states]") {
  for (int n : {0, 1, 2, 5, 11}) {
    CHECK_THAT(nonlinearity_function({0.7, 2}, n), WithinRel(1.0, 1e-14));
    CHECK_THAT(nonlinearity_function({0.7, 3}, n),
               WithinRel(n + 0.7 + 1.5, 1e-13));
    CHECK_THAT(nonlinearity_function({0.7, 1}, n),
               WithinRel(1.0 / (n + 0.7 + 0.5), 1e-13));
  }
}

TEST_CASE("eigenstate relation f(N) J- |z> = z |z>", "[states]") {
  SECTION("r=2 bare annihilation") {
    const GncsSpec spec{{1.5, 2}, 1.8, 0.4};
    CHECK(eigenstate_residual(build_state(spec), spec) < 1e-10);
  }
  SECTION("vacuum is annihilated") {
    const GncsSpec spec{{0.75, 4}, 0.0, 0.0};
    CHECK(eigenstate_residual(build_state(spec), spec) == 0.0);
  }
  SECTION("r=4, lambda=1, z = 1.5 + 0.5i") {
    const double z_abs = std::abs(cplx(1.5, 0.5));
    const double z_phase = std::arg(cplx(1.5, 0.5));
    const GncsSpec spec{{1.0, 4}, z_abs, z_phase};
    CHECK(eigenstate_residual(build_state(spec), spec) < 1e-10);
  }
}

TEST_CASE("r=1 reduction: Klauder-Perelomov coefficients", "[states]") {
  // With 2 kappa = lambda + 1/2, the r = 1 state carries
  // |c_n|^2 = M^-1 (lambda+1/2)_n / n! |z|^{2n}.
  const double lam = 0.75;
  const GncsSpec spec{{lam, 1}, 0.6, 0.0};
  const auto s = build_state(spec);
  for (int n : {0, 1, 2, 5, 9}) {
    const auto lp = log_pochhammer(lam + 0.5, n);
    const double expect = std::exp(lp.log_abs - log_gamma(n + 1.0) +
                                   2.0 * n * std::log(0.6)) /
                          s.norm_factor;
    CHECK_THAT(std::norm(s.amplitudes[static_cast<std::size_t>(n)]),
               WithinRel(expect, 1e-12));
  }
}

TEST_CASE("r=2 reduction: Barut-Girardello coefficients", "[states]") {
  // c_n = M^{-1/2} z^n sqrt(Gamma(lambda+1/2) / (n! Gamma(n+lambda+1/2))).
  const double lam = 1.5;
  const GncsSpec spec{{lam, 2}, 1.3, 0.5};
  const auto s = build_state(spec);
  for (int n : {0, 1, 2, 6, 12}) {
    const double mag = std::exp(
        0.5 * (log_gamma(lam + 0.5) - log_gamma(n + 1.0) -
               log_gamma(n + lam + 0.5)) +
        n * std::log(1.3));
    const cplx expect = std::polar(mag / std::sqrt(s.norm_factor), 0.5 * n);
    CHECK_THAT(std::abs(s.amplitudes[static_cast<std::size_t>(n)] - expect),
               WithinAbs(0.0, 1e-13 * (1.0 + std::abs(expect))));
  }
}
