#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "gncs/common.hpp"
#include "gncs/specfun.hpp"
#include "gncs/states.hpp"

// Moments of the su(1,1) generators in a GNCS, quadrature variances and
// squeezing factors, second-order correlation, and the Mandel parameter.
// Direct coefficient sums are the single source of truth; the hypergeometric
// closed forms are regression-tested claims whose deviations are reported,
// never silently trusted.

namespace gncs {
namespace observables {

struct ExpectationSet {
  cplx jp;         // <J+>
  cplx jm;         // <J-> = conj(<J+>)
  cplx jp2;        // <J+^2>
  cplx jm2;        // <J-^2> = conj(<J+^2>)
  double jpjm;     // <J+ J->
  double j3;       // <J3>
  double n_mean;   // <N>
  double n2_mean;  // <N^2>
};

/// All eight moments by direct sums over the coefficient vector, ascending n
/// with compensated accumulation.
inline ExpectationSet expectations_direct(const FockCoefficients& s) {
  if (!s.normalized || s.tail_bound > 1e-13)
    throw precision_error(
        "expectations_direct: state truncation too coarse for moment sums");
  const AlgebraParams p{s.lambda, s.r};
  const int top = s.n_max();
  CompensatedCSum jp, jp2;
  CompensatedSum jpjm, j3, nm, n2;
  for (int n = 0; n <= top; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const double w = std::norm(s.amplitudes[un]);
    const double en = ladder_element(p, n);
    jpjm.add(w * en * en);
    j3.add(w * j3_eigenvalue(p, n));
    nm.add(w * n);
    n2.add(w * static_cast<double>(n) * n);
    if (n + 1 <= top)
      jp.add(std::conj(s.amplitudes[un + 1]) * s.amplitudes[un] *
             ladder_element(p, n + 1));
    if (n + 2 <= top)
      jp2.add(std::conj(s.amplitudes[un + 2]) * s.amplitudes[un] *
              ladder_element(p, n + 2) * ladder_element(p, n + 1));
  }
  ExpectationSet e;
  e.jp = jp.value();
  e.jm = std::conj(e.jp);
  e.jp2 = jp2.value();
  e.jm2 = std::conj(e.jp2);
  e.jpjm = jpjm.value();
  e.j3 = j3.value();
  e.n_mean = nm.value();
  e.n2_mean = n2.value();
  return e;
}

namespace detail {

// Denominator parameter lists of the closed-form moment ratios, derived by
// shifting the coefficient recurrence. They reduce to the printed r = 2, 3
// expressions; for the two places the printed prefactors disagree with the
// recurrence (the <N> gamma ratio and the <J3> constant) the derived values
// are used and the printed variants surface in the discrepancy report.
inline std::vector<double> denom_jp(double lam, int r) {
  std::vector<double> d;
  for (int k = 1; k < r; ++k) d.push_back(lam + k - 0.5);
  // numerator (lam+3/2)_n cancels the k = 1 entry of the shifted list
  for (int k = 2; k < r; ++k) d.push_back(lam + k + 0.5);
  return d;
}

inline std::vector<double> denom_jp2(double lam, int r) {
  std::vector<double> d;
  for (int k = 1; k < r; ++k) d.push_back(lam + k - 0.5);
  for (int k = 1; k < r; ++k) d.push_back(lam + k + 1.5);
  return d;
}

inline std::vector<double> denom_jpjm(double lam, int r) {
  std::vector<double> d{lam + 0.5};
  for (int k = 2; k < r; ++k) {
    d.push_back(lam + k + 0.5);
    d.push_back(lam + k + 0.5);
  }
  return d;
}

inline std::vector<double> denom_n_mean(double lam, int r) {
  std::vector<double> d{lam + 1.5};
  for (int k = 2; k < r; ++k) {
    d.push_back(lam + k + 0.5);
    d.push_back(lam + k + 0.5);
  }
  return d;
}

inline std::vector<double> denom_n2(double lam, int r) {
  std::vector<double> d{1.0, lam + 1.5};
  for (int k = 2; k < r; ++k) {
    d.push_back(lam + k + 0.5);
    d.push_back(lam + k + 0.5);
  }
  return d;
}

inline double hyper(const std::vector<double>& num,
                    const std::vector<double>& den, double x, double tol) {
  PfqParams p;
  p.numerator = num;
  p.denominator = den;
  p.argument = x;
  return pfq(p, tol).value.real();
}

inline double gamma_ratio(double a, double b) {
  return std::exp(log_gamma(a) - log_gamma(b));
}

}  // namespace detail

/// The moments from the hypergeometric closed forms (r >= 2; the r = 1
/// parameter lists degenerate and only the direct sums apply there).
inline ExpectationSet expectations_closed(const GncsSpec& spec,
                                          double tolerance = 1e-13) {
  validate(spec);
  if (spec.params.r < 2)
    throw std::domain_error("expectations_closed: requires r >= 2");
  const double lam = spec.params.lambda;
  const int r = spec.params.r;
  const double t = spec.z_abs * spec.z_abs;
  const cplx zbar = std::conj(spec.z());
  const double m = normalization_pfq(spec, tolerance);

  ExpectationSet e;
  e.jp = zbar * detail::gamma_ratio(lam + 1.5, lam + r - 0.5) *
         detail::hyper({}, detail::denom_jp(lam, r), t, tolerance) / m;
  e.jm = std::conj(e.jp);
  e.jp2 = zbar * zbar * detail::gamma_ratio(lam + 1.5, lam + r - 0.5) *
          detail::gamma_ratio(lam + 2.5, lam + r + 0.5) *
          detail::hyper({lam + 2.5}, detail::denom_jp2(lam, r), t, tolerance) /
          m;
  e.jm2 = std::conj(e.jp2);
  const double c3 = detail::gamma_ratio(lam + 1.5, lam + r - 0.5);
  e.jpjm = t * c3 * c3 *
           detail::hyper({}, detail::denom_jpjm(lam, r), t, tolerance) / m;
  // <J3>: numerator [lambda+1/2, lambda/2+5/4], denominators
  // [lambda/2+1/4] plus the paired normalization list.
  {
    std::vector<double> den{0.5 * lam + 0.25};
    for (int k = 1; k < r; ++k) {
      den.push_back(lam + k - 0.5);
      den.push_back(lam + k - 0.5);
    }
    e.j3 = (0.5 * lam + 0.25) *
           detail::hyper({lam + 0.5, 0.5 * lam + 1.25}, den, t, tolerance) / m;
  }
  e.n_mean = (t / (lam + 0.5)) * c3 * c3 *
             detail::hyper({}, detail::denom_n_mean(lam, r), t, tolerance) / m;
  e.n2_mean = (t / (lam + 0.5)) * c3 * c3 *
              detail::hyper({2.0}, detail::denom_n2(lam, r), t, tolerance) / m;
  return e;
}

struct QuadratureReport {
  double var_x1;
  double var_x2;
  double j3_abs;
  double s1;
  double s2;
};

/// Variances of X1 = (J+ + J-)/2 and X2 = (J- - J+)/2i and the squeezing
/// factors S_i = (var_i - |<J3>|/2) / (|<J3>|/2); S_i < 0 signals squeezing,
/// S_i = -1 is maximal.
inline QuadratureReport quadratures(const ExpectationSet& e) {
  const double re_jp2 = e.jp2.real();
  const double re_jp = e.jp.real();
  const double im_jp = e.jp.imag();
  QuadratureReport q;
  q.var_x1 =
      (2.0 * e.jpjm + 2.0 * e.j3 + 2.0 * re_jp2 - 4.0 * re_jp * re_jp) / 4.0;
  q.var_x2 =
      (2.0 * e.jpjm + 2.0 * e.j3 - 2.0 * re_jp2 - 4.0 * im_jp * im_jp) / 4.0;
  q.j3_abs = std::abs(e.j3);
  if (q.j3_abs == 0.0)
    throw std::domain_error("quadratures: degenerate |<J3>| = 0");
  const double half = 0.5 * q.j3_abs;
  q.s1 = (q.var_x1 - half) / half;
  q.s2 = (q.var_x2 - half) / half;
  return q;
}

struct StatisticsReport {
  double g2;  // second-order correlation
  double q;   // Mandel parameter <N>(g2 - 1)
};

inline StatisticsReport statistics(const ExpectationSet& e) {
  if (!(e.n_mean > 0.0))
    throw std::domain_error("statistics: undefined for <N> = 0");
  StatisticsReport s;
  s.g2 = (e.n2_mean - e.n_mean) / (e.n_mean * e.n_mean);
  s.q = e.n_mean * (s.g2 - 1.0);
  return s;
}

// ---------------------------------------------------------------------------
// Closed-form regression report
// ---------------------------------------------------------------------------

struct Discrepancy {
  std::string quantity;
  double lambda;
  int r;
  double z_abs2;
  double phi;
  double relative_deviation;
  bool informational;  // printed-variant probes, not closed-vs-direct checks
};

inline double rel_dev(cplx closed, cplx direct) {
  const double scale = std::max({std::abs(direct), std::abs(closed), 1e-30});
  return std::abs(closed - direct) / scale;
}

/// Compares every closed-form moment against the direct sum on one state and
/// appends entries above `threshold` to `out`. Returns the worst deviation.
inline double collect_closed_form_deviations(const GncsSpec& spec,
                                             std::vector<Discrepancy>& out,
                                             double threshold = 1e-8) {
  const auto direct = expectations_direct(build_state(spec));
  const auto closed = expectations_closed(spec);
  const double t = spec.z_abs * spec.z_abs;
  const std::pair<const char*, double> items[] = {
      {"<J+>", rel_dev(closed.jp, direct.jp)},
      {"<J+^2>", rel_dev(closed.jp2, direct.jp2)},
      {"<J+J->", rel_dev(closed.jpjm, direct.jpjm)},
      {"<J3>", rel_dev(closed.j3, direct.j3)},
      {"<N>", rel_dev(closed.n_mean, direct.n_mean)},
      {"<N^2>", rel_dev(closed.n2_mean, direct.n2_mean)},
  };
  double worst = 0.0;
  for (const auto& [name, dev] : items) {
    worst = std::max(worst, dev);
    if (dev > threshold)
      out.push_back({name, spec.params.lambda, spec.params.r, t, spec.z_phase,
                     dev, false});
  }
  return worst;
}

/// Probes of the printed closed-form variants that the derivation overrides;
/// always reported, never asserted.
inline void collect_printed_variant_probes(std::vector<Discrepancy>& out) {
  // <N> with the printed gamma-ratio prefactor Gamma(lambda+5/2)/Gamma(lambda+r+1/2).
  {
    const GncsSpec spec{{1.5, 3}, 2.0, 0.0};
    const auto direct = expectations_direct(build_state(spec));
    const double lam = spec.params.lambda;
    const int r = spec.params.r;
    const double t = spec.z_abs * spec.z_abs;
    const double c = detail::gamma_ratio(lam + 2.5, lam + r + 0.5);
    const double printed =
        (t / (lam + 0.5)) * c * c *
        detail::hyper({}, detail::denom_n_mean(lam, r), t, 1e-13) /
        normalization_pfq(spec);
    out.push_back({"printed <N> prefactor (r=3)", lam, r, t, 0.0,
                   rel_dev(printed, direct.n_mean), true});
  }
  // <J3> with the printed constant (lambda + 1/2) in place of lambda/2 + 1/4.
  {
    const GncsSpec spec{{1.5, 2}, 1.0, 0.0};
    const auto direct = expectations_direct(build_state(spec));
    const auto closed = expectations_closed(spec);
    const double printed = closed.j3 * (spec.params.lambda + 0.5) /
                           (0.5 * spec.params.lambda + 0.25);
    out.push_back({"printed <J3> constant", spec.params.lambda, spec.params.r,
                   1.0, 0.0, rel_dev(printed, direct.j3), true});
  }
  // r = 1 second-order correlation: measured constant versus both candidate
  // closed forms (printed 1 + 1/(1 + lambda/2), derived 1 + 1/(lambda + 1/2)).
  {
    const double lam = 0.75;
    const GncsSpec spec{{lam, 1}, std::sqrt(0.4), 0.0};
    const auto st = statistics(expectations_direct(build_state(spec)));
    out.push_back({"r=1 g2 vs printed 1+1/(1+lam/2)", lam, 1, 0.4, 0.0,
                   std::abs(st.g2 - (1.0 + 1.0 / (1.0 + 0.5 * lam))), true});
    out.push_back({"r=1 g2 vs derived 1+1/(lam+1/2)", lam, 1, 0.4, 0.0,
                   std::abs(st.g2 - (1.0 + 1.0 / (lam + 0.5))), true});
  }
}

}  // namespace observables
}  // namespace gncs
