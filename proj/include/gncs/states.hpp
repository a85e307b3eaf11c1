#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "gncs/algebra.hpp"
#include "gncs/common.hpp"
#include "gncs/specfun.hpp"

// Construction of the generalized nonlinear coherent states: Fock-space
// coefficient vectors, normalization, overlaps, time evolution, and the
// nonlinearity-function eigenvalue relation.

namespace gncs {

struct GncsSpec {
  AlgebraParams params;
  double z_abs;    // |z|
  double z_phase;  // phi, with z = |z| e^{i phi}

  cplx z() const { return std::polar(z_abs, z_phase); }
};

inline void validate(const GncsSpec& s) {
  validate(s.params);
  if (s.z_abs < 0.0) throw std::domain_error("GncsSpec: requires |z| >= 0");
  // The r = 1 coefficient series has unit radius of convergence; analytic
  // continuation past it is out of scope.
  if (s.params.r == 1 && s.z_abs >= 1.0 - 1e-9)
    throw std::domain_error("GncsSpec: r = 1 requires |z| < 1");
}

struct FockCoefficients {
  double lambda;
  int r;
  double z_abs;
  double z_phase;
  std::vector<cplx> amplitudes;  // c_0 .. c_{n_max}
  double tail_bound;             // relative to the accumulated norm
  bool normalized;
  int turning_index;   // |c_n| is nonincreasing for n > turning_index
  double norm_factor;  // M = sum |c~_n|^2 before normalization

  int n_max() const { return static_cast<int>(amplitudes.size()) - 1; }
};

/// Ratio c_n / c_{n-1} of the unnormalized expansion coefficients,
/// z sqrt((n+lambda-1/2)/n) / prod_{k=1}^{r-1} (n+lambda+k-3/2).
inline cplx coefficient_ratio(const GncsSpec& s, int n) {
  if (n < 1) throw std::domain_error("coefficient_ratio: n must be >= 1");
  const double lam = s.params.lambda;
  double log_mag = 0.5 * (std::log(n + lam - 0.5) - std::log(static_cast<double>(n)));
  for (int k = 1; k < s.params.r; ++k) log_mag -= std::log(n + lam + k - 1.5);
  return s.z() * std::exp(log_mag);
}

inline constexpr int build_state_floor = 30;
inline constexpr int build_state_cap = 200000;

// Accumulates the coefficient recurrence until the geometric tail estimate of
// the norm drops below tolerance * accumulated norm, then normalizes.
inline FockCoefficients build_state(const GncsSpec& spec,
                                    double tolerance = 1e-14) {
  validate(spec);
  std::vector<cplx> c;
  c.reserve(64);
  c.push_back(1.0);
  CompensatedSum norm2;
  norm2.add(1.0);
  int turning = 0;
  double tail_rel = 0.0;
  const double t = spec.z_abs * spec.z_abs;

  for (int n = 1;; ++n) {
    if (n > build_state_cap)
      throw convergence_error("build_state: coefficient series did not settle");
    const cplx ratio = coefficient_ratio(spec, n);
    const cplx cn = c.back() * ratio;
    c.push_back(cn);
    norm2.add(std::norm(cn));
    if (std::abs(cn) > std::abs(c[c.size() - 2])) turning = n;

    if (n < build_state_floor) continue;
    // Geometric bound on the remaining |c|^2 mass. For r = 1 the squared
    // ratio increases toward |z|^2 when lambda < 1/2, so take the sup.
    double q = std::norm(coefficient_ratio(spec, n + 1));
    if (spec.params.r == 1) q = std::max(q, t);
    if (q >= 1.0) continue;
    const double tail = std::norm(cn) * q / (1.0 - q);
    if (tail <= tolerance * norm2.value()) {
      tail_rel = tail / norm2.value();
      break;
    }
  }

  const double m = norm2.value();
  const double inv = 1.0 / std::sqrt(m);
  for (auto& cn : c) cn *= inv;
  return {spec.params.lambda, spec.params.r, spec.z_abs, spec.z_phase,
          std::move(c),       tail_rel,      true,       turning,
          m};
}

/// Normalization constant M from its closed hypergeometric form
/// 1F_{2r-2}([lambda+1/2]; [pairs lambda+k-1/2, k=1..r-1]; |z|^2).
inline double normalization_pfq(const GncsSpec& spec, double tolerance = 1e-13) {
  validate(spec);
  const double lam = spec.params.lambda;
  PfqParams p;
  p.numerator = {lam + 0.5};
  for (int k = 1; k < spec.params.r; ++k) {
    p.denominator.push_back(lam + k - 0.5);
    p.denominator.push_back(lam + k - 0.5);
  }
  p.argument = spec.z_abs * spec.z_abs;
  return pfq(p, tolerance).value.real();
}

/// <a|b> as the direct coefficient sum; both states must share lambda.
inline cplx overlap(const FockCoefficients& a, const FockCoefficients& b) {
  if (a.lambda != b.lambda)
    throw std::domain_error("overlap: states live in different Hilbert spaces");
  const std::size_t n = std::min(a.amplitudes.size(), b.amplitudes.size());
  CompensatedCSum acc;
  for (std::size_t i = 0; i < n; ++i)
    acc.add(std::conj(a.amplitudes[i]) * b.amplitudes[i]);
  return acc.value();
}

// Scalar product from the closed hypergeometric form: equal deformations use
// the paired denominator list, mixed deformations the union of both lists.
inline cplx overlap_closed(const GncsSpec& a, const GncsSpec& b,
                           double tolerance = 1e-13) {
  validate(a);
  validate(b);
  if (a.params.lambda != b.params.lambda)
    throw std::domain_error("overlap_closed: lambda mismatch");
  const double lam = a.params.lambda;
  PfqParams p;
  p.numerator = {lam + 0.5};
  for (int k = 1; k < a.params.r; ++k) p.denominator.push_back(lam + k - 0.5);
  for (int k = 1; k < b.params.r; ++k) p.denominator.push_back(lam + k - 0.5);
  p.argument = std::conj(a.z()) * b.z();
  const cplx numer = pfq(p, tolerance).value;
  return numer / std::sqrt(normalization_pfq(a, tolerance) *
                           normalization_pfq(b, tolerance));
}

/// exp(-i t H) applied componentwise: c_n -> exp(-i t (2n + lambda + 1/2)) c_n.
/// Equals exp(-i t (lambda + 1/2)) times the state rebuilt at z e^{-2it}.
inline FockCoefficients evolve(const FockCoefficients& s, double t) {
  FockCoefficients out = s;
  const AlgebraParams p{s.lambda, s.r};
  for (std::size_t n = 0; n < out.amplitudes.size(); ++n) {
    const double e = hamiltonian_eigenvalue(p, static_cast<int>(n));
    out.amplitudes[n] *= std::polar(1.0, -t * e);
  }
  out.z_phase = s.z_phase - 2.0 * t;
  return out;
}

/// f(n) = Gamma(n+lambda+r-1/2) / Gamma(n+lambda+3/2); the deformed lowering
/// operator f(N) J- has the state as eigenvector with eigenvalue z.
inline double nonlinearity_function(const AlgebraParams& p, int n) {
  validate(p);
  return std::exp(log_gamma(n + p.lambda + p.r - 0.5) -
                  log_gamma(n + p.lambda + 1.5));
}

/// || f(N) J- |s> - z |s> || over components n < n_max.
inline double eigenstate_residual(const FockCoefficients& s,
                                  const GncsSpec& spec) {
  const cplx z = spec.z();
  CompensatedSum acc;
  for (int n = 0; n + 1 <= s.n_max(); ++n) {
    const double f = nonlinearity_function(spec.params, n);
    const double e = ladder_element(spec.params, n + 1);
    const cplx lhs = f * e * s.amplitudes[static_cast<std::size_t>(n) + 1];
    const cplx rhs = z * s.amplitudes[static_cast<std::size_t>(n)];
    acc.add(std::norm(lhs - rhs));
  }
  return std::sqrt(acc.value());
}

}  // namespace gncs
