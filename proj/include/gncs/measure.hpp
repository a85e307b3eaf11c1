#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "gncs/algebra.hpp"
#include "gncs/common.hpp"
#include "gncs/quadrature.hpp"
#include "gncs/specfun.hpp"

// Resolution-of-identity weight w(t): the Meijer G^{m,0}_{0,m} kernel whose
// power moments are the gamma products demanded by the diagonal expansion of
// the identity. The overall constant is anchored to the zeroth moment
// (int w = 1) rather than read off the printed prefactor; see
// printed_prefactor_ratio for the recorded discrepancy between the two.

namespace gncs {
namespace measure {

inline constexpr double weight_t_min = 1e-3;
inline constexpr double weight_t_max = 25.0;

/// Gamma-parameter vector of the weight: (0, lambda-1/2, then pairs
/// lambda+k-3/2 for k = 2..r-1); length 2r-2.
inline std::vector<double> b_parameters(const AlgebraParams& p) {
  validate(p);
  if (p.r < 2)
    throw std::domain_error(
        "measure: r = 1 states live on the unit disk; half-line weight "
        "unsupported");
  std::vector<double> b{0.0, p.lambda - 0.5};
  for (int k = 2; k < p.r; ++k) {
    b.push_back(p.lambda + k - 1.5);
    b.push_back(p.lambda + k - 1.5);
  }
  return b;
}

/// Moment target 1/rho_n = n! prod_{k=1}^{r-1} [(lambda+k-1/2)_n]^2 / (lambda+1/2)_n.
inline double moment_target(const AlgebraParams& p, int n) {
  validate(p);
  double log_t = log_gamma(n + 1.0);
  for (int k = 1; k < p.r; ++k)
    log_t += 2.0 * log_pochhammer(p.lambda + k - 0.5, n).log_abs;
  log_t -= log_pochhammer(p.lambda + 0.5, n).log_abs;
  return std::exp(log_t);
}

/// Weight specification with the zeroth-moment-anchored constant
/// 1 / prod_j Gamma(b_j + 1), which makes every moment equal its target.
inline MellinWeight make_mellin_weight(const AlgebraParams& p) {
  MellinWeight w;
  w.b_list = b_parameters(p);
  w.contour_abscissa = default_contour_abscissa(w.b_list);
  double log_norm = 0.0;
  for (double b : w.b_list) log_norm -= log_gamma(b + 1.0);
  w.normalization = std::exp(log_norm);
  return w;
}

/// w(t) on the validated domain t in [1e-3, 25].
inline double weight(const AlgebraParams& p, double t, double tolerance = 1e-12) {
  if (!(t >= weight_t_min && t <= weight_t_max))
    throw std::domain_error("measure::weight: t outside validated range");
  return meijer_g_weight(make_mellin_weight(p), t, tolerance);
}

/// Ratio between the printed prefactor of the weight,
/// 2 Gamma(lambda+1/2) / prod_{k=1}^{r-1} Gamma(lambda+k-1/2)^2, and the
/// moment-anchored constant. Equals 2 for every (lambda, r): the printed
/// constant carries a d|z|^2-versus-2|z|d|z| measure convention.
inline double printed_prefactor_ratio(const AlgebraParams& p) {
  const MellinWeight w = make_mellin_weight(p);
  double log_paper = std::log(2.0) + log_gamma(p.lambda + 0.5);
  for (int k = 1; k < p.r; ++k) log_paper -= 2.0 * log_gamma(p.lambda + k - 0.5);
  return std::exp(log_paper - std::log(w.normalization));
}

namespace detail {

// Weight evaluator for the moment integrals: shares prepared contours across
// t values, with the abscissa re-solved to the Mellin saddle per t-bucket so
// that large and small t stay free of catastrophic cancellation.
class MomentWeightEvaluator {
 public:
  explicit MomentWeightEvaluator(const AlgebraParams& p)
      : weight_(make_mellin_weight(p)) {}

  double operator()(double t, double tolerance = 1e-10) const {
    const int bucket =
        static_cast<int>(std::floor(std::log(t) / std::log(4.0)));
    auto it = contours_.find(bucket);
    if (it == contours_.end()) {
      const double t_center = std::pow(4.0, bucket + 0.5);
      const double c =
          gncs::detail::mellin_saddle_abscissa(weight_.b_list, t_center);
      it = contours_
               .emplace(bucket,
                        gncs::detail::MellinContour(weight_.b_list, c))
               .first;
    }
    return weight_.normalization * it->second.evaluate(t, tolerance);
  }

  const MellinWeight& spec() const { return weight_; }

 private:
  MellinWeight weight_;
  mutable std::map<int, gncs::detail::MellinContour> contours_;
};

// Cutoff T such that the mass of t^n w(t) past T is below eps_abs, from the
// exponential asymptotic G ~ C t^theta exp(-m t^{1/m}). Returned in the
// substituted variable v = t^{1/m}.
inline double tail_cutoff(const MellinWeight& w, int n, double eps_abs) {
  const int m = static_cast<int>(w.b_list.size());
  double bsum = 0.0;
  for (double b : w.b_list) bsum += b;
  const double theta = (bsum + 0.5 * (1.0 - m)) / m;
  const double s = m * (n + theta + 1.0);
  const double log_c = 0.5 * (m - 1) * std::log(2.0 * pi) - 0.5 * std::log(m) +
                       std::log(w.normalization);
  double v = std::max({2.0 * (s - 1.0) / m, 2.0, std::pow(25.0, 1.0 / m)});
  for (int it = 0; it < 4000; ++it) {
    const double log_bound = std::log(2.0) + log_c + (s - 1.0) * std::log(v) - m * v;
    if (log_bound <= std::log(eps_abs)) return v;
    v += 0.25;
  }
  throw convergence_error("measure: tail cutoff not found");
}

/// int_0^inf t^n w(t) dt by adaptive quadrature in v = t^{1/m}.
inline double moment_integral(const AlgebraParams& p, int n,
                              double rel_tolerance) {
  const MomentWeightEvaluator eval(p);
  const int m = static_cast<int>(eval.spec().b_list.size());
  const double target_scale = std::max(1.0, moment_target(p, n));
  const double v_lo = std::pow(1e-10, 1.0 / m);
  const double v_hi = tail_cutoff(eval.spec(), n, 1e-3 * rel_tolerance * target_scale);
  const auto f = [&](double v) {
    const double t = std::pow(v, m);
    return static_cast<double>(m) * std::pow(v, m * (n + 1) - 1) * eval(t);
  };
  return integrate_adaptive(f, v_lo, v_hi, 0.1 * rel_tolerance,
                            /*abs_floor=*/1e-6 * target_scale,
                            /*initial_panels=*/16);
}

}  // namespace detail

/// Relative errors |moment_n - target_n| / target_n for each requested n.
inline std::vector<double> verify_moments(const AlgebraParams& p,
                                          const std::vector<int>& n_list,
                                          double tolerance = 1e-6) {
  validate(p);
  if (p.r < 2) throw std::domain_error("verify_moments: requires r >= 2");
  std::vector<double> errors;
  errors.reserve(n_list.size());
  for (int n : n_list) {
    const double target = moment_target(p, n);
    const double got = detail::moment_integral(p, n, tolerance);
    errors.push_back(std::abs(got - target) / target);
  }
  return errors;
}

}  // namespace measure
}  // namespace gncs
