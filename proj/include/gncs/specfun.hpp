#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "gncs/common.hpp"
#include "gncs/quadrature.hpp"

// Special-function kernel: log-gamma arithmetic, generalized hypergeometric
// series, Laguerre polynomials, Bessel K, and the Meijer G^{m,0}_{0,m} weight
// evaluated as a Mellin-Barnes contour integral. Everything here is pure and
// reentrant.

namespace gncs {

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  return std::lgamma(x);
}

struct LogPochhammer {
  double log_abs;  // ln |(a)_n|
  int sign;        // sign of (a)_n, +1 or -1
};

/// (a)_n = a (a+1) ... (a+n-1) in log-magnitude/sign form; (a)_0 = 1.
inline LogPochhammer log_pochhammer(double a, int n) {
  if (n < 0) throw std::domain_error("log_pochhammer: n must be >= 0");
  LogPochhammer out{0.0, +1};
  for (int k = 0; k < n; ++k) {
    const double f = a + k;
    if (f == 0.0)
      throw std::domain_error("log_pochhammer: zero factor in product");
    out.log_abs += std::log(std::abs(f));
    if (f < 0.0) out.sign = -out.sign;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generalized hypergeometric series pFq
// ---------------------------------------------------------------------------

struct PfqParams {
  std::vector<double> numerator;    // the [a] list
  std::vector<double> denominator;  // the [b] list
  cplx argument;
};

struct SeriesResult {
  cplx value;
  int terms_used;
  double tail_bound;  // relative truncation-error estimate
};

namespace detail {

inline bool near_nonpositive_integer(double b) {
  if (b > 0.5) return false;
  const double r = std::round(b);
  return r <= 0.0 && std::abs(b - r) < 1e-12;
}

inline void validate_pfq_shape(const PfqParams& p) {
  for (double b : p.denominator)
    if (near_nonpositive_integer(b))
      throw std::domain_error(
          "pfq: denominator parameter is zero or a negative integer");
  const std::size_t np = p.numerator.size();
  const std::size_t nq = p.denominator.size();
  if (std::abs(p.argument) == 0.0) return;
  if (np > nq + 1)
    throw std::domain_error("pfq: series diverges for p > q + 1");
  if (np == nq + 1 && std::abs(p.argument) >= 1.0)
    throw std::domain_error("pfq: p = q + 1 requires |argument| < 1");
}

// Term n of the series evaluated directly from log-gamma products.
// Shared with the tests, which compare it against the ratio recursion.
inline cplx pfq_term_direct(const PfqParams& p, int n) {
  double log_mag = -log_gamma(static_cast<double>(n) + 1.0);
  int sign = +1;
  for (double a : p.numerator) {
    const auto lp = log_pochhammer(a, n);
    log_mag += lp.log_abs;
    sign *= lp.sign;
  }
  for (double b : p.denominator) {
    const auto lp = log_pochhammer(b, n);
    log_mag -= lp.log_abs;
    sign *= lp.sign;
  }
  return static_cast<double>(sign) * std::exp(log_mag) *
         std::pow(p.argument, n);
}

}  // namespace detail

inline constexpr int pfq_term_cap = 10000;

// Sum of the series by term-ratio recursion with scaled-mantissa (log-domain)
// bookkeeping. The tail estimate is geometric extrapolation from the last
// ratio once the ratio has fallen below one.
inline SeriesResult pfq(const PfqParams& p, double tolerance) {
  detail::validate_pfq_shape(p);

  const auto ratio_at = [&p](int n) -> cplx {
    // term_{n+1} / term_n
    cplx r = p.argument / static_cast<double>(n + 1);
    for (double a : p.numerator) r *= a + n;
    for (double b : p.denominator) r /= b + n;
    return r;
  };

  CompensatedCSum acc;
  cplx term = 1.0;
  double scale = 0.0;  // term is mantissa * exp(scale)
  acc.add(term);
  double max_abs = 1.0;

  for (int n = 0; n < pfq_term_cap; ++n) {
    const cplx r = ratio_at(n);
    term *= r;
    const double mag = std::abs(term);
    if (mag != 0.0 && (mag > 1e120 || mag < 1e-120)) {
      const double lg = std::log(mag);
      scale += lg;
      term *= std::exp(-lg);
    }
    const cplx actual = term * std::exp(scale);
    acc.add(actual);
    max_abs = std::max(max_abs, std::abs(actual));
    if (std::abs(actual) == 0.0) {
      return {acc.value(), n + 2, 0.0};
    }
    const double q = std::abs(ratio_at(n + 1));
    if (q < 1.0) {
      const double tail = std::abs(actual) * q / (1.0 - q);
      const double floor = 1e-12 * max_abs;
      const double ref = std::max(std::abs(acc.value()), floor);
      if (tail <= tolerance * ref)
        return {acc.value(), n + 2, tail / ref};
    }
  }
  throw convergence_error("pfq: tolerance unreachable within term cap");
}

// ---------------------------------------------------------------------------
// Associated Laguerre polynomials
// ---------------------------------------------------------------------------

/// L_n^alpha(x) by the three-term recurrence.
inline double laguerre(int n, double alpha, double x) {
  if (n < 0) throw std::domain_error("laguerre: n must be >= 0");
  if (n == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double lp1 = ((2 * k + 1 + alpha - x) * l - (k + alpha) * lm1) / (k + 1);
    lm1 = l;
    l = lp1;
  }
  return l;
}

// ---------------------------------------------------------------------------
// Modified Bessel function of the second kind
// ---------------------------------------------------------------------------

// K_nu(x) from the cosh-integral representation
//   K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du,
// which has no integer-order singularity. K is even in nu.
inline double bessel_k(double nu, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k: requires x > 0");
  nu = std::abs(nu);
  // Cut where the integrand has decayed by e^-50 relative to u = 0.
  double ucut = 1.0;
  for (int it = 0; it < 8; ++it)
    ucut = std::acosh(1.0 + (50.0 + nu * ucut) / x);
  const auto f = [x, nu](double u) {
    return std::exp(-x * (std::cosh(u) - 1.0)) * std::cosh(nu * u);
  };
  const double val = integrate_adaptive(f, 0.0, ucut, 1e-12);
  return std::exp(-x) * val;
}

// ---------------------------------------------------------------------------
// Digamma and complex log-gamma (contour machinery)
// ---------------------------------------------------------------------------

namespace detail {

// Bernoulli numbers B_2k / (2k (2k-1)) for the Stirling series, k = 1..8.
inline constexpr double stirling_coeff[8] = {
    1.0 / 12.0,           -1.0 / 360.0,         1.0 / 1260.0,
    -1.0 / 1680.0,        1.0 / 1188.0,         -691.0 / 360360.0,
    1.0 / 156.0,          -3617.0 / 122400.0};

inline double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: requires x > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum B_2k / (2k x^2k)
  double res = std::log(x) - 0.5 / x;
  const double inv2 = 1.0 / (x * x);
  double p = inv2;
  static constexpr double c[7] = {1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0,
                                  -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0,
                                  1.0 / 12.0};
  for (int k = 0; k < 7; ++k) {
    res -= c[k] * p;
    p *= inv2;
  }
  acc += res;
  return acc;
}

// ln Gamma(z) for Re(z) > 0; recurrence shift into the Stirling region.
inline cplx log_gamma_complex(cplx z) {
  if (!(z.real() > 0.0))
    throw std::domain_error("log_gamma_complex: requires Re z > 0");
  cplx shift = 0.0;
  while (z.real() < 12.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx p = inv;
  for (double ck : stirling_coeff) {
    series += ck * p;
    p *= inv2;
  }
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return shift + (z - 0.5) * std::log(z) - z + half_log_two_pi + series;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Meijer G^{m,0}_{0,m} weight via Mellin-Barnes quadrature
// ---------------------------------------------------------------------------

// Parameters of the measure weight w(t) = normalization * G^{m,0}_{0,m}(t|b).
struct MellinWeight {
  std::vector<double> b_list;
  double contour_abscissa;  // c with c > -min(b_list)
  double normalization;     // positive multiplier
};

/// Reference abscissa: keeps every gamma argument in the right half-plane
/// with unit margin.
inline double default_contour_abscissa(const std::vector<double>& b) {
  const double bmin = *std::min_element(b.begin(), b.end());
  return 1.0 + std::max(0.0, -bmin);
}

namespace detail {

// Solves sum_j psi(b_j + c) = ln t for c > -min(b); this is the stationary
// point of |Gamma-product * t^-s| along the real axis, where the contour
// integrand peaks at the size of the result instead of orders above it.
inline double mellin_saddle_abscissa(const std::vector<double>& b, double t) {
  const double bmin = *std::min_element(b.begin(), b.end());
  const double target = std::log(t);
  const auto F = [&b](double c) {
    double s = 0.0;
    for (double bj : b) s += digamma(bj + c);
    return s;
  };
  double lo = -bmin + 1e-9;
  double hi = -bmin + 1.0;
  while (F(hi) < target) {
    hi = -bmin + 2.0 * (hi + bmin);
    if (hi > 1e9) break;
  }
  if (F(lo) > target) return lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (F(mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

// One prepared vertical-line contour: fixed b and abscissa, reusable across t.
// The gamma product along the line is cached; evaluating at a new t only
// costs the t^{-(c+iu)} phases.
class MellinContour {
 public:
  MellinContour(std::vector<double> b, double c) : b_(std::move(b)), c_(c) {
    const double bmin = *std::min_element(b_.begin(), b_.end());
    if (!(c_ > -bmin))
      throw std::domain_error("mellin contour: abscissa not right of poles");
    log_peak_ = 0.0;
    for (double bj : b_) log_peak_ += log_gamma(bj + c_);
    u_cut_ = find_cut();
  }

  // G^{m,0}_{0,m}(t|b) for t > 0: (1/2pi) int du prod Gamma(b_j+c+iu) t^-(c+iu),
  // evaluated symmetrically in u; checks (then discards) the imaginary residue.
  double evaluate(double t, double tolerance) const {
    const double log_t = std::log(t);
    int level = initial_level(log_t);
    cplx prev = sum_level(level, log_t);
    for (; level < 6; ++level) {
      const cplx cur = sum_level(level + 1, log_t);
      if (std::abs(cur - prev) <= 0.25 * tolerance * std::abs(cur)) {
        prev = cur;
        break;
      }
      prev = cur;
    }
    if (level >= 6)
      throw convergence_error("meijer_g: contour integral not converged");
    // prev approximates int g(u) du with g scaled by exp(log_peak_ - c ln t).
    const double log_scale = log_peak_ - c_ * log_t;
    const cplx value = prev * std::exp(log_scale) / (2.0 * pi);
    const double re = value.real();
    const double im = value.imag();
    if (std::abs(im) > 1e-10 * std::max(std::abs(re), 1e-300))
      throw convergence_error("meijer_g: imaginary residue above tolerance");
    return re;
  }

  const std::vector<double>& b() const { return b_; }
  double abscissa() const { return c_; }

 private:
  double log_gamma_product_mag(double u) const {
    double s = 0.0;
    for (double bj : b_) s += detail::log_gamma_complex(cplx(bj + c_, u)).real();
    return s;
  }

  double find_cut() const {
    // March outward until the gamma-product magnitude has dropped by e^-46
    // relative to the peak; the product decays like exp(-m pi |u| / 2).
    double u = 1.0;
    while (u < 4000.0) {
      if (log_gamma_product_mag(u) - log_peak_ < -46.0) return u;
      u += 1.0;
    }
    throw convergence_error("meijer_g: contour cut not found");
  }

  int initial_level(double log_t) const {
    // Panel width small enough that GL20 resolves the e^{-iu ln t} phase.
    const double h0 = std::min(0.5, 6.0 / (1.0 + std::abs(log_t)));
    int level = 0;
    while (0.5 / (1 << level) > h0 && level < 5) ++level;
    return level;
  }

  struct Node {
    double u;
    double w;
    cplx g;  // scaled gamma product: exp(sum lgamma(b+c+iu) - log_peak)
  };

  const std::vector<Node>& level_nodes(int level) const {
    if (static_cast<int>(levels_.size()) <= level) levels_.resize(level + 1);
    auto& nodes = levels_[level];
    if (!nodes.empty()) return nodes;
    const double h = 0.5 / (1 << level);
    const auto& gl = GaussLegendre20::instance();
    const int panels = static_cast<int>(std::ceil(u_cut_ / h));
    nodes.reserve(static_cast<std::size_t>(panels) * gl.order);
    for (int pidx = 0; pidx < panels; ++pidx) {
      const double a = pidx * h;
      const double b = std::min(u_cut_, a + h);
      const double mid = 0.5 * (a + b);
      const double half = 0.5 * (b - a);
      for (int i = 0; i < gl.order; ++i) {
        const double u = mid + half * gl.nodes()[i];
        cplx lg = 0.0;
        for (double bj : b_) lg += detail::log_gamma_complex(cplx(bj + c_, u));
        nodes.push_back({u, half * gl.weights()[i], std::exp(lg - log_peak_)});
      }
    }
    return nodes;
  }

  cplx sum_level(int level, double log_t) const {
    const auto& nodes = level_nodes(level);
    CompensatedCSum acc;
    for (const auto& nd : nodes) {
      const cplx phase = std::exp(cplx(0.0, -nd.u * log_t));
      const cplx f_pos = nd.g * phase;
      // u -> -u contributes the conjugate; sum both for the full line.
      acc.add(nd.w * (f_pos + std::conj(f_pos)));
    }
    return acc.value();
  }

  std::vector<double> b_;
  double c_;
  double log_peak_;
  double u_cut_;
  mutable std::vector<std::vector<Node>> levels_;
};

}  // namespace detail

/// normalization * G^{m,0}_{0,m}(t | b_list) with m = b_list.size() >= 2.
inline double meijer_g_weight(const MellinWeight& w, double t,
                              double tolerance) {
  if (w.b_list.size() < 2)
    throw std::domain_error(
        "meijer_g_weight: m < 2 (single-gamma case unsupported)");
  if (!(t > 0.0)) throw std::domain_error("meijer_g_weight: requires t > 0");
  detail::MellinContour contour(w.b_list, w.contour_abscissa);
  return w.normalization * contour.evaluate(t, tolerance);
}

}  // namespace gncs
