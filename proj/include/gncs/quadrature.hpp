#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "gncs/common.hpp"

namespace gncs {

// 20-point Gauss-Legendre rule on [-1, 1]; nodes from Newton iteration on
// P_20 at first use, so no literal tables to mistype.
class GaussLegendre20 {
 public:
  static const GaussLegendre20& instance() {
    static const GaussLegendre20 rule;
    return rule;
  }

  static constexpr int order = 20;
  const std::array<double, 20>& nodes() const { return x_; }
  const std::array<double, 20>& weights() const { return w_; }

  template <class F>
  auto panel(F&& f, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto acc = f(mid + half * x_[0]) * (half * w_[0]);
    for (int i = 1; i < order; ++i) acc += f(mid + half * x_[i]) * (half * w_[i]);
    return acc;
  }

 private:
  GaussLegendre20() {
    const int n = order;
    for (int i = 0; i < n; ++i) {
      // Chebyshev-style initial guess, then Newton on P_n.
      double x = std::cos(pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      x_[i] = x;
      w_[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }

  std::array<double, 20> x_{};
  std::array<double, 20> w_{};
};

namespace detail {

template <class F>
double adaptive_rec(F& f, double a, double b, double whole, double abs_tol,
                    int depth) {
  if (depth > 40) throw convergence_error("adaptive quadrature: depth limit");
  const auto& gl = GaussLegendre20::instance();
  const double mid = 0.5 * (a + b);
  const double left = gl.panel(f, a, mid);
  const double right = gl.panel(f, mid, b);
  const double sum = left + right;
  if (std::abs(sum - whole) <= abs_tol) return sum;
  return adaptive_rec(f, a, mid, left, 0.5 * abs_tol, depth + 1) +
         adaptive_rec(f, mid, b, right, 0.5 * abs_tol, depth + 1);
}

}  // namespace detail

// Adaptive bisection with a GL20 rule per panel. `rel_tol` is relative to the
// first-pass estimate of |integral|, with `abs_floor` guarding near-zero
// results. The range is pre-split so an isolated peak cannot hide between the
// nodes of one wide panel.
template <class F>
double integrate_adaptive(F f, double a, double b, double rel_tol,
                          double abs_floor = 1e-300, int initial_panels = 8) {
  const auto& gl = GaussLegendre20::instance();
  const double h = (b - a) / initial_panels;
  double first_pass = 0.0;
  for (int i = 0; i < initial_panels; ++i)
    first_pass += gl.panel(f, a + i * h, a + (i + 1) * h);
  const double abs_tol =
      rel_tol * std::max(std::abs(first_pass), abs_floor) / initial_panels;
  double total = 0.0;
  for (int i = 0; i < initial_panels; ++i) {
    const double pa = a + i * h;
    const double pb = a + (i + 1) * h;
    total += detail::adaptive_rec(f, pa, pb, gl.panel(f, pa, pb), abs_tol, 0);
  }
  return total;
}

}  // namespace gncs
