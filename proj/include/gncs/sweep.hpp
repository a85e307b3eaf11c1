#pragma once

#include <atomic>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

#include "gncs/measure.hpp"
#include "gncs/observables.hpp"
#include "gncs/states.hpp"

// Figure-reproduction sweeps. Rows are laid out in deterministic
// lexicographic order before any work starts; workers fill disjoint slots, so
// the output is identical for every worker count.

namespace gncs {

struct SweepGrid {
  std::vector<double> lambdas;
  std::vector<int> rs;
  std::vector<double> phis;
  std::vector<double> z_abs2s;

  std::size_t size() const {
    return lambdas.size() * rs.size() * phis.size() * z_abs2s.size();
  }
};

struct SqueezeRow {
  double lambda;
  int r;
  double phi;
  double z_abs2;
  double var_x1;
  double var_x2;
  double j3_abs;
  double s1;
  double s2;
  std::string error;
};

struct StatsRow {
  double lambda;
  int r;
  double z_abs2;
  double n_mean;
  double n2_mean;
  double g2;
  double mandel_q;
  std::string error;
};

struct MeasureRow {
  double lambda;
  int r;
  double t;
  double weight;
};

namespace detail {

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      body(i);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<std::size_t>(threads, count);
  pool.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

inline std::string sanitize_error(const char* what) {
  std::string s(what);
  for (auto& ch : s)
    if (ch == ',' || ch == '\n') ch = ';';
  return s;
}

}  // namespace detail

inline std::vector<SqueezeRow> sweep_squeeze(const SweepGrid& grid,
                                             int threads = 1) {
  std::vector<SqueezeRow> rows;
  rows.resize(grid.size());
  std::size_t idx = 0;
  for (double lam : grid.lambdas)
    for (int r : grid.rs)
      for (double phi : grid.phis)
        for (double z2 : grid.z_abs2s) {
          rows[idx].lambda = lam;
          rows[idx].r = r;
          rows[idx].phi = phi;
          rows[idx].z_abs2 = z2;
          ++idx;
        }
  detail::parallel_for(rows.size(), threads, [&rows](std::size_t i) {
    auto& row = rows[i];
    try {
      const GncsSpec spec{{row.lambda, row.r}, std::sqrt(row.z_abs2), row.phi};
      const auto e = observables::expectations_direct(build_state(spec));
      const auto q = observables::quadratures(e);
      row.var_x1 = q.var_x1;
      row.var_x2 = q.var_x2;
      row.j3_abs = q.j3_abs;
      row.s1 = q.s1;
      row.s2 = q.s2;
    } catch (const std::exception& ex) {
      row.var_x1 = row.var_x2 = row.j3_abs = row.s1 = row.s2 = 0.0;
      row.error = detail::sanitize_error(ex.what());
    }
  });
  return rows;
}

inline std::vector<StatsRow> sweep_stats(const SweepGrid& grid,
                                         int threads = 1) {
  std::vector<StatsRow> rows;
  rows.resize(grid.lambdas.size() * grid.rs.size() * grid.z_abs2s.size());
  std::size_t idx = 0;
  for (double lam : grid.lambdas)
    for (int r : grid.rs)
      for (double z2 : grid.z_abs2s) {
        rows[idx].lambda = lam;
        rows[idx].r = r;
        rows[idx].z_abs2 = z2;
        ++idx;
      }
  detail::parallel_for(rows.size(), threads, [&rows](std::size_t i) {
    auto& row = rows[i];
    try {
      const GncsSpec spec{{row.lambda, row.r}, std::sqrt(row.z_abs2), 0.0};
      const auto e = observables::expectations_direct(build_state(spec));
      const auto st = observables::statistics(e);
      row.n_mean = e.n_mean;
      row.n2_mean = e.n2_mean;
      row.g2 = st.g2;
      row.mandel_q = st.q;
    } catch (const std::exception& ex) {
      row.n_mean = row.n2_mean = row.g2 = row.mandel_q = 0.0;
      row.error = detail::sanitize_error(ex.what());
    }
  });
  return rows;
}

inline std::vector<MeasureRow> sweep_measure(const std::vector<double>& lambdas,
                                             const std::vector<int>& rs,
                                             const std::vector<double>& t_grid,
                                             int threads = 1) {
  std::vector<MeasureRow> rows;
  rows.resize(lambdas.size() * rs.size() * t_grid.size());
  std::size_t idx = 0;
  for (double lam : lambdas)
    for (int r : rs)
      for (double t : t_grid) {
        rows[idx].lambda = lam;
        rows[idx].r = r;
        rows[idx].t = t;
        ++idx;
      }
  // One prepared contour per (lambda, r) block; rows inside a block share it.
  const std::size_t block = t_grid.size();
  const std::size_t blocks = rows.size() / std::max<std::size_t>(block, 1);
  detail::parallel_for(blocks, threads, [&](std::size_t bi) {
    const auto& first = rows[bi * block];
    const MellinWeight w =
        measure::make_mellin_weight({first.lambda, first.r});
    gncs::detail::MellinContour contour(w.b_list, w.contour_abscissa);
    for (std::size_t j = 0; j < block; ++j) {
      auto& row = rows[bi * block + j];
      row.weight = w.normalization * contour.evaluate(row.t, 1e-12);
    }
  });
  return rows;
}

}  // namespace gncs
