#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gncs/common.hpp"

// Truncated Fock-space representation of the su(1,1) generators for the
// lambda-indexed discrete series realized on the half-line oscillator basis
// |n, lambda>, n = 0..n_max.

namespace gncs {

struct AlgebraParams {
  double lambda;  // representation parameter, lambda > -1/2
  int r;          // deformation, r >= 1
};

inline void validate(const AlgebraParams& p) {
  if (!(p.lambda > -0.5))
    throw std::domain_error("AlgebraParams: requires lambda > -1/2");
  if (p.r < 1) throw std::domain_error("AlgebraParams: requires r >= 1");
}

/// Matrix element sqrt(n (n + lambda - 1/2)) coupling |n-1> and |n>; zero for
/// n = 0 (the vacuum is annihilated).
inline double ladder_element(const AlgebraParams& p, int n) {
  if (n < 0) throw std::domain_error("ladder_element: n must be >= 0");
  if (n == 0) return 0.0;
  return std::sqrt(n * (n + p.lambda - 0.5));
}

/// J3 eigenvalue n + lambda/2 + 1/4.
inline double j3_eigenvalue(const AlgebraParams& p, int n) {
  return n + 0.5 * p.lambda + 0.25;
}

/// Hamiltonian eigenvalue 2n + lambda + 1/2 (= twice the J3 eigenvalue).
inline double hamiltonian_eigenvalue(const AlgebraParams& p, int n) {
  return 2.0 * n + p.lambda + 0.5;
}

enum class Band { lowering, diagonal, raising };

// Banded operator on basis indices 0..n_max: the ladder operators have
// bandwidth one and J3, N are diagonal, so only one value array is stored.
// For raising/lowering, couplings[n] is the element between |n-1> and |n>
// (couplings[0] = 0 by convention).
struct TruncatedOperator {
  Band band;
  int dimension;  // n_max + 1
  std::vector<double> values;

  double entry(int row, int col) const {
    switch (band) {
      case Band::raising:
        return (row == col + 1) ? values[static_cast<std::size_t>(row)] : 0.0;
      case Band::lowering:
        return (col == row + 1) ? values[static_cast<std::size_t>(col)] : 0.0;
      case Band::diagonal:
        return (row == col) ? values[static_cast<std::size_t>(row)] : 0.0;
    }
    return 0.0;
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y(static_cast<std::size_t>(dimension), 0.0);
    switch (band) {
      case Band::raising:
        for (int n = 1; n < dimension; ++n)
          y[n] = values[static_cast<std::size_t>(n)] * x[n - 1];
        break;
      case Band::lowering:
        for (int n = 0; n + 1 < dimension; ++n)
          y[n] = values[static_cast<std::size_t>(n + 1)] * x[n + 1];
        break;
      case Band::diagonal:
        for (int n = 0; n < dimension; ++n)
          y[n] = values[static_cast<std::size_t>(n)] * x[n];
        break;
    }
    return y;
  }
};

struct TruncatedAlgebra {
  AlgebraParams params;
  int n_max;
  TruncatedOperator j_plus;
  TruncatedOperator j_minus;
  TruncatedOperator j3;
  TruncatedOperator number;
};

inline TruncatedAlgebra build_truncated(const AlgebraParams& p, int n_max) {
  validate(p);
  if (n_max < 2) throw std::domain_error("build_truncated: requires n_max >= 2");
  const auto dim = static_cast<std::size_t>(n_max) + 1;

  std::vector<double> ladder(dim, 0.0);
  for (int n = 1; n <= n_max; ++n)
    ladder[static_cast<std::size_t>(n)] = ladder_element(p, n);

  std::vector<double> diag_j3(dim), diag_n(dim);
  for (int n = 0; n <= n_max; ++n) {
    diag_j3[static_cast<std::size_t>(n)] = j3_eigenvalue(p, n);
    // N = J3 - lambda/2 - 1/4 entrywise
    diag_n[static_cast<std::size_t>(n)] =
        diag_j3[static_cast<std::size_t>(n)] - 0.5 * p.lambda - 0.25;
  }

  TruncatedAlgebra out{p, n_max,
                       {Band::raising, n_max + 1, ladder},
                       {Band::lowering, n_max + 1, ladder},
                       {Band::diagonal, n_max + 1, std::move(diag_j3)},
                       {Band::diagonal, n_max + 1, std::move(diag_n)}};
  return out;
}

/// Column n of (A B - B A) for banded operators; the caller keeps
/// n < n_max, where the truncation boundary has not broken the algebra.
inline std::vector<double> commutator_column(const TruncatedOperator& a,
                                             const TruncatedOperator& b,
                                             int n) {
  std::vector<double> e(static_cast<std::size_t>(a.dimension), 0.0);
  e[static_cast<std::size_t>(n)] = 1.0;
  const auto ab = a.apply(b.apply(e));
  const auto ba = b.apply(a.apply(e));
  std::vector<double> out(ab.size());
  for (std::size_t i = 0; i < ab.size(); ++i) out[i] = ab[i] - ba[i];
  return out;
}

}  // namespace gncs
