// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

// Seeded random matrices and states. Every routine takes its generator
// explicitly so results are reproducible.

#pragma once

#include <random>

#include "qcausal/linalg.hpp"

namespace qcausal {

using Rng = std::mt19937_64;

inline complex_t random_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = random_gaussian(rng);
  return m;
}

inline ComplexVector random_state(std::size_t dim, Rng& rng) {
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i)
    v[i] = random_gaussian(rng);
  return v.normalized();
}

// Haar-distributed unitary: Gram-Schmidt on a Ginibre matrix.
inline ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  return orthonormal_columns(random_ginibre(dim, dim, rng));
}

// Mixed state G G^dagger / Tr from a dim x rank Ginibre matrix.
inline ComplexMatrix random_density(std::size_t dim, Rng& rng, std::size_t rank = 0) {
  const auto g = random_ginibre(dim, rank ? rank : dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho * complex_t(1.0 / rho.trace().real());
}

inline ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const auto g = random_ginibre(dim, dim, rng);
  return (g + g.adjoint()) * complex_t(0.5);
}

inline double random_uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

}  // namespace qcausal
