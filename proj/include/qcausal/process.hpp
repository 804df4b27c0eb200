// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

// Bipartite process matrices on A_I (x) A_O (x) B_I (x) B_O.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qcausal/linalg.hpp"
#include "qcausal/quantum_ops.hpp"
#include "qcausal/random.hpp"

namespace qcausal {

// Factor positions inside a process matrix.
enum ProcessFactor : std::size_t { kAI = 0, kAO = 1, kBI = 2, kBO = 3 };

class ProcessMatrix {
 public:
  ProcessMatrix(SubsystemDims dims, ComplexMatrix matrix)
      : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    if (dims_.size() != 4)
      throw std::invalid_argument("process matrix needs dims (A_I, A_O, B_I, B_O)");
    if (!matrix_.is_square() || matrix_.rows() != dims_.total())
      throw std::invalid_argument("process matrix size does not match dims");
    if (!is_hermitian(matrix_, kDefaultTol))
      throw std::invalid_argument("process matrix must be Hermitian");
  }

  const SubsystemDims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t d(ProcessFactor f) const { return dims_[f]; }

 private:
  SubsystemDims dims_;
  ComplexMatrix matrix_;
};

// Tr(a b) without forming the product.
inline complex_t trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw std::invalid_argument("trace_of_product: shape mismatch");
  complex_t s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      s += a(i, j) * b(j, i);
  return s;
}

// Tr[W (M (x) N)] for instrument-element Chois in the transposed convention.
inline double probability(const ProcessMatrix& w, const ChoiOperator& choi_a,
                          const ChoiOperator& choi_b) {
  if (choi_a.convention() != ChoiConvention::kTransposed ||
      choi_b.convention() != ChoiConvention::kTransposed)
    throw std::invalid_argument("probability requires transposed-convention Choi operators");
  if (choi_a.d_in() != w.d(kAI) || choi_a.d_out() != w.d(kAO) ||
      choi_b.d_in() != w.d(kBI) || choi_b.d_out() != w.d(kBO))
    throw std::invalid_argument("Choi dimensions do not match the process matrix");
  const complex_t p = trace_of_product(w.matrix(), kron(choi_a.matrix(), choi_b.matrix()));
  if (std::abs(p.imag()) > kDefaultTol * std::max(1.0, std::abs(p.real())))
    throw std::domain_error("probability has a non-negligible imaginary part");
  return p.real();
}

inline bool is_density(const ComplexMatrix& rho, double tol = kDefaultTol) {
  return rho.is_square() && is_hermitian(rho, tol) &&
         std::abs(rho.trace() - complex_t(1.0)) <= tol && min_eigenvalue(rho) >= -tol;
}

// W = rho^{A_I B_I} (x) 1^{A_O B_O}
inline ProcessMatrix state_process(const ComplexMatrix& rho, const SubsystemDims& dims) {
  if (dims.size() != 4)
    throw std::invalid_argument("state_process needs dims (A_I, A_O, B_I, B_O)");
  if (rho.rows() != dims[kAI] * dims[kBI])
    throw std::invalid_argument("state dimension does not match d_AI * d_BI");
  if (!is_density(rho))
    throw std::invalid_argument("state_process: rho is not a density operator");
  const auto x = kron(rho, ComplexMatrix::identity(dims[kAO] * dims[kBO]));
  // x is ordered (A_I, B_I, A_O, B_O)
  const SubsystemDims xd{dims[kAI], dims[kBI], dims[kAO], dims[kBO]};
  return ProcessMatrix(dims, permute_subsystems(x, xd, {0, 2, 1, 3}));
}

enum class SignalDirection { kBToA, kAToB };

inline bool is_cptp_choi(const ChoiOperator& c, double tol = kDefaultTol) {
  if (!c.completely_positive())
    return false;
  const auto plain = c.to(ChoiConvention::kPlain).matrix();
  const auto tin = partial_trace(plain, SubsystemDims{c.d_in(), c.d_out()}, {0});
  return tin.approx_equal(ComplexMatrix::identity(c.d_in()), tol);
}

// One-way signaling process. For kBToA the channel maps B_O to A_I and
// W = 1^{A_O} (x) sigma^{B_O A_I} (x) rho^{B_I}, sigma the plain Choi of the
// channel. kAToB is the mirror image with the channel from A_O to B_I.
// `d_free` is the dimension of the discarded output (A_O or B_O).
inline ProcessMatrix channel_process(const ComplexMatrix& rho, const ChoiOperator& channel,
                                     std::size_t d_free = 2,
                                     SignalDirection dir = SignalDirection::kBToA) {
  if (!is_density(rho))
    throw std::invalid_argument("channel_process: rho is not a density operator");
  if (!is_cptp_choi(channel))
    throw std::invalid_argument("channel_process: channel is not CPTP");
  const auto sigma = channel.to(ChoiConvention::kPlain).matrix();
  const auto id = ComplexMatrix::identity(d_free);
  if (dir == SignalDirection::kAToB) {
    const SubsystemDims dims{rho.rows(), channel.d_in(), channel.d_out(), d_free};
    return ProcessMatrix(dims, kron(kron(rho, sigma), id));
  }
  // built as (A_O, B_O, A_I, B_I)
  const auto x = kron(kron(id, sigma), rho);
  const SubsystemDims xd{d_free, channel.d_in(), channel.d_out(), rho.rows()};
  const SubsystemDims dims{channel.d_out(), d_free, rho.rows(), channel.d_in()};
  return ProcessMatrix(dims, permute_subsystems(x, xd, {2, 0, 3, 1}));
}

inline ProcessMatrix causal_mixture(const ProcessMatrix& w1, const ProcessMatrix& w2, double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("mixing weight must lie in [0, 1]");
  if (!(w1.dims() == w2.dims()))
    throw std::invalid_argument("cannot mix processes of different dimensions");
  return ProcessMatrix(w1.dims(), w1.matrix() * complex_t(q) + w2.matrix() * complex_t(1 - q));
}

enum class Party { kA, kB };

// True when the party's output factor enters W only as the identity, so
// that party cannot signal to the other. Diagnostic only.
inline bool cannot_signal_from(const ProcessMatrix& w, Party p, double tol = kDefaultTol) {
  const auto& dims = w.dims();
  if (p == Party::kA) {
    const double d = static_cast<double>(dims[kAO]);
    const auto rest = partial_trace(w.matrix(), dims, {kAI, kBI, kBO});
    const auto x = kron(ComplexMatrix::identity(dims[kAO]) * complex_t(1.0 / d), rest);
    const SubsystemDims xd{dims[kAO], dims[kAI], dims[kBI], dims[kBO]};
    return permute_subsystems(x, xd, {1, 0, 2, 3}).approx_equal(w.matrix(), tol);
  }
  const double d = static_cast<double>(dims[kBO]);
  const auto rest = partial_trace(w.matrix(), dims, {kAI, kAO, kBI});
  const auto x = kron(rest, ComplexMatrix::identity(dims[kBO]) * complex_t(1.0 / d));
  return x.approx_equal(w.matrix(), tol);
}

//============================================================================
// Hilbert-Schmidt decomposition
//============================================================================

struct HSBasis {
  std::size_t d = 0;
  std::vector<ComplexMatrix> elements;
};

// Generalized Gell-Mann matrices scaled to Tr(s_i s_j) = d delta_ij, with
// s_0 = 1. Ordering after the identity: symmetric, antisymmetric, diagonal.
// For d = 2 this is (1, X, Y, Z).
inline HSBasis hs_basis(std::size_t d) {
  if (d == 0)
    throw std::invalid_argument("basis dimension must be positive");
  HSBasis b{d, {ComplexMatrix::identity(d)}};
  const double scale = std::sqrt(d / 2.0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d, d);
      m(j, k) = scale;
      m(k, j) = scale;
      b.elements.push_back(std::move(m));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d, d);
      m(j, k) = complex_t(0, -scale);
      m(k, j) = complex_t(0, scale);
      b.elements.push_back(std::move(m));
    }
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix m(d, d);
    const double f = scale * std::sqrt(2.0 / (l * (l + 1.0)));
    for (std::size_t j = 0; j < l; ++j)
      m(j, j) = f;
    m(l, l) = -f * static_cast<double>(l);
    b.elements.push_back(std::move(m));
  }
  return b;
}

// Coefficients w_abcd of W = sum w_abcd s_a (x) s_b (x) s_c (x) s_d.
struct HSCoefficients {
  SubsystemDims dims;
  std::vector<complex_t> values;  // index (a, b, c, d) big-endian over d_k^2

  SubsystemDims index_dims() const {
    std::vector<std::size_t> v;
    for (auto d : dims.values())
      v.push_back(d * d);
    return SubsystemDims(v);
  }
  complex_t at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return values[index_dims().flat({a, b, c, d})];
  }
};

inline HSCoefficients hs_decompose(const ProcessMatrix& w) {
  const auto& dims = w.dims();
  std::vector<HSBasis> bases;
  for (auto d : dims.values())
    bases.push_back(hs_basis(d));
  HSCoefficients out{dims, {}};
  const auto idx = out.index_dims();
  out.values.resize(idx.total());
  const double norm = static_cast<double>(dims.total());
  for (std::size_t f = 0; f < idx.total(); ++f) {
    const auto g = idx.digits(f);
    const auto op = kron_all({bases[0].elements[g[0]], bases[1].elements[g[1]],
                              bases[2].elements[g[2]], bases[3].elements[g[3]]});
    out.values[f] = trace_of_product(w.matrix(), op) / norm;
  }
  return out;
}

inline ComplexMatrix hs_reconstruct(const HSCoefficients& c) {
  std::vector<HSBasis> bases;
  for (auto d : c.dims.values())
    bases.push_back(hs_basis(d));
  const auto idx = c.index_dims();
  ComplexMatrix out(c.dims.total(), c.dims.total());
  for (std::size_t f = 0; f < idx.total(); ++f) {
    if (c.values[f] == complex_t(0))
      continue;
    const auto g = idx.digits(f);
    out += kron_all({bases[0].elements[g[0]], bases[1].elements[g[1]],
                     bases[2].elements[g[2]], bases[3].elements[g[3]]}) *
           c.values[f];
  }
  return out;
}

//============================================================================
// Validity
//============================================================================

struct ProcessValidation {
  bool psd = false;
  bool trace_ok = false;
  double max_norm_deviation = 0;
};

inline ChoiOperator random_cptp_choi(std::size_t d_in, std::size_t d_out, Rng& rng) {
  std::uniform_int_distribution<std::size_t> kd(1, d_in * d_out);
  std::size_t k = kd(rng);
  while (d_out * k < d_in)
    ++k;
  return choi_of_operation(random_cptp(d_in, d_out, k, rng), ChoiConvention::kTransposed);
}

inline ProcessValidation validate_process(const ProcessMatrix& w, std::size_t samples, Rng& rng) {
  if (samples == 0)
    throw std::invalid_argument("validate_process needs at least one sample");
  ProcessValidation v;
  v.psd = is_psd(w.matrix(), kDefaultTol);
  const double expected = static_cast<double>(w.d(kAO) * w.d(kBO));
  v.trace_ok = std::abs(w.matrix().trace() - complex_t(expected)) <= 1e-6;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto m = random_cptp_choi(w.d(kAI), w.d(kAO), rng);
    const auto n = random_cptp_choi(w.d(kBI), w.d(kBO), rng);
    v.max_norm_deviation = std::max(v.max_norm_deviation, std::abs(probability(w, m, n) - 1.0));
  }
  return v;
}

//============================================================================
// OCB process
//============================================================================

// W = 1/4 [1 + (Z^{A_O} Z^{B_I} + Z^{A_I} X^{B_I} Z^{B_O}) / sqrt(2)]
inline ProcessMatrix ocb_process() {
  using namespace pauli;
  const auto one = ComplexMatrix::identity(16);
  const auto t1 = kron_all({i2(), z(), z(), i2()});
  const auto t2 = kron_all({z(), i2(), x(), z()});
  const auto w = (one + (t1 + t2) * complex_t(1.0 / std::sqrt(2.0))) * complex_t(0.25);
  return ProcessMatrix(SubsystemDims{2, 2, 2, 2}, w);
}

}  // namespace qcausal
