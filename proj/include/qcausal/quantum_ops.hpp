// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

// Quantum operations in Kraus form, instruments, Choi matrices in two
// conventions, Stinespring dilations and the single-qubit tomographic
// representation.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qcausal/linalg.hpp"
#include "qcausal/random.hpp"

namespace qcausal {

//============================================================================
// Operation / Instrument
//============================================================================

class Operation {
 public:
  Operation(std::size_t d_in, std::size_t d_out, std::vector<ComplexMatrix> kraus,
            double tol = kDefaultTol)
      : d_in_(d_in), d_out_(d_out), kraus_(std::move(kraus)) {
    if (d_in_ == 0 || d_out_ == 0)
      throw std::invalid_argument("operation dimensions must be positive");
    for (const auto& k : kraus_)
      if (k.rows() != d_out_ || k.cols() != d_in_)
        throw std::invalid_argument("Kraus operator has wrong shape");
    const auto slack = ComplexMatrix::identity(d_in_) - kraus_sum();
    if (min_eigenvalue(slack) < -tol)
      throw std::invalid_argument("Kraus operators are not trace-nonincreasing");
  }

  explicit Operation(std::vector<ComplexMatrix> kraus)
      : Operation(kraus.at(0).cols(), kraus.at(0).rows(), std::move(kraus)) {}

  static Operation unitary(const ComplexMatrix& u) {
    if (!is_unitary(u))
      throw std::invalid_argument("matrix is not unitary");
    return Operation(u.cols(), u.rows(), {u});
  }

  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  // sum_i E_i^dagger E_i
  ComplexMatrix kraus_sum() const {
    ComplexMatrix s(d_in_, d_in_);
    for (const auto& k : kraus_)
      s += k.adjoint() * k;
    return s;
  }

  bool is_trace_preserving(double tol = kDefaultTol) const {
    return kraus_sum().approx_equal(ComplexMatrix::identity(d_in_), tol);
  }

 private:
  std::size_t d_in_;
  std::size_t d_out_;
  std::vector<ComplexMatrix> kraus_;
};

struct Instrument {
  std::size_t d_in = 0;
  std::size_t d_out = 0;
  std::vector<Operation> elements;

  Operation total() const {
    std::vector<ComplexMatrix> all;
    for (const auto& e : elements)
      all.insert(all.end(), e.kraus().begin(), e.kraus().end());
    return Operation(d_in, d_out, std::move(all));
  }
};

inline ComplexMatrix apply_operation(const Operation& op, const ComplexMatrix& rho) {
  if (rho.rows() != op.d_in() || rho.cols() != op.d_in())
    throw std::invalid_argument("state dimension does not match operation input");
  ComplexMatrix out(op.d_out(), op.d_out());
  for (const auto& k : op.kraus())
    out += k * rho * k.adjoint();
  return out;
}

// Sequential composition: `second` applied after `first`.
inline Operation compose(const Operation& second, const Operation& first) {
  if (second.d_in() != first.d_out())
    throw std::invalid_argument("cannot compose operations of mismatched dimension");
  std::vector<ComplexMatrix> ks;
  for (const auto& b : second.kraus())
    for (const auto& a : first.kraus())
      ks.push_back(b * a);
  return Operation(first.d_in(), second.d_out(), std::move(ks));
}

inline bool validate_instrument(const Instrument& instr, double tol = kDefaultTol) {
  if (instr.elements.empty())
    return false;
  ComplexMatrix total(instr.d_in, instr.d_in);
  for (const auto& e : instr.elements) {
    if (e.d_in() != instr.d_in || e.d_out() != instr.d_out)
      return false;
    const auto s = e.kraus_sum();
    if (min_eigenvalue(ComplexMatrix::identity(instr.d_in) - s) < -tol)
      return false;
    total += s;
  }
  return total.approx_equal(ComplexMatrix::identity(instr.d_in), tol);
}

//============================================================================
// Choi operators
//============================================================================

enum class ChoiConvention {
  kPlain,       // sum_ij |i><j| (x) E(|i><j|)
  kTransposed,  // full transpose of the plain matrix
};

class ChoiOperator {
 public:
  ChoiOperator(std::size_t d_in, std::size_t d_out, ComplexMatrix matrix,
               ChoiConvention convention)
      : d_in_(d_in), d_out_(d_out), matrix_(std::move(matrix)), convention_(convention) {
    if (d_in_ == 0 || d_out_ == 0)
      throw std::invalid_argument("Choi dimensions must be positive");
    if (matrix_.rows() != d_in_ * d_out_ || matrix_.cols() != d_in_ * d_out_)
      throw std::invalid_argument("Choi matrix must be (d_in*d_out) square");
    cp_ = is_hermitian(matrix_, kDefaultTol) && min_eigenvalue(matrix_) >= -kDefaultTol;
  }

  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  ChoiConvention convention() const { return convention_; }
  bool completely_positive() const { return cp_; }

  ChoiOperator to(ChoiConvention c) const {
    if (c == convention_)
      return *this;
    return ChoiOperator(d_in_, d_out_, matrix_.transpose(), c);
  }

  // Real linear combinations keep the convention.
  friend ChoiOperator operator+(const ChoiOperator& a, const ChoiOperator& b) {
    a.check_compatible(b);
    return ChoiOperator(a.d_in_, a.d_out_, a.matrix_ + b.matrix_, a.convention_);
  }
  friend ChoiOperator operator*(double s, const ChoiOperator& a) {
    return ChoiOperator(a.d_in_, a.d_out_, a.matrix_ * complex_t(s), a.convention_);
  }

 private:
  void check_compatible(const ChoiOperator& o) const {
    if (d_in_ != o.d_in_ || d_out_ != o.d_out_ || convention_ != o.convention_)
      throw std::invalid_argument("incompatible Choi operators");
  }

  std::size_t d_in_;
  std::size_t d_out_;
  ComplexMatrix matrix_;
  ChoiConvention convention_;
  bool cp_ = false;
};

inline ChoiOperator choi_of_operation(const Operation& op, ChoiConvention convention) {
  const std::size_t di = op.d_in(), dout = op.d_out();
  ComplexMatrix sigma(di * dout, di * dout);
  for (const auto& k : op.kraus()) {
    // (1 (x) E)|alpha> = sum_i |i> (x) E|i>
    ComplexVector v(di * dout);
    for (std::size_t i = 0; i < di; ++i)
      for (std::size_t o = 0; o < dout; ++o)
        v[i * dout + o] = k(o, i);
    sigma += ComplexMatrix::projector(v);
  }
  ChoiOperator plain(di, dout, std::move(sigma), ChoiConvention::kPlain);
  return plain.to(convention);
}

inline ComplexMatrix apply_choi(const ChoiOperator& choi, const ComplexMatrix& rho) {
  if (rho.rows() != choi.d_in() || rho.cols() != choi.d_in())
    throw std::invalid_argument("state dimension does not match Choi input");
  const SubsystemDims dims{choi.d_in(), choi.d_out()};
  const auto id_out = ComplexMatrix::identity(choi.d_out());
  if (choi.convention() == ChoiConvention::kPlain)
    return partial_trace(kron(rho.transpose(), id_out) * choi.matrix(), dims, {1});
  return partial_trace(kron(rho, id_out) * choi.matrix(), dims, {1}).transpose();
}

// Canonical Kraus form from the spectral decomposition of the Choi matrix.
inline Operation kraus_from_choi(const ChoiOperator& choi, double rank_tol = kDefaultTol) {
  const auto sigma = choi.to(ChoiConvention::kPlain).matrix();
  const auto eig = hermitian_eigen(sigma);
  if (eig.values.front() < -rank_tol)
    throw std::domain_error("Choi matrix has a negative eigenvalue; map is not CP");
  const std::size_t di = choi.d_in(), dout = choi.d_out();
  std::vector<ComplexMatrix> ks;
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    const double lam = eig.values[k];
    if (lam <= rank_tol)
      break;
    const double s = std::sqrt(lam);
    ComplexMatrix e(dout, di);
    for (std::size_t i = 0; i < di; ++i)
      for (std::size_t o = 0; o < dout; ++o)
        e(o, i) = s * eig.vectors(i * dout + o, k);
    ks.push_back(std::move(e));
  }
  return Operation(di, dout, std::move(ks));
}

inline std::size_t numerical_rank(const ComplexMatrix& hermitian, double tol = kDefaultTol) {
  std::size_t r = 0;
  for (double v : hermitian_eigen(hermitian).values)
    if (v > tol)
      ++r;
  return r;
}

// |U*>> = (1 (x) U*)|1>> = sum_k |k> (x) U*|k>
inline ComplexVector choi_vector_of_unitary(const ComplexMatrix& u) {
  if (!is_unitary(u))
    throw std::invalid_argument("choi_vector_of_unitary: matrix is not unitary");
  const std::size_t d = u.rows();
  ComplexVector v(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j)
      v[k * d + j] = std::conj(u(j, k));
  return v;
}

//============================================================================
// Stinespring dilation
//============================================================================

// U acts on S (x) E with S of dimension max(d_in, d_out). Inputs are
// embedded in the first d_in basis states of S, outputs are read from the
// first d_out. When the operation is trace-decreasing an extra Kraus
// operator sqrt(1 - sum E^dagger E) is attached to the last environment
// level and `projector` removes it.
struct Dilation {
  ComplexMatrix unitary;
  std::size_t system_dim = 0;
  std::size_t env_dim = 0;
  std::size_t d_in = 0;
  std::size_t d_out = 0;
  std::optional<ComplexMatrix> projector;
};

inline Dilation stinespring_dilation(const Operation& op, double tol = kDefaultTol) {
  std::vector<ComplexMatrix> ks = op.kraus();
  const std::size_t di = op.d_in(), dout = op.d_out();
  const std::size_t ds = std::max(di, dout);
  const bool decreasing = !op.is_trace_preserving(tol);
  if (decreasing) {
    auto extra = psd_sqrt(ComplexMatrix::identity(di) - op.kraus_sum());
    // embed the d_in x d_in block into the d_s x d_in slot
    ComplexMatrix e(ds, di);
    for (std::size_t r = 0; r < di; ++r)
      for (std::size_t c = 0; c < di; ++c)
        e(r, c) = extra(r, c);
    ks.push_back(std::move(e));
  }
  if (ks.empty())
    throw std::invalid_argument("stinespring_dilation: operation has no Kraus operators");
  const std::size_t de = ks.size();
  const std::size_t n = ds * de;

  Dilation dil;
  dil.system_dim = ds;
  dil.env_dim = de;
  dil.d_in = di;
  dil.d_out = dout;
  dil.unitary = ComplexMatrix(n, n);

  // Column (s, e=0) for s < d_in is V|s> = sum_i E_i|s> (x) |i>.
  std::vector<ComplexVector> cols;
  std::vector<bool> filled(n, false);
  for (std::size_t s = 0; s < di; ++s) {
    ComplexVector v(n);
    for (std::size_t i = 0; i < de; ++i)
      for (std::size_t o = 0; o < ks[i].rows(); ++o)
        v[o * de + i] = ks[i](o, s);
    dil.unitary.set_column(s * de, v);
    filled[s * de] = true;
    cols.push_back(v);
  }
  // Complete with canonical basis vectors in index order.
  std::size_t next_basis = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (filled[c])
      continue;
    for (;; ++next_basis) {
      if (next_basis >= n)
        throw std::logic_error("stinespring_dilation: unitary completion failed");
      ComplexVector v = ComplexVector::basis(n, next_basis);
      if (orthonormalize_against(v, cols)) {
        ++next_basis;
        dil.unitary.set_column(c, v);
        cols.push_back(v);
        break;
      }
    }
  }

  if (decreasing || di != dout) {
    ComplexMatrix p(n, n);
    const std::size_t env_keep = decreasing ? de - 1 : de;
    for (std::size_t s = 0; s < dout; ++s)
      for (std::size_t e = 0; e < env_keep; ++e)
        p(s * de + e, s * de + e) = 1.0;
    dil.projector = std::move(p);
  }
  return dil;
}

// Tr_E[P U (rho (x) |0><0|) U^dagger P], restricted to the output block.
inline ComplexMatrix apply_dilation(const Dilation& dil, const ComplexMatrix& rho) {
  if (rho.rows() != dil.d_in || rho.cols() != dil.d_in)
    throw std::invalid_argument("state dimension does not match dilation input");
  ComplexMatrix sys(dil.system_dim, dil.system_dim);
  for (std::size_t r = 0; r < dil.d_in; ++r)
    for (std::size_t c = 0; c < dil.d_in; ++c)
      sys(r, c) = rho(r, c);
  ComplexMatrix env0(dil.env_dim, dil.env_dim);
  env0(0, 0) = 1.0;
  ComplexMatrix big = dil.unitary * kron(sys, env0) * dil.unitary.adjoint();
  if (dil.projector)
    big = *dil.projector * big * *dil.projector;
  const auto reduced = partial_trace(big, SubsystemDims{dil.system_dim, dil.env_dim}, {0});
  ComplexMatrix out(dil.d_out, dil.d_out);
  for (std::size_t r = 0; r < dil.d_out; ++r)
    for (std::size_t c = 0; c < dil.d_out; ++c)
      out(r, c) = reduced(r, c);
  return out;
}

// Kraus operators E_kn = sqrt(s_n) <k| P U |n>_E for a system S coupled to an
// environment in state sigma, evolved by U and projected by P on S (x) E.
inline Operation open_system_operation(const ComplexMatrix& u, const ComplexMatrix& sigma,
                                       const ComplexMatrix& p, std::size_t d_sys,
                                       std::size_t d_env) {
  const std::size_t n = d_sys * d_env;
  if (u.rows() != n || u.cols() != n || p.rows() != n || p.cols() != n ||
      sigma.rows() != d_env || sigma.cols() != d_env)
    throw std::invalid_argument("open_system_operation: dimension mismatch");
  const auto eig = hermitian_eigen(sigma);
  const ComplexMatrix pu = p * u;
  std::vector<ComplexMatrix> ks;
  for (std::size_t m = 0; m < d_env; ++m) {
    const double w = eig.values[m];
    if (w <= kDefaultTol)
      continue;
    const ComplexVector env_in = eig.vectors.column(m);
    for (std::size_t k = 0; k < d_env; ++k) {
      ComplexMatrix e(d_sys, d_sys);
      for (std::size_t so = 0; so < d_sys; ++so)
        for (std::size_t si = 0; si < d_sys; ++si) {
          complex_t acc = 0;
          for (std::size_t ei = 0; ei < d_env; ++ei)
            acc += pu(so * d_env + k, si * d_env + ei) * env_in[ei];
          e(so, si) = std::sqrt(w) * acc;
        }
      ks.push_back(std::move(e));
    }
  }
  return Operation(d_sys, d_sys, std::move(ks));
}

//============================================================================
// Tomographic representation (qubit)
//============================================================================

inline std::array<ComplexMatrix, 4> tomographic_basis() {
  const complex_t i(0, 1);
  return {ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}},
          ComplexMatrix{{0.5, -0.5 * i}, {0.5 * i, 0.5}},
          ComplexMatrix{{1, 0}, {0, 0}},
          ComplexMatrix{{0.5, -0.5}, {-0.5, 0.5}}};
}

inline std::array<ComplexMatrix, 4> tomographic_duals() {
  const complex_t i(0, 1);
  return {ComplexMatrix{{0, 0.5 * (1.0 + i)}, {0.5 * (1.0 - i), 1}},
          ComplexMatrix{{0, -i}, {i, 0}},
          ComplexMatrix{{1, 0}, {0, -1}},
          ComplexMatrix{{0, 0.5 * (-1.0 + i)}, {0.5 * (-1.0 - i), 1}}};
}

inline std::array<ComplexMatrix, 4> tomographic_images(const Operation& op) {
  const auto basis = tomographic_basis();
  return {apply_operation(op, basis[0]), apply_operation(op, basis[1]),
          apply_operation(op, basis[2]), apply_operation(op, basis[3])};
}

// sum_i Tr(D_i^dagger a) E(rho_i)
inline ComplexMatrix tomographic_apply(const std::array<ComplexMatrix, 4>& images,
                                       const ComplexMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2)
    throw std::invalid_argument("tomographic_apply expects a 2x2 input");
  const auto duals = tomographic_duals();
  ComplexMatrix out(images[0].rows(), images[0].cols());
  for (std::size_t k = 0; k < 4; ++k)
    out += images[k] * hs_inner(duals[k], a);
  return out;
}

//============================================================================
// Random operations
//============================================================================

// Kraus blocks <i|_E V of a random isometry V: C^{d_in} -> C^k (x) C^{d_out}.
inline Operation random_cptp(std::size_t d_in, std::size_t d_out, std::size_t kraus_count,
                             Rng& rng) {
  if (d_out * kraus_count < d_in)
    throw std::invalid_argument("random_cptp: isometry needs d_out*k >= d_in");
  const auto v = orthonormal_columns(random_ginibre(d_out * kraus_count, d_in, rng));
  std::vector<ComplexMatrix> ks;
  for (std::size_t i = 0; i < kraus_count; ++i) {
    ComplexMatrix e(d_out, d_in);
    for (std::size_t o = 0; o < d_out; ++o)
      for (std::size_t c = 0; c < d_in; ++c)
        e(o, c) = v(i * d_out + o, c);
    ks.push_back(std::move(e));
  }
  return Operation(d_in, d_out, std::move(ks));
}

// Trace-nonincreasing operation: a random CPTP map with a random subset of
// its Kraus operators scaled down.
inline Operation random_operation(std::size_t d_in, std::size_t d_out, std::size_t kraus_count,
                                  Rng& rng) {
  auto full = random_cptp(d_in, d_out, kraus_count, rng);
  std::vector<ComplexMatrix> ks = full.kraus();
  for (auto& k : ks)
    k *= complex_t(std::sqrt(random_uniform(rng)));
  return Operation(d_in, d_out, std::move(ks));
}

// Instrument whose outcomes partition the Kraus operators of a random CPTP
// map.
inline Instrument random_instrument(std::size_t d_in, std::size_t d_out, std::size_t outcomes,
                                    std::size_t kraus_per_outcome, Rng& rng) {
  auto full = random_cptp(d_in, d_out, outcomes * kraus_per_outcome, rng);
  Instrument instr{d_in, d_out, {}};
  for (std::size_t j = 0; j < outcomes; ++j) {
    std::vector<ComplexMatrix> ks(full.kraus().begin() + j * kraus_per_outcome,
                                  full.kraus().begin() + (j + 1) * kraus_per_outcome);
    instr.elements.emplace_back(d_in, d_out, std::move(ks));
  }
  return instr;
}

}  // namespace qcausal
