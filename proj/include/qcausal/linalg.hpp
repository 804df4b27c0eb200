// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

// Dense complex matrices and vectors for small tensor-product spaces.
// Tensor factors are ordered big-endian: the leftmost factor carries the
// most significant index.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcausal {

using complex_t = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kConvergenceTol = 1e-12;

// Raised when a projection or superposition yields the zero vector, i.e.
// an outcome that cannot occur.
class ZeroOutcomeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//============================================================================
// ComplexVector
//============================================================================

class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : data_(dim) {}
  explicit ComplexVector(std::vector<complex_t> entries) : data_(std::move(entries)) {}
  ComplexVector(std::initializer_list<complex_t> entries) : data_(entries) {}

  static ComplexVector basis(std::size_t dim, std::size_t k) {
    if (k >= dim)
      throw std::out_of_range("basis index out of range");
    ComplexVector v(dim);
    v[k] = 1.0;
    return v;
  }

  std::size_t dim() const { return data_.size(); }
  complex_t& operator[](std::size_t i) { return data_[i]; }
  const complex_t& operator[](std::size_t i) const { return data_[i]; }
  const std::vector<complex_t>& entries() const { return data_; }

  double norm() const {
    double s = 0;
    for (const auto& z : data_)
      s += std::norm(z);
    return std::sqrt(s);
  }

  ComplexVector normalized() const {
    const double n = norm();
    if (n == 0)
      throw std::domain_error("cannot normalize zero vector");
    return *this * complex_t(1.0 / n);
  }

  ComplexVector conj() const {
    ComplexVector out(*this);
    for (auto& z : out.data_)
      z = std::conj(z);
    return out;
  }

  ComplexVector& operator+=(const ComplexVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim(); ++i)
      data_[i] += o.data_[i];
    return *this;
  }
  ComplexVector& operator-=(const ComplexVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim(); ++i)
      data_[i] -= o.data_[i];
    return *this;
  }
  ComplexVector& operator*=(complex_t s) {
    for (auto& z : data_)
      z *= s;
    return *this;
  }

  friend ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
  friend ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
  friend ComplexVector operator*(ComplexVector a, complex_t s) { return a *= s; }
  friend ComplexVector operator*(complex_t s, ComplexVector a) { return a *= s; }

  bool approx_equal(const ComplexVector& o, double tol = kDefaultTol) const {
    if (dim() != o.dim())
      return false;
    for (std::size_t i = 0; i < dim(); ++i)
      if (std::abs(data_[i] - o.data_[i]) > tol)
        return false;
    return true;
  }

 private:
  void check_same(const ComplexVector& o) const {
    if (dim() != o.dim())
      throw std::invalid_argument("vector dimension mismatch");
  }

  std::vector<complex_t> data_;
};

// <a|b>, antilinear in the first argument
inline complex_t inner(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("vector dimension mismatch");
  complex_t s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    s += std::conj(a[i]) * b[i];
  return s;
}

// |<a|b>|^2 for normalized inputs
inline double fidelity(const ComplexVector& a, const ComplexVector& b) {
  return std::norm(inner(a, b));
}

// Equality up to a global phase.
inline bool equal_up_to_phase(const ComplexVector& a, const ComplexVector& b,
                              double tol = kDefaultTol) {
  if (a.dim() != b.dim())
    return false;
  const complex_t ov = inner(b, a);
  if (std::abs(ov) == 0)
    return a.norm() <= tol && b.norm() <= tol;
  const complex_t phase = ov / std::abs(ov);
  return a.approx_equal(b * phase, tol);
}

//============================================================================
// ComplexMatrix
//============================================================================

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex_t> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
      throw std::invalid_argument("entries length must equal rows*cols");
  }
  ComplexMatrix(std::initializer_list<std::initializer_list<complex_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      m(i, i) = d[i];
    return m;
  }

  // |a><b|
  static ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) {
    ComplexMatrix m(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j)
        m(i, j) = a[i] * std::conj(b[j]);
    return m;
  }

  static ComplexMatrix projector(const ComplexVector& v) { return outer(v, v); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<complex_t>& entries() const { return data_; }

  complex_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const complex_t& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  ComplexVector column(std::size_t c) const {
    ComplexVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      v[r] = (*this)(r, c);
    return v;
  }

  void set_column(std::size_t c, const ComplexVector& v) {
    if (v.dim() != rows_)
      throw std::invalid_argument("column dimension mismatch");
    for (std::size_t r = 0; r < rows_; ++r)
      (*this)(r, c) = v[r];
  }

  ComplexMatrix transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        t(c, r) = (*this)(r, c);
    return t;
  }

  ComplexMatrix conj() const {
    ComplexMatrix t(*this);
    for (auto& z : t.data_)
      z = std::conj(z);
    return t;
  }

  ComplexMatrix adjoint() const { return transpose().conj(); }

  complex_t trace() const {
    if (!is_square())
      throw std::invalid_argument("trace of non-square matrix");
    complex_t s = 0;
    for (std::size_t i = 0; i < rows_; ++i)
      s += (*this)(i, i);
    return s;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& z : data_)
      m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius_norm() const {
    double s = 0;
    for (const auto& z : data_)
      s += std::norm(z);
    return std::sqrt(s);
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(complex_t s) {
    for (auto& z : data_)
      z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, complex_t s) { return a *= s; }
  friend ComplexMatrix operator*(complex_t s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix product dimension mismatch");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex_t aik = a(i, k);
        if (aik == complex_t(0))
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
    if (a.cols_ != v.dim())
      throw std::invalid_argument("matrix-vector dimension mismatch");
    ComplexVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      complex_t s = 0;
      for (std::size_t k = 0; k < a.cols_; ++k)
        s += a(i, k) * v[k];
      out[i] = s;
    }
    return out;
  }

  bool approx_equal(const ComplexMatrix& o, double tol = kDefaultTol) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (std::abs(data_[i] - o.data_[i]) > tol)
        return false;
    return true;
  }

  // Largest entrywise deviation; shapes must agree.
  double max_deviation(const ComplexMatrix& o) const {
    check_same_shape(o);
    double m = 0;
    for (std::size_t i = 0; i < data_.size(); ++i)
      m = std::max(m, std::abs(data_[i] - o.data_[i]));
    return m;
  }

 private:
  void check_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex_t> data_;
};

inline bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol) {
  if (!m.is_square())
    return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol)
        return false;
  return true;
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kDefaultTol) {
  return u.is_square() && (u.adjoint() * u).approx_equal(ComplexMatrix::identity(u.rows()), tol);
}

// Hilbert-Schmidt inner product Tr(a^dagger b).
inline complex_t hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
  complex_t s = 0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    s += std::conj(a.entries()[i]) * b.entries()[i];
  return s;
}

//============================================================================
// Tensor products
//============================================================================

class SubsystemDims {
 public:
  SubsystemDims() = default;
  SubsystemDims(std::initializer_list<std::size_t> dims) : dims_(dims) { validate(); }
  explicit SubsystemDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) { validate(); }

  std::size_t size() const { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& values() const { return dims_; }

  std::size_t total() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                           std::multiplies<>());
  }

  // Split a flat index into per-factor digits.
  std::vector<std::size_t> digits(std::size_t flat) const {
    std::vector<std::size_t> out(dims_.size());
    for (std::size_t k = dims_.size(); k-- > 0;) {
      out[k] = flat % dims_[k];
      flat /= dims_[k];
    }
    return out;
  }

  std::size_t flat(const std::vector<std::size_t>& digits) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k)
      idx = idx * dims_[k] + digits[k];
    return idx;
  }

  bool operator==(const SubsystemDims&) const = default;

 private:
  void validate() const {
    for (auto d : dims_)
      if (d == 0)
        throw std::invalid_argument("subsystem dimensions must be positive");
  }

  std::vector<std::size_t> dims_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const complex_t aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k)
      out[i * b.dim() + k] = a[i] * b[k];
  return out;
}

template <class T>
T kron_all(std::initializer_list<T> factors) {
  if (factors.size() == 0)
    throw std::invalid_argument("kron_all needs at least one factor");
  auto it = factors.begin();
  T out = *it++;
  for (; it != factors.end(); ++it)
    out = kron(out, *it);
  return out;
}

// Trace out every factor not listed in `keep`. Kept factors stay in
// ascending order.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemDims& dims,
                                   std::vector<std::size_t> keep) {
  if (!m.is_square())
    throw std::invalid_argument("partial_trace needs a square matrix");
  if (dims.total() != m.rows())
    throw std::invalid_argument("subsystem dimensions do not match matrix");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw std::invalid_argument("duplicate subsystem index");
  for (auto k : keep)
    if (k >= dims.size())
      throw std::out_of_range("subsystem index out of range");

  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep)
    kept[k] = true;
  std::vector<std::size_t> kd, td;
  for (std::size_t k = 0; k < dims.size(); ++k)
    (kept[k] ? kd : td).push_back(dims[k]);
  const SubsystemDims keep_dims(kd.empty() ? std::vector<std::size_t>{1} : kd);
  const SubsystemDims traced_dims(td.empty() ? std::vector<std::size_t>{1} : td);

  const std::size_t n = dims.total();
  ComplexMatrix out(keep_dims.total(), keep_dims.total());
  // Map each flat index to (kept index, traced index).
  std::vector<std::size_t> kidx(n), tidx(n);
  for (std::size_t f = 0; f < n; ++f) {
    auto dg = dims.digits(f);
    std::size_t ki = 0, ti = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (kept[k])
        ki = ki * dims[k] + dg[k];
      else
        ti = ti * dims[k] + dg[k];
    }
    kidx[f] = ki;
    tidx[f] = ti;
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (tidx[r] == tidx[c])
        out(kidx[r], kidx[c]) += m(r, c);
  return out;
}

// Reorder tensor factors: factor j of the result is factor perm[j] of the
// input.
inline ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemDims& dims,
                                        const std::vector<std::size_t>& perm) {
  if (!m.is_square() || dims.total() != m.rows())
    throw std::invalid_argument("subsystem dimensions do not match matrix");
  if (perm.size() != dims.size())
    throw std::invalid_argument("permutation length mismatch");
  std::vector<std::size_t> sorted(perm);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != k)
      throw std::invalid_argument("not a permutation");

  std::vector<std::size_t> nd(dims.size());
  for (std::size_t j = 0; j < perm.size(); ++j)
    nd[j] = dims[perm[j]];
  const SubsystemDims new_dims(nd);

  const std::size_t n = dims.total();
  std::vector<std::size_t> map(n);
  for (std::size_t f = 0; f < n; ++f) {
    auto dg = dims.digits(f);
    std::vector<std::size_t> ng(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j)
      ng[j] = dg[perm[j]];
    map[f] = new_dims.flat(ng);
  }
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      out(map[r], map[c]) = m(r, c);
  return out;
}

//============================================================================
// Hermitian eigensolver (cyclic Jacobi)
//============================================================================

struct EigenResult {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // eigenvectors as columns
};

inline EigenResult hermitian_eigen(const ComplexMatrix& m, double herm_tol = kDefaultTol) {
  if (!m.is_square())
    throw std::invalid_argument("hermitian_eigen needs a square matrix");
  if (!is_hermitian(m, herm_tol * std::max(1.0, m.max_abs())))
    throw std::invalid_argument("hermitian_eigen: input is not Hermitian");

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i)
    a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm = [&]() {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j)
          s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  const double tol = kConvergenceTol * std::max(1.0, m.frobenius_norm());
  for (int sweep = 0; sweep < 100 && off_norm() >= tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex_t b = a(p, q);
        const double mag = std::abs(b);
        if (mag == 0)
          continue;
        // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] in the (p, q) plane
        const complex_t ph = std::conj(b) / mag;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2 * mag, aqq - app);
        const double c = std::cos(theta), s = std::sin(theta);
        const complex_t jpp = c, jpq = s, jqp = -s * ph, jqq = c * ph;

        for (std::size_t k = 0; k < n; ++k) {
          const complex_t akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const complex_t apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0;
        a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const complex_t vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigenResult res{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    res.values[k] = a(order[k], order[k]).real();
    res.vectors.set_column(k, v.column(order[k]));
  }
  return res;
}

inline double min_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eigen(m).values.front();
}

inline bool is_psd(const ComplexMatrix& m, double tol = kDefaultTol) {
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("is_psd: input is not Hermitian");
  return min_eigenvalue(m) >= -tol;
}

// f(m) = V f(lambda) V^dagger for Hermitian m.
template <class F>
ComplexMatrix hermitian_function(const ComplexMatrix& m, F f) {
  const auto eig = hermitian_eigen(m);
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const complex_t fk = f(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += fk * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return out;
}

// Principal square root of a PSD matrix; small negative eigenvalues are
// clamped to zero.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  return hermitian_function(m, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

// Modified Gram-Schmidt with one reorthogonalization pass. Columns whose
// residual norm falls below `drop_tol` are rejected and reported as false.
inline bool orthonormalize_against(ComplexVector& v, const std::vector<ComplexVector>& basis,
                                   double drop_tol = 1e-10) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis)
      v -= b * inner(b, v);
  const double n = v.norm();
  if (n < drop_tol)
    return false;
  v *= complex_t(1.0 / n);
  return true;
}

// Orthonormalize the columns of m (rows >= cols, full column rank).
inline ComplexMatrix orthonormal_columns(const ComplexMatrix& m) {
  if (m.rows() < m.cols())
    throw std::invalid_argument("orthonormal_columns needs rows >= cols");
  std::vector<ComplexVector> done;
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    ComplexVector v = m.column(c);
    if (!orthonormalize_against(v, done))
      throw std::domain_error("orthonormal_columns: rank deficient input");
    out.set_column(c, v);
    done.push_back(std::move(v));
  }
  return out;
}

//============================================================================
// Common operators
//============================================================================

namespace pauli {
inline ComplexMatrix i2() { return ComplexMatrix::identity(2); }
inline ComplexMatrix x() { return {{0, 1}, {1, 0}}; }
inline ComplexMatrix y() { return {{0, complex_t(0, -1)}, {complex_t(0, 1), 0}}; }
inline ComplexMatrix z() { return {{1, 0}, {0, -1}}; }
}  // namespace pauli

}  // namespace qcausal
