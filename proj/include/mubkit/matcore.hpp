#pragma once

// Dense complex matrices sized for spin spaces (d up to a few dozen).
// Everything here is a pure function of its arguments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mubkit/errors.hpp"

namespace mubkit {

using Complex = std::complex<double>;

/// Elementwise absolute tolerance used by every equality-style check.
class Tolerance {
 public:
  constexpr Tolerance() = default;
  explicit Tolerance(double eps) : eps_(eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw std::invalid_argument("tolerance must lie in (0, 1), got " +
                                  std::to_string(eps));
    }
  }

  constexpr double eps() const noexcept { return eps_; }

 private:
  double eps_ = 1e-10;
};

/// Row-major dense complex matrix with value semantics.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionMismatch("entry count " + std::to_string(data_.size()) +
                              " does not match " + std::to_string(rows_) +
                              "x" + std::to_string(cols_));
    }
    for (const Complex& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("matrix entries must be finite");
      }
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static ComplexMatrix column(std::span<const Complex> values) {
    return ComplexMatrix(values.size(), 1,
                         std::vector<Complex>(values.begin(), values.end()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  /// Column c as a rows()x1 matrix.
  ComplexMatrix col(std::size_t c) const {
    ComplexMatrix v(rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r) v(r, 0) = (*this)(r, c);
    return v;
  }

  void set_col(std::size_t c, const ComplexMatrix& v) {
    if (v.rows() != rows_ || v.cols() != 1) {
      throw DimensionMismatch("set_col expects a " + std::to_string(rows_) +
                              "x1 column");
    }
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v(r, 0);
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (Complex& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_same_shape(const ComplexMatrix& o, const char* op) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) {
      throw DimensionMismatch(std::string(op) + ": " + std::to_string(rows_) +
                              "x" + std::to_string(cols_) + " vs " +
                              std::to_string(o.rows_) + "x" +
                              std::to_string(o.cols_));
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

namespace detail {

inline void require_square_pair(const ComplexMatrix& a, const ComplexMatrix& b,
                                const char* op) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionMismatch(std::string(op) +
                            " needs square matrices of equal size, got " +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

}  // namespace detail

/// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
  return out;
}

inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("multiply " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " by " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return multiply(a, b);
}

inline Complex trace(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("trace of a non-square matrix");
  Complex t{};
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// Hilbert-Schmidt inner product Tr(a^dagger b).
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_square_pair(a, b, "hs_inner");
  Complex s{};
  for (std::size_t i = 0; i < a.data().size(); ++i)
    s += std::conj(a.data()[i]) * b.data()[i];
  return s;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_square_pair(a, b, "commutator");
  return a * b - b * a;
}

/// Largest elementwise modulus.
inline double max_abs(const ComplexMatrix& m) {
  double worst = 0.0;
  for (const Complex& z : m.data()) worst = std::max(worst, std::abs(z));
  return worst;
}

/// max_ij |a_ij - b_ij|; the equality metric used throughout.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff of differently shaped matrices");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

inline double frobenius_distance(const ComplexMatrix& a,
                                 const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("frobenius_distance of differently shaped matrices");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    s += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(s);
}

inline bool is_hermitian(const ComplexMatrix& m, Tolerance tol = {}) {
  if (!m.is_square()) throw DimensionMismatch("is_hermitian of non-square");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol.eps()) return false;
  return true;
}

inline bool is_unitary(const ComplexMatrix& m, Tolerance tol = {}) {
  if (!m.is_square()) throw DimensionMismatch("is_unitary of non-square");
  return max_abs_diff(adjoint(m) * m, ComplexMatrix::identity(m.rows())) <=
         tol.eps();
}

/// exp(2 pi i p / order), evaluated directly from the reduced exponent.
inline Complex root_of_unity(long long order, long long power) {
  if (order <= 0) throw std::invalid_argument("root order must be positive");
  long long p = power % order;
  if (p < 0) p += order;
  if (p == 0) return {1.0, 0.0};
  if (2 * p == order) return {-1.0, 0.0};
  if (4 * p == order) return {0.0, 1.0};
  if (4 * p == 3 * order) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(p) /
                       static_cast<double>(order);
  return {std::cos(angle), std::sin(angle)};
}

/// <u|v> for column vectors.
inline Complex inner(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows()) {
    throw DimensionMismatch("inner product needs equal-length columns");
  }
  Complex s{};
  for (std::size_t i = 0; i < u.rows(); ++i) s += std::conj(u(i, 0)) * v(i, 0);
  return s;
}

/// |v><v| for a column vector.
inline ComplexMatrix outer_projector(const ComplexMatrix& v) {
  if (v.cols() != 1) throw DimensionMismatch("projector needs a column");
  ComplexMatrix p(v.rows(), v.rows());
  for (std::size_t r = 0; r < v.rows(); ++r)
    for (std::size_t c = 0; c < v.rows(); ++c)
      p(r, c) = v(r, 0) * std::conj(v(c, 0));
  return p;
}

}  // namespace mubkit
