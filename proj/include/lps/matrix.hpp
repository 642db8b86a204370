// Dense matrix and vector values over complex<double>.
//
// Everything is a plain value: construction validates, operations are pure
// functions, nothing mutates shared state. Real data is represented with
// exactly-zero imaginary parts; complex arithmetic preserves those zeros, so
// real problems produce bit-real results without a separate code path.
#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lps/error.hpp"

namespace lps {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

namespace detail {

inline void require_finite(const std::vector<Complex>& entries,
                           const char* what) {
  for (Complex z : entries) {
    if (!is_finite(z)) {
      throw DomainError(std::string(what) + ": entries must be finite");
    }
  }
}

inline std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace detail

/// Dense column vector (or plain coefficient list) of complex scalars.
class Vector {
 public:
  Vector() = default;

  explicit Vector(std::size_t len) : entries_(len, Complex{0.0, 0.0}) {}

  explicit Vector(std::vector<Complex> entries) : entries_(std::move(entries)) {
    detail::require_finite(entries_, "Vector");
  }

  Vector(std::initializer_list<Complex> entries)
      : Vector(std::vector<Complex>(entries)) {}

  static Vector zeros(std::size_t len) { return Vector(len); }

  static Vector unit(std::size_t len, std::size_t k) {
    Vector e(len);
    assert(k < len);
    e[k] = 1.0;
    return e;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  Complex& operator[](std::size_t i) {
    assert(i < entries_.size());
    return entries_[i];
  }
  const Complex& operator[](std::size_t i) const {
    assert(i < entries_.size());
    return entries_[i];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// True when every imaginary part is exactly zero.
  bool is_real() const {
    for (Complex z : entries_) {
      if (z.imag() != 0.0) return false;
    }
    return true;
  }

 private:
  std::vector<Complex> entries_;
};

/// Dense row-major matrix of complex scalars.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw ShapeError("Matrix: entry count " + std::to_string(data_.size()) +
                       " does not match " + detail::dims(rows_, cols_));
    }
    detail::require_finite(data_, "Matrix");
  }

  Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw ShapeError("Matrix: ragged initializer rows");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
    detail::require_finite(data_, "Matrix");
  }

  static Matrix identity(std::size_t n) {
    Matrix eye(n, n);
    for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
    return eye;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  const std::vector<Complex>& data() const { return data_; }

  Vector row(std::size_t i) const {
    assert(i < rows_);
    Vector r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  Vector col(std::size_t j) const {
    assert(j < cols_);
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_col(std::size_t j, const Vector& c) {
    assert(j < cols_ && c.size() == rows_);
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  bool is_real() const {
    for (Complex z : data_) {
      if (z.imag() != 0.0) return false;
    }
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// ---------------------------------------------------------------------------
// Shape helpers

inline void require_same_shape(const Matrix& a, const Matrix& b,
                               const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shapes " +
                     detail::dims(a.rows(), a.cols()) + " and " +
                     detail::dims(b.rows(), b.cols()) + " differ");
  }
}

inline void require_nonempty(const Matrix& a, const char* op) {
  if (a.empty()) {
    throw ShapeError(std::string(op) + ": matrix must be nonempty");
  }
}

// ---------------------------------------------------------------------------
// Arithmetic

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "operator+");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "operator-");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

inline Matrix operator-(const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
  return c;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("operator*: inner dimensions " +
                     detail::dims(a.rows(), a.cols()) + " * " +
                     detail::dims(b.rows(), b.cols()) + " do not match");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

inline Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) {
    throw ShapeError("operator*: matrix " + detail::dims(a.rows(), a.cols()) +
                     " times vector of length " + std::to_string(x.size()));
  }
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

inline Matrix operator*(Complex s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

inline Matrix operator*(const Matrix& a, Complex s) { return s * a; }

inline Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ShapeError("operator+: vector lengths differ");
  Vector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ShapeError("operator-: vector lengths differ");
  Vector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline Vector operator*(Complex s, const Vector& a) {
  Vector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

inline Vector operator*(const Vector& a, Complex s) { return s * a; }

// ---------------------------------------------------------------------------
// Transposes, conjugation, inner products

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

/// Conjugate transpose. Reduces to the plain transpose for real data.
inline Matrix adjoint(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

inline Matrix conjugate(const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = std::conj(a(i, j));
  return c;
}

/// Inner product conjugating the first argument: dot(a, b) = a^H b.
inline Complex dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ShapeError("dot: vector lengths differ");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline Matrix as_column(const Vector& x) {
  Matrix m(x.size(), 1);
  for (std::size_t i = 0; i < x.size(); ++i) m(i, 0) = x[i];
  return m;
}

inline Matrix as_row(const Vector& x) {
  Matrix m(1, x.size());
  for (std::size_t j = 0; j < x.size(); ++j) m(0, j) = x[j];
  return m;
}

inline Vector column_vector(const Matrix& m) {
  if (m.cols() != 1) throw ShapeError("column_vector: matrix is not a column");
  return m.col(0);
}

// ---------------------------------------------------------------------------
// Norms

inline double frobenius_norm(const Matrix& a) {
  double acc = 0.0;
  for (Complex z : a.data()) acc += std::norm(z);
  return std::sqrt(acc);
}

inline double max_abs(const Matrix& a) {
  double m = 0.0;
  for (Complex z : a.data()) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs(const Vector& x) {
  double m = 0.0;
  for (Complex z : x) m = std::max(m, std::abs(z));
  return m;
}

inline double two_norm(const Vector& x) {
  double acc = 0.0;
  for (Complex z : x) acc += std::norm(z);
  return std::sqrt(acc);
}

/// General l_p norm (sum |x_i|^p)^(1/p).
///
/// p = infinity gives max |x_i|; 0 < p < 1 evaluates the same expression,
/// which is then a pseudonorm; p = 0 counts the entries with |x_i| above
/// zero_tol. Negative p is rejected. Powers are evaluated on |x_i| scaled by
/// the largest magnitude so that large exponents do not overflow.
inline double lp_norm(const Vector& x, double p, double zero_tol = 1e-12) {
  if (std::isnan(p) || p < 0.0) {
    throw DomainError("lp_norm: exponent must be >= 0 or infinity");
  }
  if (p == 0.0) {
    double count = 0.0;
    for (Complex z : x) {
      if (std::abs(z) > zero_tol) count += 1.0;
    }
    return count;
  }
  double mx = max_abs(x);
  if (std::isinf(p) || mx == 0.0) return mx;
  double acc = 0.0;
  for (Complex z : x) acc += std::pow(std::abs(z) / mx, p);
  return mx * std::pow(acc, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Debug output (tests and diagnostics)

inline std::ostream& operator<<(std::ostream& os, const Vector& x) {
  os << "[";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    if (x[i].imag() == 0.0) {
      os << x[i].real();
    } else {
      os << x[i].real() << (x[i].imag() < 0 ? "-" : "+")
         << std::abs(x[i].imag()) << "i";
    }
  }
  return os << "]";
}

inline std::ostream& operator<<(std::ostream& os, const Matrix& a) {
  os << "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ", ";
      Complex z = a(i, j);
      if (z.imag() == 0.0) {
        os << z.real();
      } else {
        os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
           << "i";
      }
    }
  }
  return os << "]";
}

}  // namespace lps
