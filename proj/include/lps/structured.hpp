// Structured matrix builders: DFT, convolution Toeplitz, circulant.
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "lps/decomp.hpp"
#include "lps/error.hpp"
#include "lps/matrix.hpp"

namespace lps {

namespace detail {

// w^e for w = exp(-j 2 pi / n), with e already reduced mod n. Quarter-turn
// values are returned exactly so that small orders (and every entry whose
// angle is a multiple of pi/2) carry no rounding dust.
inline Complex dft_root(std::size_t e, std::size_t n) {
  if ((4 * e) % n == 0) {
    switch (4 * e / n) {
      case 0: return Complex{1.0, 0.0};
      case 1: return Complex{0.0, -1.0};
      case 2: return Complex{-1.0, 0.0};
      default: return Complex{0.0, 1.0};
    }
  }
  const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
  return std::polar(1.0, step * static_cast<double>(e));
}

}  // namespace detail

/// Unnormalized DFT matrix: W[n, k] = w^{n k} with w = exp(-j 2 pi / N).
///
/// The exponent is reduced mod N before evaluation so that entries land
/// exactly on the primitive roots (e.g. w^N is exactly 1).
inline Matrix build_dft_matrix(std::size_t n) {
  if (n == 0) throw ShapeError("build_dft_matrix: order must be positive");
  Matrix w(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      w(r, k) = detail::dft_root((r * k) % n, n);
    }
  }
  return w;
}

/// Full linear convolution as a matrix: lower-triangular banded Toeplitz of
/// size (len(h) + n_cols - 1) x n_cols with h running down each column.
/// Multiplying by x of length n_cols gives h * x.
inline Matrix build_convolution_matrix(const Vector& h, std::size_t n_cols) {
  if (h.empty()) throw ShapeError("build_convolution_matrix: h must be nonempty");
  if (n_cols == 0) {
    throw ShapeError("build_convolution_matrix: n_cols must be positive");
  }
  const std::size_t lh = h.size();
  Matrix a(lh + n_cols - 1, n_cols);
  for (std::size_t j = 0; j < n_cols; ++j) {
    for (std::size_t t = 0; t < lh; ++t) {
      a(j + t, j) = h[t];
    }
  }
  return a;
}

/// Cyclic convolution by h as an N x N circulant: column 0 is h and each
/// later column shifts it cyclically downward, so C[i, j] = h[(i - j) mod N].
inline Matrix build_circulant(const Vector& h) {
  if (h.empty()) throw ShapeError("build_circulant: h must be nonempty");
  const std::size_t n = h.size();
  Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      c(i, j) = h[(i + n - j) % n];
    }
  }
  return c;
}

/// Eigenvalues of the circulant built from h, with a diagonalization
/// residual as evidence: lambda is the DFT of h and the residual measures
/// how far inv(V) C V is from diag(lambda) with V holding the DFT basis
/// vectors (V = conj(W), inv(V) = W / N).
struct CirculantEigenResult {
  Vector lambda;
  double residual = 0.0;
};

inline CirculantEigenResult circulant_eigen_check(const Vector& h) {
  if (h.empty()) throw ShapeError("circulant_eigen_check: h must be nonempty");
  const std::size_t n = h.size();
  const Matrix w = build_dft_matrix(n);
  const Matrix c = build_circulant(h);

  CirculantEigenResult out;
  out.lambda = w * h;

  const Matrix v = conjugate(w);
  const Complex inv_n{1.0 / static_cast<double>(n), 0.0};
  Matrix d = (inv_n * w) * c * v;
  for (std::size_t i = 0; i < n; ++i) d(i, i) -= out.lambda[i];
  out.residual = frobenius_norm(d);
  return out;
}

}  // namespace lps
