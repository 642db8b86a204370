// Matrix factorizations: one-sided Jacobi SVD and partially pivoted LU.
//
// Both work directly on complex<double> and keep real inputs exactly real.
// Sizes here are desk scale, so the Jacobi pair scan recomputes column inner
// products instead of caching them; clarity wins over the constant factor.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "lps/error.hpp"
#include "lps/matrix.hpp"

namespace lps {

/// Economy singular value decomposition a = u * diag(sigma) * adjoint(v).
///
/// With r = min(rows, cols): u is rows x r with orthonormal columns, v is
/// cols x r with orthonormal columns, and sigma holds r values sorted in
/// descending order. Columns of u paired with exactly-zero singular values
/// are filled by orthonormal completion so u always has full column rank.
struct SvdResult {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;
};

namespace detail {

// Jacobi sweeps orthogonalize the columns of g in place, accumulating the
// applied unitary right-factor into v. Requires g.rows() >= g.cols().
inline void jacobi_orthogonalize(Matrix& g, Matrix& v) {
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  const double tol = 4.0 * std::numeric_limits<double>::epsilon();
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0;
        double aqq = 0.0;
        Complex apq{0.0, 0.0};
        for (std::size_t i = 0; i < m; ++i) {
          app += std::norm(g(i, p));
          aqq += std::norm(g(i, q));
          apq += std::conj(g(i, p)) * g(i, q);
        }
        const double alpha = std::abs(apq);
        if (alpha <= tol * std::sqrt(app * aqq) || app == 0.0 || aqq == 0.0) {
          continue;
        }
        rotated = true;

        // Rotate the pair into a real problem: scaling column q by the
        // conjugate phase of apq makes the cross term alpha, real positive.
        const Complex phase_conj = std::conj(apq) / alpha;
        const double zeta = (aqq - app) / (2.0 * alpha);
        const double t =
            std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        for (std::size_t i = 0; i < m; ++i) {
          const Complex gp = g(i, p);
          const Complex gq = g(i, q) * phase_conj;
          g(i, p) = c * gp - s * gq;
          g(i, q) = s * gp + c * gq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vp = v(i, p);
          const Complex vq = v(i, q) * phase_conj;
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) return;
  }
  throw DecompositionError("svd: Jacobi sweeps did not converge");
}

// Replaces each zero column of u (flagged by sigma == 0) with a unit vector
// orthogonal to every other column. A candidate always exists because u has
// at most m columns.
inline void complete_zero_columns(Matrix& u, const std::vector<double>& sigma) {
  const std::size_t m = u.rows();
  const std::size_t r = u.cols();
  for (std::size_t j = 0; j < r; ++j) {
    if (sigma[j] != 0.0) continue;
    Vector best(m);
    double best_norm = -1.0;
    for (std::size_t k = 0; k < m; ++k) {
      Vector cand = Vector::unit(m, k);
      for (std::size_t c = 0; c < r; ++c) {
        if (c == j) continue;
        const Vector uc = u.col(c);
        cand = cand - dot(uc, cand) * uc;
      }
      const double nn = two_norm(cand);
      if (nn > best_norm) {
        best_norm = nn;
        best = cand;
      }
    }
    // One re-orthogonalization pass keeps the completion orthogonal to
    // working precision even when the best residual is small.
    for (std::size_t c = 0; c < r; ++c) {
      if (c == j) continue;
      const Vector uc = u.col(c);
      best = best - dot(uc, best) * uc;
    }
    const double nn = two_norm(best);
    if (nn == 0.0) {
      throw DecompositionError("svd: failed to complete orthonormal basis");
    }
    u.set_col(j, (1.0 / nn) * best);
  }
}

inline SvdResult svd_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix g = a;
  Matrix v = Matrix::identity(n);
  jacobi_orthogonalize(g, v);

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = two_norm(g.col(j));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  SvdResult out;
  out.u = Matrix(m, n);
  out.v = Matrix(n, n);
  out.sigma.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.sigma[j] = sigma[src];
    out.v.set_col(j, v.col(src));
    if (sigma[src] > 0.0) {
      out.u.set_col(j, (1.0 / sigma[src]) * g.col(src));
    }
  }
  complete_zero_columns(out.u, out.sigma);
  return out;
}

}  // namespace detail

inline SvdResult svd(const Matrix& a) {
  const std::size_t r = std::min(a.rows(), a.cols());
  if (r == 0) {
    return SvdResult{Matrix(a.rows(), 0), {}, Matrix(a.cols(), 0)};
  }
  if (a.rows() >= a.cols()) return detail::svd_tall(a);
  // Wide case: factor the adjoint and swap the roles of u and v.
  SvdResult t = detail::svd_tall(adjoint(a));
  return SvdResult{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

/// Default rank cutoff relative to the largest singular value.
inline double default_rank_tol(const Matrix& a, double sigma_max) {
  return static_cast<double>(std::max(a.rows(), a.cols())) *
         std::numeric_limits<double>::epsilon() * sigma_max;
}

/// Numerical rank: the number of singular values above tol. When tol is
/// negative the default cutoff max(rows, cols) * eps * sigma_max applies.
inline std::size_t rank(const Matrix& a, double tol = -1.0) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  const SvdResult s = svd(a);
  const double sigma_max = s.sigma.empty() ? 0.0 : s.sigma.front();
  const double cut = tol >= 0.0 ? tol : default_rank_tol(a, sigma_max);
  std::size_t r = 0;
  for (double sv : s.sigma) {
    if (sv > cut) ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// LU with partial pivoting

/// Packed LU factors of a square matrix with the row permutation applied
/// first: perm maps factored row index to original row index.
struct LuFactors {
  Matrix lu;
  std::vector<std::size_t> perm;
};

inline LuFactors lu_factor(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw ShapeError("lu_factor: matrix must be square, got " +
                     detail::dims(a.rows(), a.cols()));
  }
  const std::size_t n = a.rows();
  LuFactors f;
  f.lu = a;
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  // Pivots below this scale mean the matrix is singular to working precision.
  const double pivot_floor = static_cast<double>(std::max<std::size_t>(n, 1)) *
                             std::numeric_limits<double>::epsilon() * max_abs(a);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double piv_mag = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double mag = std::abs(f.lu(i, k));
      if (mag > piv_mag) {
        piv_mag = mag;
        piv = i;
      }
    }
    if (piv_mag <= pivot_floor) {
      throw SingularMatrixError("lu_factor: matrix is singular to working precision (pivot " +
                                std::to_string(piv_mag) + " at step " +
                                std::to_string(k) + ")");
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    const Complex pivot = f.lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex l = f.lu(i, k) / pivot;
      f.lu(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) {
        f.lu(i, j) -= l * f.lu(k, j);
      }
    }
  }
  return f;
}

inline Vector lu_solve(const LuFactors& f, const Vector& b) {
  const std::size_t n = f.lu.rows();
  if (b.size() != n) {
    throw ShapeError("lu_solve: right-hand side length " +
                     std::to_string(b.size()) + " does not match order " +
                     std::to_string(n));
  }
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) acc -= f.lu(i, j) * y[j];
    y[i] = acc;
  }
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Complex acc = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= f.lu(ii, j) * x[j];
    x[ii] = acc / f.lu(ii, ii);
  }
  return x;
}

inline Matrix lu_solve(const LuFactors& f, const Matrix& b) {
  const std::size_t n = f.lu.rows();
  if (b.rows() != n) {
    throw ShapeError("lu_solve: right-hand side has " +
                     std::to_string(b.rows()) + " rows, expected " +
                     std::to_string(n));
  }
  Matrix x(n, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    x.set_col(j, lu_solve(f, b.col(j)));
  }
  return x;
}

/// Solves a x = b for square a. Throws SingularMatrixError when a is
/// singular to working precision.
inline Vector solve_square(const Matrix& a, const Vector& b) {
  if (a.rows() == 0) {
    if (!b.empty()) throw ShapeError("solve_square: shape mismatch");
    return Vector{};
  }
  return lu_solve(lu_factor(a), b);
}

inline Matrix solve_square(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0) {
    if (b.rows() != 0) throw ShapeError("solve_square: shape mismatch");
    return Matrix(0, b.cols());
  }
  return lu_solve(lu_factor(a), b);
}

inline Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw ShapeError("inverse: matrix must be square, got " +
                     detail::dims(a.rows(), a.cols()));
  }
  if (a.rows() == 0) return Matrix(0, 0);
  return lu_solve(lu_factor(a), Matrix::identity(a.rows()));
}

}  // namespace lps
