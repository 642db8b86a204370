// Frame analysis for finite-dimensional signal expansions.
//
// A frame is a spanning set of n vectors in d dimensions, possibly redundant
// (n > d), held as the columns of a synthesis matrix S. Analysis takes inner
// products against the frame vectors, synthesis forms weighted sums, and the
// frame bounds are the extreme eigenvalues of S S^H: they bracket the energy
// ratio between a signal and its coefficients. Equal bounds mean a tight
// frame; equal to one with n = d, an orthonormal basis. Dual systems invert
// the expansion: the inverse matrix for a basis, the pseudoinverse (or an
// augment-and-invert construction) for a redundant frame.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "lps/decomp.hpp"
#include "lps/error.hpp"
#include "lps/matrix.hpp"
#include "lps/pinv.hpp"

namespace lps {

/// A finite frame: n vectors in d dimensions stored as the columns of the
/// d x n synthesis matrix.
struct FrameSystem {
  Matrix synthesis;

  explicit FrameSystem(Matrix s) : synthesis(std::move(s)) {
    require_nonempty(synthesis, "FrameSystem");
  }

  std::size_t dimension() const { return synthesis.rows(); }
  std::size_t count() const { return synthesis.cols(); }
};

/// Frame bounds and derived classification. redundancy is n/d when the
/// vectors are unit norm (the case where that ratio measures oversampling)
/// and the lower bound otherwise.
struct FrameReport {
  double lower = 0.0;
  double upper = 0.0;
  bool tight = false;
  double redundancy = 0.0;
  bool is_orthobasis = false;
};

/// Computes the frame bounds: the smallest and largest eigenvalues of
/// S S^H, i.e. the squared extreme singular values of the synthesis matrix.
/// tol is the relative gap below which the frame counts as tight, and also
/// the tolerance for the unit-norm and orthonormal-basis checks.
inline FrameReport frame_bounds(const FrameSystem& f, double tol = 1e-6) {
  const Matrix& s = f.synthesis;
  const std::size_t d = f.dimension();
  const std::size_t n = f.count();
  if (n < d) {
    throw NotAFrameError("frame_bounds: " + std::to_string(n) +
                             " vectors cannot span " + std::to_string(d) +
                             " dimensions",
                         0.0);
  }
  const SvdResult dec = svd(s);
  const double smax = dec.sigma.front();
  const double smin = dec.sigma.back();
  if (smin <= default_rank_tol(s, smax)) {
    throw NotAFrameError(
        "frame_bounds: frame vectors do not span; smallest singular value " +
            std::to_string(smin) + " is at rounding level",
        0.0);
  }

  FrameReport rep;
  rep.lower = smin * smin;
  rep.upper = smax * smax;
  rep.tight = (rep.upper - rep.lower) <= tol * rep.upper;
  rep.is_orthobasis =
      rep.tight && std::abs(rep.lower - 1.0) <= tol && n == d;

  bool unit_norm = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(two_norm(s.col(j)) - 1.0) > tol) {
      unit_norm = false;
      break;
    }
  }
  rep.redundancy = unit_norm
                       ? static_cast<double>(n) / static_cast<double>(d)
                       : rep.lower;
  return rep;
}

/// Dual basis of a nonsingular square basis matrix: the rows of F^{-1}.
/// Satisfies the biorthogonality F Fd = Fd F = I.
inline Matrix dual_basis(const Matrix& f) {
  require_nonempty(f, "dual_basis");
  if (f.rows() != f.cols()) {
    throw ShapeError("dual_basis: matrix is " + std::to_string(f.rows()) +
                     "x" + std::to_string(f.cols()) +
                     ", expected square; use dual_frame for redundant sets");
  }
  return inverse(f);
}

/// Canonical dual of a frame: the n x d pseudoinverse G = S^+ of the
/// synthesis matrix, whose rows are the dual frame vectors. Satisfies the
/// reconstruction identity S G = I.
inline Matrix dual_frame(const FrameSystem& f) {
  const Matrix& s = f.synthesis;
  if (f.count() < f.dimension() || rank(s) < f.dimension()) {
    throw NotAFrameError(
        "dual_frame: synthesis matrix does not have full row rank", 0.0);
  }
  return pinv(s);
}

/// Alternative dual construction: append the caller's (n - d) extra rows to
/// the synthesis matrix until it is square, invert, and keep the first d
/// columns. Any independent choice of rows yields a valid (generally
/// different) dual, so the rows are a parameter rather than generated here.
inline Matrix dual_frame_by_augmentation(const FrameSystem& f,
                                         const Matrix& added_rows) {
  const Matrix& s = f.synthesis;
  const std::size_t d = f.dimension();
  const std::size_t n = f.count();
  if (n <= d) {
    throw ShapeError(
        "dual_frame_by_augmentation: synthesis matrix is already square or "
        "taller; use dual_basis");
  }
  if (added_rows.rows() != n - d || added_rows.cols() != n) {
    throw ShapeError("dual_frame_by_augmentation: added rows are " +
                     std::to_string(added_rows.rows()) + "x" +
                     std::to_string(added_rows.cols()) + ", expected " +
                     std::to_string(n - d) + "x" + std::to_string(n));
  }
  Matrix t(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < d; ++i) t(i, j) = s(i, j);
    for (std::size_t i = d; i < n; ++i) t(i, j) = added_rows(i - d, j);
  }
  Matrix t_inv;
  try {
    t_inv = inverse(t);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "dual_frame_by_augmentation: added rows are not independent of the "
        "frame rows");
  }
  Matrix g(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) g(i, j) = t_inv(i, j);
  }
  return g;
}

/// Analysis operator: coefficient k is the inner product of frame vector k
/// with the signal, c = S^H x.
inline Vector analyze(const FrameSystem& f, const Vector& x) {
  if (x.size() != f.dimension()) {
    throw ShapeError("analyze: signal has length " + std::to_string(x.size()) +
                     ", expected " + std::to_string(f.dimension()));
  }
  return adjoint(f.synthesis) * x;
}

/// Synthesis operator: the weighted sum of frame vectors, x = S c.
inline Vector synthesize(const FrameSystem& f, const Vector& c) {
  if (c.size() != f.count()) {
    throw ShapeError("synthesize: coefficient vector has length " +
                     std::to_string(c.size()) + ", expected " +
                     std::to_string(f.count()));
  }
  return f.synthesis * c;
}

/// Signal energy, coefficient energy, and their ratio. For a tight frame
/// the ratio equals the frame bound for every signal; for the unnormalized
/// N-point DFT system it equals N.
struct ParsevalReport {
  double energy_signal = 0.0;
  double energy_coeffs = 0.0;
  double constant = 0.0;
};

inline ParsevalReport parseval_check(const FrameSystem& f, const Vector& x) {
  const double ex = two_norm(x);
  if (ex == 0.0) {
    throw DomainError(
        "parseval_check: zero signal leaves the energy ratio undefined");
  }
  const double ec = two_norm(analyze(f, x));
  ParsevalReport rep;
  rep.energy_signal = ex * ex;
  rep.energy_coeffs = ec * ec;
  rep.constant = rep.energy_coeffs / rep.energy_signal;
  return rep;
}

/// The standard three-vector tight frame in the plane: unit vectors 120
/// degrees apart, entries rounded to three decimals. Its frame bound is
/// 3/2, the prototype of a redundant tight frame.
inline FrameSystem mercedes_frame() {
  return FrameSystem(Matrix{{1.0, -0.5, -0.5}, {0.0, 0.866, -0.866}});
}

}  // namespace lps
