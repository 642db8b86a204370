// Moore-Penrose pseudoinverse: case classification, analytical routes for
// the full-rank shapes, an SVD fallback for everything else, weighted
// variants, and the general solution family of a linear system.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lps/decomp.hpp"
#include "lps/error.hpp"
#include "lps/matrix.hpp"

namespace lps {

/// Classification of a system (A, b) by shape, rank, and whether b lies in
/// the column span of A.
///
/// code is one of:
///   1a square full rank; 1b/1c square rank-deficient (b in span / not);
///   2a/2b tall full column rank (b in span / not);
///   2c/2d tall rank-deficient (b in span / not);
///   3a wide full row rank; 3b/3c wide rank-deficient (b in span / not).
struct CaseLabel {
  std::string code;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  bool b_in_span = false;
};

/// Residuals of the four defining conditions of the pseudoinverse, each
/// relative to the Frobenius norm of its reference term.
struct PenroseReport {
  double residual_a_pinv_a = 0.0;    // a p a = a
  double residual_pinv_a_pinv = 0.0; // p a p = p
  double residual_ap_hermitian = 0.0; // (a p)^H = a p
  double residual_pa_hermitian = 0.0; // (p a)^H = p a
  bool pass = false;
};

/// Diagonal matrix of nonnegative weights, one per equation or unknown.
class WeightMatrix {
 public:
  explicit WeightMatrix(std::vector<double> diag) : diag_(std::move(diag)) {
    for (double w : diag_) {
      if (!std::isfinite(w) || w < 0.0) {
        throw DomainError("WeightMatrix: weights must be finite and >= 0");
      }
    }
  }

  static WeightMatrix identity(std::size_t n) {
    return WeightMatrix(std::vector<double>(n, 1.0));
  }

  std::size_t size() const { return diag_.size(); }
  const std::vector<double>& diag() const { return diag_; }

  bool strictly_positive() const {
    for (double w : diag_) {
      if (w == 0.0) return false;
    }
    return true;
  }

  /// W * a (row scaling).
  Matrix scale_rows(const Matrix& a) const {
    if (a.rows() != diag_.size()) {
      throw ShapeError("WeightMatrix: weight count " +
                       std::to_string(diag_.size()) + " does not match " +
                       std::to_string(a.rows()) + " rows");
    }
    Matrix s = a;
    for (std::size_t i = 0; i < s.rows(); ++i) {
      for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) *= diag_[i];
    }
    return s;
  }

 private:
  std::vector<double> diag_;
};

/// Pseudoinverse through the SVD: reciprocate singular values above tol,
/// zero the rest. Works for any rank. Negative tol selects the default
/// cutoff max(rows, cols) * eps * sigma_max.
inline Matrix pinv_svd(const Matrix& a, double tol = -1.0) {
  require_nonempty(a, "pinv_svd");
  const SvdResult s = svd(a);
  const double sigma_max = s.sigma.empty() ? 0.0 : s.sigma.front();
  const double cut = tol >= 0.0 ? tol : default_rank_tol(a, sigma_max);
  // v * diag(sigma^+) * u^H, built by scaling the columns of v.
  Matrix vs = s.v;
  for (std::size_t j = 0; j < s.sigma.size(); ++j) {
    const double inv = s.sigma[j] > cut ? 1.0 / s.sigma[j] : 0.0;
    for (std::size_t i = 0; i < vs.rows(); ++i) vs(i, j) *= inv;
  }
  return vs * adjoint(s.u);
}

/// Moore-Penrose pseudoinverse.
///
/// Full-rank shapes take the analytical routes: inverse for square,
/// [A^H A]^{-1} A^H for full column rank, A^H [A A^H]^{-1} for full row
/// rank. Rank-deficient (or numerically borderline) input falls back to the
/// SVD route. tol is the rank cutoff; negative selects the default.
inline Matrix pinv(const Matrix& a, double tol = -1.0) {
  require_nonempty(a, "pinv");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t r = rank(a, tol);
  try {
    if (m == n && r == n) {
      return inverse(a);
    }
    if (m > n && r == n) {
      const Matrix ah = adjoint(a);
      return solve_square(ah * a, ah);
    }
    if (m < n && r == m) {
      // A^H [A A^H]^{-1} computed as the adjoint of a Hermitian solve.
      const Matrix g = a * adjoint(a);
      return adjoint(solve_square(g, a));
    }
  } catch (const SingularMatrixError&) {
    // Numerically full rank by the SVD cutoff yet singular to the LU pivot
    // floor: the SVD route below handles it.
  }
  return pinv_svd(a, tol);
}

/// Regularized inverse [A^H A + delta^2 I]^{-1} A^H, which converges to the
/// pseudoinverse as delta -> 0 for any rank. Serves as an independent check
/// on pinv.
///
/// The result P equals the dual form A^H [A A^H + delta^2 I]^{-1}; the
/// solve runs on whichever Gram matrix is better conditioned for the shape
/// and the other form's defining equation is then verified as a residual.
/// (Subtracting the two solves directly would amplify rounding by
/// sigma_max^2 / delta^2 and can certify nothing at small delta.)
inline Matrix limit_pinv(const Matrix& a, double delta) {
  require_nonempty(a, "limit_pinv");
  if (!(delta > 0.0)) {
    throw DomainError("limit_pinv: delta must be positive");
  }
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const Matrix ah = adjoint(a);
  const Complex d2{delta * delta, 0.0};

  Matrix gn = ah * a;
  for (std::size_t i = 0; i < n; ++i) gn(i, i) += d2;
  Matrix gm = a * ah;
  for (std::size_t i = 0; i < m; ++i) gm(i, i) += d2;

  // P from the smaller (and for full-rank shapes better conditioned) Gram
  // matrix: [A^H A + d2]^{-1} A^H when tall, A^H [A A^H + d2]^{-1} when
  // wide, the latter as an adjoint solve on the Hermitian Gram matrix.
  const Matrix p =
      m >= n ? solve_square(gn, ah) : adjoint(solve_square(gm, a));

  // Both defining equations must hold: [A^H A + d2] P = A^H (primal) and
  // P [A A^H + d2] = A^H (dual). Check the one the solve did not enforce,
  // in backward-relative form.
  const Matrix residual = m >= n ? p * gm - ah : gn * p - ah;
  const double scale =
      frobenius_norm(p) * frobenius_norm(m >= n ? gm : gn) + frobenius_norm(a);
  if (frobenius_norm(residual) > 1e-8 * std::max(1.0, scale)) {
    throw DecompositionError(
        "limit_pinv: primal and dual regularized forms disagree "
        "(defining-equation residual " +
        std::to_string(frobenius_norm(residual)) + ")");
  }
  return p;
}

/// Checks a candidate pseudoinverse against the four defining conditions.
inline PenroseReport verify_penrose(const Matrix& a, const Matrix& aplus,
                                    double tol) {
  if (aplus.rows() != a.cols() || aplus.cols() != a.rows()) {
    throw ShapeError("verify_penrose: candidate must be " +
                     detail::dims(a.cols(), a.rows()) + ", got " +
                     detail::dims(aplus.rows(), aplus.cols()));
  }
  const auto rel = [](const Matrix& diff, const Matrix& ref) {
    const double den = frobenius_norm(ref);
    return den > 0.0 ? frobenius_norm(diff) / den : frobenius_norm(diff);
  };
  const Matrix ap = a * aplus;
  const Matrix pa = aplus * a;
  PenroseReport rep;
  rep.residual_a_pinv_a = rel(ap * a - a, a);
  rep.residual_pinv_a_pinv = rel(pa * aplus - aplus, aplus);
  rep.residual_ap_hermitian = rel(adjoint(ap) - ap, ap);
  rep.residual_pa_hermitian = rel(adjoint(pa) - pa, pa);
  rep.pass = rep.residual_a_pinv_a <= tol && rep.residual_pinv_a_pinv <= tol &&
             rep.residual_ap_hermitian <= tol &&
             rep.residual_pa_hermitian <= tol;
  return rep;
}

/// Classifies (A, b) by shape, rank, and span membership of b. The span
/// test accepts b when ||A pinv(A) b - b|| <= tol * max(1, ||b||); full row
/// rank forces membership without testing.
inline CaseLabel classify_case(const Matrix& a, const Vector& b,
                               double tol = 1e-10) {
  require_nonempty(a, "classify_case");
  if (b.size() != a.rows()) {
    throw ShapeError("classify_case: b has length " +
                     std::to_string(b.size()) + ", expected " +
                     std::to_string(a.rows()));
  }
  CaseLabel label;
  label.m = a.rows();
  label.n = a.cols();
  label.r = rank(a);

  if (label.r == label.m) {
    label.b_in_span = true;
  } else {
    const Vector proj = a * (pinv(a) * b);
    label.b_in_span =
        two_norm(proj - b) <= tol * std::max(1.0, two_norm(b));
  }

  if (label.m == label.n) {
    label.code = label.r == label.n ? "1a" : (label.b_in_span ? "1b" : "1c");
  } else if (label.m > label.n) {
    if (label.r == label.n) {
      label.code = label.b_in_span ? "2a" : "2b";
    } else {
      label.code = label.b_in_span ? "2c" : "2d";
    }
  } else {
    label.code = label.r == label.m ? "3a" : (label.b_in_span ? "3b" : "3c");
  }
  return label;
}

/// Plain-language description of a classification, for reports.
inline std::string describe_case(const CaseLabel& c) {
  std::string shape = c.m == c.n ? "square" : (c.m > c.n ? "overdetermined" : "underdetermined");
  std::string rk;
  if (c.m == c.n) {
    rk = c.r == c.n ? "full rank" : "rank-deficient";
  } else if (c.m > c.n) {
    rk = c.r == c.n ? "full column rank" : "rank-deficient";
  } else {
    rk = c.r == c.m ? "full row rank" : "rank-deficient";
  }
  return "case " + c.code + ": " + shape + " (" + std::to_string(c.m) + "x" +
         std::to_string(c.n) + "), " + rk + " (r=" + std::to_string(c.r) +
         "), b " + (c.b_in_span ? "in" : "not in") + " span(A)";
}

/// Least-squares solution through the normal equations [A^H A] x = A^H b.
/// Requires full column rank; rank-deficient systems are rejected.
inline Vector solve_normal_equations(const Matrix& a, const Vector& b) {
  require_nonempty(a, "solve_normal_equations");
  if (b.size() != a.rows()) {
    throw ShapeError("solve_normal_equations: b has length " +
                     std::to_string(b.size()) + ", expected " +
                     std::to_string(a.rows()));
  }
  const Matrix ah = adjoint(a);
  try {
    return solve_square(ah * a, ah * b);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "solve_normal_equations: A^H A is singular (A is rank-deficient); "
        "use pinv for the minimum-norm least-squares solution");
  }
}

/// Weighted least-squares pseudoinverse [A^H W^H W A]^{-1} A^H W^H W for
/// full column rank A: minimizes the weighted equation error ||W(Ax - b)||.
inline Matrix weighted_pinv_over(const Matrix& a, const WeightMatrix& w) {
  require_nonempty(a, "weighted_pinv_over");
  const Matrix wa = w.scale_rows(a);
  const Matrix w2a = w.scale_rows(wa);  // W^H W A with real diagonal weights
  const Matrix ah = adjoint(a);
  try {
    return solve_square(ah * w2a, adjoint(w2a));
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "weighted_pinv_over: weighted normal matrix A^H W^H W A is singular; "
        "A must have full column rank with enough positively weighted rows");
  }
}

/// Weighted minimum-norm pseudoinverse [W^H W]^{-1} A^H [A [W^H W]^{-1} A^H]^{-1}
/// for full row rank A: among exact solutions minimizes ||W x||. Weights
/// must be strictly positive because their squares are inverted.
inline Matrix weighted_pinv_under(const Matrix& a, const WeightMatrix& w) {
  require_nonempty(a, "weighted_pinv_under");
  if (w.size() != a.cols()) {
    throw ShapeError("weighted_pinv_under: weight count " +
                     std::to_string(w.size()) + " does not match " +
                     std::to_string(a.cols()) + " unknowns");
  }
  if (!w.strictly_positive()) {
    throw DomainError(
        "weighted_pinv_under: weights must be strictly positive because "
        "W^H W is inverted");
  }
  // B = [W^H W]^{-1} A^H by row scaling with 1/w^2, then B [A B]^{-1}.
  Matrix bm = adjoint(a);
  for (std::size_t i = 0; i < bm.rows(); ++i) {
    const double inv_w2 = 1.0 / (w.diag()[i] * w.diag()[i]);
    for (std::size_t j = 0; j < bm.cols(); ++j) bm(i, j) *= inv_w2;
  }
  const Matrix g = a * bm;
  try {
    // B G^{-1} = (G^{-1} B^H)^H since G = A [W^H W]^{-1} A^H is Hermitian.
    return adjoint(solve_square(g, adjoint(bm)));
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "weighted_pinv_under: A [W^H W]^{-1} A^H is singular; A must have "
        "full row rank");
  }
}

/// The full solution family x = pinv(A) b + (I - pinv(A) A) y. Every choice
/// of y gives the same equation error; y = 0 gives the minimum-norm member.
inline Vector general_solution(const Matrix& a, const Vector& b,
                               const Vector& y) {
  require_nonempty(a, "general_solution");
  if (b.size() != a.rows() || y.size() != a.cols()) {
    throw ShapeError("general_solution: expected b of length " +
                     std::to_string(a.rows()) + " and y of length " +
                     std::to_string(a.cols()));
  }
  const Matrix ap = pinv(a);
  const Vector x0 = ap * b;
  const Vector null_part = y - ap * (a * y);
  return x0 + null_part;
}

}  // namespace lps
