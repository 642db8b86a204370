// Iterative reweighted least squares for l_p problems.
//
// irls_over minimizes the l_p equation error of an overdetermined system;
// irls_under finds the minimum-l_p-norm solution of an underdetermined one.
// Both follow their reference formulation: homotopy on the working exponent
// pk (geometric approach to the target p from pk = 2), a diagonal reweight
// from the current iterate, one weighted least-squares solve per iteration,
// and a Newton-style partial update. minimax_solve and sparse_solve are
// presets of these two (large p, and p = 1.1 with downward homotopy).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lps/decomp.hpp"
#include "lps/error.hpp"
#include "lps/matrix.hpp"
#include "lps/pinv.hpp"

namespace lps {

/// How the new weighted solve result x1 replaces the running iterate x.
///   full:    x = x1 every iteration.
///   partial: x = q x1 + (1 - q) x with fixed q = partial_q.
///   newton:  the reference behavior; q = 1/(pk - 1), applied as a blend
///            when the exponent branch calls for it and as full replacement
///            otherwise.
enum class UpdateMode { full, partial, newton };

struct IrlsOptions {
  std::optional<double> p;        // target exponent; solver default if unset
  std::optional<double> homotopy_factor;  // K; solver default if unset
  std::optional<int> max_iters;   // KK; default 10
  UpdateMode update_mode = UpdateMode::newton;
  double partial_q = 0.5;         // only read in partial mode
  double weight_floor = 1e-5;     // the listing's +0.00001 guard
  bool trace = true;
  bool early_stop = false;        // stop when the step drops below 1e-12 rel
};

struct IrlsIterate {
  int iter = 0;
  double pk = 0.0;
  double q = 0.0;
  double error_norm = 0.0;
};

struct IrlsResult {
  Vector x;
  int iterations = 0;
  std::vector<IrlsIterate> trace;
  bool converged = false;
};

/// Evidence for the equal-ripple characterization of a minimax solution:
/// a true minimax fit of M > N equations must realize its maximum error
/// magnitude in at least N + 1 equations.
struct MinimaxReport {
  double max_error = 0.0;
  std::size_t num_max_magnitude_errors = 0;
  std::vector<std::size_t> indices;
  bool satisfies_characterization = false;
};

namespace detail {

struct ResolvedIrls {
  double p;
  double k;
  int kk;
};

inline ResolvedIrls resolve_irls(const IrlsOptions& opts, double default_p,
                                 double default_k, int default_kk,
                                 const char* who) {
  ResolvedIrls r;
  r.p = opts.p.value_or(default_p);
  r.k = opts.homotopy_factor.value_or(default_k);
  r.kk = opts.max_iters.value_or(default_kk);
  if (!std::isfinite(r.p) || r.p <= 0.0) {
    throw DomainError(std::string(who) + ": p must be finite and positive");
  }
  if (!std::isfinite(r.k) || r.k <= 0.0) {
    throw DomainError(std::string(who) +
                      ": homotopy factor must be finite and positive");
  }
  if (r.kk < 1) {
    throw DomainError(std::string(who) + ": max_iters must be at least 1");
  }
  return r;
}

// One homotopy step: move pk geometrically toward p, clamped at p. The
// start pk = 2 is already the target when p = 2, so that case short-circuits
// (the reference branch would otherwise walk pk away from 2 whenever the
// homotopy factor points in the other direction).
inline double step_pk(double pk, double p, double k) {
  if (p == 2.0) return 2.0;
  return p > 2.0 ? std::min(p, k * pk) : std::max(p, k * pk);
}

// Relative step size used for the converged flag and early stop.
inline double relative_step(const Vector& x_new, const Vector& x_old) {
  return two_norm(x_new - x_old) / std::max(1.0, two_norm(x_new));
}

}  // namespace detail

/// l_p equation-error minimization of an overdetermined full-column-rank
/// system: iteratively reweights the residual and re-solves the weighted
/// normal equations. Defaults (p = 10, K = 2, 10 iterations) follow the
/// reference formulation; p < 2 engages the weight floor because residual
/// magnitudes are then raised to a negative power.
inline IrlsResult irls_over(const Matrix& a, const Vector& b,
                            const IrlsOptions& opts = {}) {
  require_nonempty(a, "irls_over");
  const auto [p, k, kk] = detail::resolve_irls(opts, 10.0, 2.0, 10, "irls_over");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) {
    throw ShapeError("irls_over: b has length " + std::to_string(b.size()) +
                     ", expected " + std::to_string(m));
  }
  if (m < n) {
    throw ShapeError("irls_over: system must have at least as many equations "
                     "as unknowns; use irls_under");
  }
  if (rank(a) < n) {
    throw SingularMatrixError("irls_over: A must have full column rank");
  }

  IrlsResult result;
  result.x = pinv(a) * b;
  double pk = 2.0;
  double last_step = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= kk; ++iter) {
    pk = detail::step_pk(pk, p, k);
    const Vector e = a * result.x - b;

    // w_i = |e_i|^((pk-2)/2), normalized to unit sum. Magnitudes are scaled
    // by the largest residual first (invariant under the normalization) so
    // that large exponents cannot underflow every weight; negative
    // exponents instead use the absolute floor to keep zero residuals
    // finite. Residuals at rounding level mean the iterate already
    // interpolates, where exponentiated noise would hand all weight to an
    // arbitrary row, so that case keeps uniform weights.
    std::vector<double> w(m);
    const double expo = (pk - 2.0) / 2.0;
    const double emax = max_abs(e);
    double wsum = 0.0;
    if (emax <= 1e-13 * std::max(1.0, two_norm(b))) {
      std::fill(w.begin(), w.end(), 1.0);
      wsum = static_cast<double>(m);
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        const double mag = std::abs(e[i]);
        w[i] = expo < 0.0 ? std::pow(mag + opts.weight_floor, expo)
                          : std::pow(mag / emax, expo);
        wsum += w[i];
      }
    }
    for (double& wi : w) wi /= wsum;

    // Weighted normal equations (W A)^H (W A) x1 = (W A)^H (W b).
    Matrix wa = a;
    Vector wb = b;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) wa(i, j) *= w[i];
      wb[i] *= w[i];
    }
    const Matrix wah = adjoint(wa);
    Vector x1;
    try {
      x1 = solve_square(wah * wa, wah * wb);
    } catch (const SingularMatrixError&) {
      // Extreme weight concentration can leave fewer than n effective
      // rows. The minimum-norm weighted least-squares solution continues
      // the iteration; the next reweight pulls the dropped rows back in.
      x1 = pinv_svd(wa) * wb;
    }

    const double newton_q = 1.0 / (pk - 1.0);
    double applied_q = 1.0;
    double recorded_q = 1.0;
    switch (opts.update_mode) {
      case UpdateMode::full:
        break;
      case UpdateMode::partial:
        applied_q = recorded_q = opts.partial_q;
        break;
      case UpdateMode::newton:
        recorded_q = newton_q;
        applied_q = p > 2.0 ? newton_q : 1.0;
        break;
    }
    const Vector x_old = result.x;
    result.x = applied_q * x1 + Complex{1.0 - applied_q} * x_old;

    const double nn = p > 2.0 ? p : 2.0;
    if (opts.trace) {
      result.trace.push_back({iter, pk, recorded_q, lp_norm(e, nn)});
    }
    result.iterations = iter;
    last_step = detail::relative_step(result.x, x_old);
    if (opts.early_stop && last_step <= 1e-12) break;
  }
  result.converged = last_step <= 1e-8;
  return result;
}

/// Minimum-l_p-norm solution of an underdetermined full-row-rank system:
/// reweights the solution entries and re-solves the weighted minimum-norm
/// problem, keeping A x = b exact at every iteration. Defaults (p = 1.1,
/// K = 0.8, 10 iterations) follow the reference formulation.
inline IrlsResult irls_under(const Matrix& a, const Vector& b,
                             const IrlsOptions& opts = {}) {
  require_nonempty(a, "irls_under");
  const auto [p, k, kk] =
      detail::resolve_irls(opts, 1.1, 0.8, 10, "irls_under");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) {
    throw ShapeError("irls_under: b has length " + std::to_string(b.size()) +
                     ", expected " + std::to_string(m));
  }
  if (m > n) {
    throw ShapeError("irls_under: system must have at least as many unknowns "
                     "as equations; use irls_over");
  }
  if (rank(a) < m) {
    throw SingularMatrixError("irls_under: A must have full row rank");
  }

  IrlsResult result;
  result.x = pinv(a) * b;
  double pk = 2.0;
  double last_step = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= kk; ++iter) {
    pk = detail::step_pk(pk, p, k);

    // w_i = |x_i|^((2-pk)/2) + floor; the floor keeps collapsed entries
    // (the ones a sparse solution drives to zero) from freezing at zero.
    // The update below is invariant under scaling all weights together, so
    // they are divided by the largest one to keep the Gram matrix of A W
    // well scaled even when entries differ by many orders of magnitude.
    std::vector<double> w(n);
    const double expo = (2.0 - pk) / 2.0;
    double wmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(result.x[i]);
      w[i] = expo < 0.0 ? std::pow(mag + opts.weight_floor, expo)
                        : std::pow(mag, expo) + opts.weight_floor;
      wmax = std::max(wmax, w[i]);
    }
    for (double& wi : w) wi /= wmax;

    // x1 = W (A W)^H [(A W)(A W)^H]^{-1} b.
    Matrix aw = a;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) aw(i, j) *= w[j];
    }
    Vector x1;
    try {
      x1 = adjoint(aw) * solve_square(aw * adjoint(aw), b);
    } catch (const SingularMatrixError&) {
      // Weight collapse can starve the Gram matrix of rank; the
      // minimum-norm solution of (A W) y = b keeps the iteration going.
      x1 = pinv_svd(aw) * b;
    }
    for (std::size_t j = 0; j < n; ++j) x1[j] *= w[j];

    const double newton_q = 1.0 / (pk - 1.0);
    double applied_q = 1.0;
    double recorded_q = 1.0;
    switch (opts.update_mode) {
      case UpdateMode::full:
        break;
      case UpdateMode::partial:
        applied_q = recorded_q = opts.partial_q;
        break;
      case UpdateMode::newton:
        recorded_q = newton_q;
        applied_q = p >= 2.0 ? newton_q : 1.0;
        break;
    }
    const Vector x_old = result.x;
    result.x = applied_q * x1 + Complex{1.0 - applied_q} * x_old;

    const double nn = p >= 2.0 ? p : 1.0;
    if (opts.trace) {
      result.trace.push_back({iter, pk, recorded_q, lp_norm(result.x, nn)});
    }
    result.iterations = iter;
    last_step = detail::relative_step(result.x, x_old);
    if (opts.early_stop && last_step <= 1e-12) break;
  }
  result.converged = last_step <= 1e-8;
  return result;
}

/// Chebyshev (minimax) preset: a large target exponent approximates the
/// p -> infinity limit. Unset options default to p = 50, upward homotopy
/// K = 2, and 30 iterations so the exponent has time to settle.
inline IrlsResult minimax_solve(const Matrix& a, const Vector& b,
                                IrlsOptions opts = {}) {
  if (!opts.p) opts.p = 50.0;
  if (!opts.homotopy_factor) opts.homotopy_factor = 2.0;
  if (!opts.max_iters) opts.max_iters = 30;
  return irls_over(a, b, opts);
}

/// Sparsity preset: p just above 1 with downward homotopy concentrates the
/// solution on few entries. Unset options default to p = 1.1, K = 0.8, and
/// 100 iterations; the generous budget matters because near p = 1 the
/// fixed-point contraction is slow (entries shrink by a near-constant
/// factor per step), so driving the collapsed entries from ~1e-2 down to
/// their limiting magnitude takes dozens of iterations.
inline IrlsResult sparse_solve(const Matrix& a, const Vector& b,
                               IrlsOptions opts = {}) {
  if (!opts.p) opts.p = 1.1;
  if (!opts.homotopy_factor) opts.homotopy_factor = 0.8;
  if (!opts.max_iters) opts.max_iters = 100;
  return irls_under(a, b, opts);
}

/// Counts the equations whose error magnitude is within rel_tol of the
/// maximum. A minimax solution of M > N equations in N unknowns must have
/// at least N + 1 such equations. A maximum error at rounding level
/// relative to b means the system is solved exactly; every equation then
/// attains the (zero) maximum and the characterization holds trivially.
inline MinimaxReport check_minimax_characterization(const Matrix& a,
                                                    const Vector& b,
                                                    const Vector& x,
                                                    double rel_tol) {
  require_nonempty(a, "check_minimax_characterization");
  if (b.size() != a.rows() || x.size() != a.cols()) {
    throw ShapeError(
        "check_minimax_characterization: expected b of length " +
        std::to_string(a.rows()) + " and x of length " +
        std::to_string(a.cols()));
  }
  const Vector e = a * x - b;
  MinimaxReport rep;
  rep.max_error = max_abs(e);
  if (rep.max_error <= 1e-13 * std::max(1.0, max_abs(b))) {
    for (std::size_t i = 0; i < e.size(); ++i) rep.indices.push_back(i);
    rep.num_max_magnitude_errors = rep.indices.size();
    rep.satisfies_characterization = true;
    return rep;
  }
  const double cut = (1.0 - rel_tol) * rep.max_error;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (std::abs(e[i]) >= cut) rep.indices.push_back(i);
  }
  rep.num_max_magnitude_errors = rep.indices.size();
  rep.satisfies_characterization =
      rep.num_max_magnitude_errors >= a.cols() + 1;
  return rep;
}

}  // namespace lps
