// Mixed known/unknown linear systems by block partitioning.
//
// In F x = y, suppose K entries of x and n - K entries of y are given and
// the rest are wanted. Reordering rows so the unknown y entries come first
// and columns so the known x entries come first partitions F into blocks
//   [y1]   [a b] [x1]
//   [y2] = [c d] [x2]
// with x1, y2 known and y1, x2 unknown. Eliminating x2 through the d block
// solves the system: x2 = d^{-1}(y2 - c x1), y1 = a x1 + b x2. The two ends
// of the K range recover the classic problems: K = n is the forward product
// y = F x, K = 0 is the full inversion x = F^{-1} y.
//
// Two specializations fix F to the unnormalized Fourier matrix: recovering a
// K-sparse spectrum from K time samples, and reconstructing a bandlimited
// signal from as many samples as it has occupied bins. In both, the final
// solve touches only a K x K system; building that reduced system costs
// more (it eliminates through d) and counts as precomputation.
#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "lps/decomp.hpp"
#include "lps/error.hpp"
#include "lps/matrix.hpp"
#include "lps/structured.hpp"

namespace lps {

/// Which entries of x and of y are given, for an n x n system F x = y.
/// Both lists are strictly increasing positions in [0, n); they index
/// different vectors, so the same position may appear in both. The list
/// sizes must satisfy |known_x_idx| + |known_y_idx| = n, making the count
/// of unknowns equal the count of equations on both sides.
struct PartitionSpec {
  std::vector<std::size_t> known_x_idx;
  std::vector<std::size_t> known_y_idx;
  std::size_t n = 0;
};

namespace detail {

inline void require_index_list(const std::vector<std::size_t>& idx,
                               std::size_t n, const char* who,
                               const char* name) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= n) {
      throw DomainError(std::string(who) + ": " + name + " entry " +
                        std::to_string(idx[i]) + " is out of range for n = " +
                        std::to_string(n));
    }
    if (i > 0 && idx[i] <= idx[i - 1]) {
      throw DomainError(std::string(who) + ": " + name +
                        " must be strictly increasing");
    }
  }
}

inline void validate_spec(const PartitionSpec& spec, const char* who) {
  if (spec.n == 0) {
    throw DomainError(std::string(who) + ": system size n must be positive");
  }
  require_index_list(spec.known_x_idx, spec.n, who, "known_x_idx");
  require_index_list(spec.known_y_idx, spec.n, who, "known_y_idx");
  if (spec.known_x_idx.size() + spec.known_y_idx.size() != spec.n) {
    throw DomainError(
        std::string(who) + ": got " + std::to_string(spec.known_x_idx.size()) +
        " known x entries and " + std::to_string(spec.known_y_idx.size()) +
        " known y entries; together they must number n = " +
        std::to_string(spec.n));
  }
}

inline std::vector<std::size_t> complement_of(
    const std::vector<std::size_t>& idx, std::size_t n) {
  std::vector<std::size_t> out;
  out.reserve(n - idx.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (next < idx.size() && idx[next] == i) {
      ++next;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace detail

/// The four blocks of the reordered system together with the permutations
/// that produced them: row_perm[i] (col_perm[j]) is the original row
/// (column) of F sitting at reordered position i (j). a is K x K and d is
/// (n-K) x (n-K).
struct PartitionedSystem {
  Matrix a, b, c, d;
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;

  /// Rebuilds F in its original order; inverse of partition().
  Matrix reassemble() const {
    const std::size_t n = row_perm.size();
    const std::size_t k = a.rows();
    Matrix f(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Matrix& block =
            i < k ? (j < k ? a : b) : (j < k ? c : d);
        f(row_perm[i], col_perm[j]) =
            block(i < k ? i : i - k, j < k ? j : j - k);
      }
    }
    return f;
  }
};

/// Reorders and partitions F per the spec: rows with unknown y first, then
/// rows with known y; columns with known x first, then columns with
/// unknown x.
inline PartitionedSystem partition(const Matrix& f, const PartitionSpec& spec) {
  detail::validate_spec(spec, "partition");
  if (f.rows() != spec.n || f.cols() != spec.n) {
    throw ShapeError("partition: matrix is " + std::to_string(f.rows()) + "x" +
                     std::to_string(f.cols()) + ", spec expects " +
                     std::to_string(spec.n) + "x" + std::to_string(spec.n));
  }
  const std::size_t n = spec.n;
  const std::size_t k = spec.known_x_idx.size();
  const std::vector<std::size_t> rows_unknown_y =
      detail::complement_of(spec.known_y_idx, n);
  const std::vector<std::size_t> cols_unknown_x =
      detail::complement_of(spec.known_x_idx, n);

  PartitionedSystem part{Matrix(k, k),         Matrix(k, n - k),
                         Matrix(n - k, k),     Matrix(n - k, n - k),
                         std::vector<std::size_t>(), std::vector<std::size_t>()};
  part.row_perm = rows_unknown_y;
  part.row_perm.insert(part.row_perm.end(), spec.known_y_idx.begin(),
                       spec.known_y_idx.end());
  part.col_perm = spec.known_x_idx;
  part.col_perm.insert(part.col_perm.end(), cols_unknown_x.begin(),
                       cols_unknown_x.end());

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex v = f(part.row_perm[i], part.col_perm[j]);
      if (i < k) {
        if (j < k) {
          part.a(i, j) = v;
        } else {
          part.b(i, j - k) = v;
        }
      } else if (j < k) {
        part.c(i - k, j) = v;
      } else {
        part.d(i - k, j - k) = v;
      }
    }
  }
  return part;
}

/// Everything partition_solve determines: the unknown entries in the order
/// of their original positions, plus the fully assembled vectors.
struct PartitionSolution {
  Vector y_unknown;
  Vector x_unknown;
  Vector x_full;
  Vector y_full;
};

/// Solves the mixed system: given the known x entries (order of
/// known_x_idx) and known y entries (order of known_y_idx), eliminates
/// through the d block and returns the remaining entries of both vectors.
inline PartitionSolution partition_solve(const Matrix& f,
                                         const PartitionSpec& spec,
                                         const Vector& x_known,
                                         const Vector& y_known) {
  const PartitionedSystem part = partition(f, spec);
  const std::size_t n = spec.n;
  const std::size_t k = spec.known_x_idx.size();
  if (x_known.size() != k || y_known.size() != n - k) {
    throw ShapeError("partition_solve: expected " + std::to_string(k) +
                     " known x entries and " + std::to_string(n - k) +
                     " known y entries, got " + std::to_string(x_known.size()) +
                     " and " + std::to_string(y_known.size()));
  }

  Vector x2;
  try {
    x2 = solve_square(part.d, y_known - part.c * x_known);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "partition_solve: the d block (known-y rows by unknown-x columns) is "
        "singular; the unknown x entries are not determined by this split");
  }
  const Vector y1 = part.a * x_known + part.b * x2;

  PartitionSolution sol{y1, x2, Vector(n), Vector(n)};
  const std::vector<std::size_t> rows_unknown_y =
      detail::complement_of(spec.known_y_idx, n);
  const std::vector<std::size_t> cols_unknown_x =
      detail::complement_of(spec.known_x_idx, n);
  for (std::size_t i = 0; i < k; ++i) {
    sol.x_full[spec.known_x_idx[i]] = x_known[i];
    sol.y_full[rows_unknown_y[i]] = y1[i];
  }
  for (std::size_t i = 0; i < n - k; ++i) {
    sol.x_full[cols_unknown_x[i]] = x2[i];
    sol.y_full[spec.known_y_idx[i]] = y_known[i];
  }
  return sol;
}

/// Result of a sparse-spectrum recovery: the full spectrum and the shape of
/// the reduced system applied in the final step, which must be K x K.
struct SparseRecovery {
  Vector spectrum;
  std::size_t reduced_rows = 0;
  std::size_t reduced_cols = 0;
};

/// Recovers a K-sparse Fourier spectrum with known support from K time
/// samples at known positions. The zero bins are treated as known outputs,
/// the samples as known inputs; eliminating the unknown time entries leaves
/// the K x K reduced matrix whose product with the samples is the occupied
/// part of the spectrum. The recovered spectrum is verified by inverse
/// transform against the given samples.
inline SparseRecovery sparse_dft_recover(
    const Vector& samples, const std::vector<std::size_t>& sample_idx,
    const std::vector<std::size_t>& support_idx, std::size_t n) {
  const std::size_t k = support_idx.size();
  if (samples.size() != k || sample_idx.size() != k) {
    throw ShapeError(
        "sparse_dft_recover: samples, sample_idx, and support_idx must all "
        "have the same length K, got " +
        std::to_string(samples.size()) + ", " +
        std::to_string(sample_idx.size()) + ", " + std::to_string(k));
  }
  detail::require_index_list(support_idx, n, "sparse_dft_recover",
                             "support_idx");
  PartitionSpec spec;
  spec.n = n;
  spec.known_x_idx = sample_idx;
  spec.known_y_idx = detail::complement_of(support_idx, n);
  const PartitionedSystem part = partition(build_dft_matrix(n), spec);

  // Precomputation: eliminate the n - K unknown time entries.
  Matrix z;
  try {
    z = solve_square(part.d, part.c);
  } catch (const SingularMatrixError&) {
    throw RecoveryError(
        "sparse_dft_recover: this placement of samples leaves the reduced "
        "system singular; choose different sample positions");
  }
  const Matrix reduced = part.a - part.b * z;

  // Final step: one K x K product maps the samples to the occupied bins.
  const Vector occupied = reduced * samples;

  SparseRecovery rec{Vector(n), reduced.rows(), reduced.cols()};
  for (std::size_t i = 0; i < k; ++i) {
    rec.spectrum[support_idx[i]] = occupied[i];
  }

  // The inverse transform must reproduce the given samples.
  const Vector time = (1.0 / static_cast<double>(n)) *
                      (conjugate(build_dft_matrix(n)) * rec.spectrum);
  const double scale = std::max(1.0, max_abs(samples));
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(time[sample_idx[i]] - samples[i]) > 1e-8 * scale) {
      throw RecoveryError(
          "sparse_dft_recover: recovered spectrum fails to reproduce the "
          "samples; the instance is inconsistent with the stated support");
    }
  }
  return rec;
}

/// Reconstructs a length-n signal whose spectrum occupies only band_idx
/// from K = |band_idx| time samples: the unknown time entries follow from
/// forcing every off-band bin to zero. The result's off-band spectrum is
/// verified to vanish.
inline Vector bandlimited_reconstruct(const Vector& samples,
                                      const std::vector<std::size_t>& sample_idx,
                                      const std::vector<std::size_t>& band_idx,
                                      std::size_t n) {
  const std::size_t k = band_idx.size();
  if (samples.size() != k || sample_idx.size() != k) {
    throw ShapeError(
        "bandlimited_reconstruct: samples, sample_idx, and band_idx must all "
        "have the same length K, got " +
        std::to_string(samples.size()) + ", " +
        std::to_string(sample_idx.size()) + ", " + std::to_string(k));
  }
  detail::require_index_list(band_idx, n, "bandlimited_reconstruct",
                             "band_idx");
  PartitionSpec spec;
  spec.n = n;
  spec.known_x_idx = sample_idx;
  spec.known_y_idx = detail::complement_of(band_idx, n);

  PartitionSolution sol;
  try {
    sol = partition_solve(build_dft_matrix(n), spec, samples,
                          Vector(n - k));
  } catch (const SingularMatrixError&) {
    throw RecoveryError(
        "bandlimited_reconstruct: this placement of samples cannot pin down "
        "the remaining signal values; choose different sample positions");
  }

  const Vector spectrum = build_dft_matrix(n) * sol.x_full;
  const double scale = std::max(1.0, max_abs(spectrum));
  for (const std::size_t idx : spec.known_y_idx) {
    if (std::abs(spectrum[idx]) > 1e-8 * scale) {
      throw RecoveryError(
          "bandlimited_reconstruct: reconstructed signal leaks outside the "
          "stated band");
    }
  }
  return sol.x_full;
}

}  // namespace lps
