// Recovering a linear operator from input/output experiments.
//
// Stacking P experiment inputs as the columns of X and the matching
// outputs as the columns of B poses A X = B for the unknown operator A.
// Exactly N independent experiments determine A = B X^{-1}; more give a
// least-squares fit A = B X^+, fewer a minimum-Frobenius-norm completion
// through the same pseudoinverse. Linear regression is the single-output
// row of this picture. A projection helper snaps a fitted operator to the
// nearest circulant when that structure is known a priori.
#pragma once

#include <cstddef>
#include <string>

#include "lps/decomp.hpp"
#include "lps/error.hpp"
#include "lps/matrix.hpp"
#include "lps/pinv.hpp"
#include "lps/structured.hpp"

namespace lps {

/// Paired experiment data: column k of outputs is the response to column k
/// of inputs.
struct ExperimentSet {
  Matrix inputs;   // N x P
  Matrix outputs;  // M x P

  ExperimentSet(Matrix in, Matrix out)
      : inputs(std::move(in)), outputs(std::move(out)) {
    require_nonempty(inputs, "ExperimentSet inputs");
    require_nonempty(outputs, "ExperimentSet outputs");
    if (inputs.cols() != outputs.cols()) {
      throw ShapeError("ExperimentSet: " + std::to_string(inputs.cols()) +
                       " input columns but " + std::to_string(outputs.cols()) +
                       " output columns; experiments must pair up");
    }
  }

  std::size_t input_dim() const { return inputs.rows(); }
  std::size_t output_dim() const { return outputs.rows(); }
  std::size_t experiments() const { return inputs.cols(); }
};

/// Determines A exactly from N independent experiments: A = B X^{-1},
/// computed by solving X^T A^T = B^T.
inline Matrix fit_operator_exact(const ExperimentSet& e) {
  if (e.experiments() != e.input_dim()) {
    throw ShapeError(
        "fit_operator_exact: needs exactly as many experiments as input "
        "dimensions (got " +
        std::to_string(e.experiments()) + " for dimension " +
        std::to_string(e.input_dim()) + "); use fit_operator_ls");
  }
  try {
    return transpose(
        solve_square(transpose(e.inputs), transpose(e.outputs)));
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "fit_operator_exact: the experiment inputs are not independent; "
        "gather different inputs or use fit_operator_ls");
  }
}

/// A least-squares operator fit plus a flag recording whether the inputs
/// failed to have full rank, in which case the returned operator is the
/// minimum-Frobenius-norm minimizer among the equally good ones.
struct OperatorFit {
  Matrix a;
  bool rank_deficient = false;
};

/// Fits A = B X^+, minimizing the Frobenius norm of A X - B. With P = N
/// independent experiments this reproduces fit_operator_exact; with fewer
/// experiments than dimensions it returns the minimum-norm completion.
inline OperatorFit fit_operator_ls(const ExperimentSet& e) {
  OperatorFit fit{e.outputs * pinv(e.inputs),
                  rank(e.inputs) <
                      std::min(e.input_dim(), e.experiments())};
  return fit;
}

/// Scalar-response regression: experiment k contributes one equation
/// x_k^T w = y_k, solved by least squares through the pseudoinverse of the
/// stacked (P x N) data matrix.
inline Vector linear_regression(const ExperimentSet& e) {
  if (e.output_dim() != 1) {
    throw ShapeError("linear_regression: outputs must be a single row of "
                     "scalar responses, got " +
                     std::to_string(e.output_dim()) + " rows");
  }
  const Matrix stacked = transpose(e.inputs);
  Vector y(e.experiments());
  for (std::size_t k = 0; k < e.experiments(); ++k) y[k] = e.outputs(0, k);
  return pinv(stacked) * y;
}

/// Projects a square matrix onto the circulants by averaging each wrapped
/// diagonal; the Frobenius-nearest circulant, useful when the fitted
/// operator is known to represent a cyclic convolution.
inline Matrix project_circulant(const Matrix& a) {
  require_nonempty(a, "project_circulant");
  if (a.rows() != a.cols()) {
    throw ShapeError("project_circulant: matrix must be square, got " +
                     std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()));
  }
  const std::size_t n = a.rows();
  Vector h(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h[(i + n - j) % n] += a(i, j);
    }
  }
  h = (1.0 / static_cast<double>(n)) * h;
  return build_circulant(h);
}

}  // namespace lps
