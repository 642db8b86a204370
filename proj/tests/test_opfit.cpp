#include "lps/opfit.hpp"

#include <gtest/gtest.h>

#include "lps/pinv.hpp"
#include "test_support.hpp"

namespace lps {
namespace {

using testing::expect_matrix_near;
using testing::expect_vector_near;
using testing::make_rng;
using testing::planted_matrix;
using testing::random_complex_matrix;
using testing::random_real_matrix;
using testing::random_real_vector;

// ---------------------------------------------------------------------------
// exact fits

TEST(FitExact, IdentityInputsReturnTheOutputs) {
  auto rng = make_rng(91);
  const Matrix b = random_real_matrix(rng, 3, 3);
  expect_matrix_near(fit_operator_exact({Matrix::identity(3), b}), b, 1e-14);
}

TEST(FitExact, DiagonalInputsDivideColumnwise) {
  const ExperimentSet e{Matrix{{2.0, 0.0}, {0.0, 4.0}}, Matrix{{2.0, 8.0}}};
  expect_matrix_near(fit_operator_exact(e), Matrix{{1.0, 2.0}}, 1e-14);
}

TEST(FitExact, RoundTripsRandomPlantedOperators) {
  auto rng = make_rng(92);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const Matrix a = trial % 2 == 0 ? random_real_matrix(rng, n, n)
                                    : random_complex_matrix(rng, n, n);
    const Matrix x = planted_matrix(rng, n, n, n, trial % 2 == 1).a;
    const Matrix fitted = fit_operator_exact({x, a * x});
    expect_matrix_near(fitted, a, 1e-10);
  }
}

TEST(FitExact, RejectsWrongCountsAndDependentInputs) {
  auto rng = make_rng(93);
  const Matrix b = random_real_matrix(rng, 2, 3);
  EXPECT_THROW(fit_operator_exact({random_real_matrix(rng, 2, 3), b}),
               ShapeError);
  // Two identical experiments cannot pin down a 2x2 operator.
  const ExperimentSet dependent{Matrix{{1.0, 1.0}, {2.0, 2.0}},
                                Matrix{{1.0, 1.0}, {0.0, 0.0}}};
  EXPECT_THROW(fit_operator_exact(dependent), SingularMatrixError);
}

TEST(FitExact, MismatchedExperimentCountsThrowAtConstruction) {
  EXPECT_THROW(ExperimentSet(Matrix::identity(2), Matrix(2, 3)), ShapeError);
  EXPECT_THROW(ExperimentSet(Matrix(0, 0), Matrix(2, 2)), ShapeError);
}

// ---------------------------------------------------------------------------
// least-squares fits

TEST(FitLs, NoiselessOverdeterminedRecoveryIsExact) {
  auto rng = make_rng(94);
  const Matrix a = random_complex_matrix(rng, 3, 4);
  const Matrix x = planted_matrix(rng, 4, 7, 4, true).a;
  const OperatorFit fit = fit_operator_ls({x, a * x});
  EXPECT_FALSE(fit.rank_deficient);
  expect_matrix_near(fit.a, a, 1e-9);
}

TEST(FitLs, SquareCaseMatchesExactFit) {
  auto rng = make_rng(95);
  const Matrix x = planted_matrix(rng, 3, 3, 3, false).a;
  const Matrix b = random_real_matrix(rng, 2, 3);
  const ExperimentSet e{x, b};
  expect_matrix_near(fit_operator_ls(e).a, fit_operator_exact(e), 1e-10);
}

TEST(FitLs, TwoScalarExperimentsAverageByLeastSquares) {
  const OperatorFit fit =
      fit_operator_ls({Matrix{{1.0, 1.0}}, Matrix{{0.0, 2.0}}});
  EXPECT_FALSE(fit.rank_deficient);
  expect_matrix_near(fit.a, Matrix{{1.0}}, 1e-14);
}

TEST(FitLs, ResidualIsOrthogonalToTheData) {
  auto rng = make_rng(96);
  for (int trial = 0; trial < 6; ++trial) {
    const bool cplx = trial % 2 == 0;
    const Matrix x = planted_matrix(rng, 3, 6, 3, cplx).a;
    const Matrix b = cplx ? random_complex_matrix(rng, 2, 6)
                          : random_real_matrix(rng, 2, 6);
    const OperatorFit fit = fit_operator_ls({x, b});
    // Stationarity of the normal equations: (A X - B) X^H = 0.
    const Matrix residual = (fit.a * x - b) * adjoint(x);
    EXPECT_LE(max_abs(residual), 1e-9) << "trial " << trial;
  }
}

TEST(FitLs, RankDeficientInputsSetTheFlag) {
  const ExperimentSet e{Matrix{{1.0, 1.0}, {1.0, 1.0}},
                        Matrix{{2.0, 2.0}}};
  const OperatorFit fit = fit_operator_ls(e);
  EXPECT_TRUE(fit.rank_deficient);
  // The fit still minimizes the residual over the deficient data.
  EXPECT_LE(max_abs(fit.a * e.inputs - e.outputs), 1e-12);
}

TEST(FitLs, FewerExperimentsThanDimensionsStillReproduceThem) {
  auto rng = make_rng(97);
  const Matrix a = random_real_matrix(rng, 2, 4);
  const Matrix x = planted_matrix(rng, 4, 2, 2, false).a;
  const OperatorFit fit = fit_operator_ls({x, a * x});
  EXPECT_FALSE(fit.rank_deficient);
  // Underdetermined: the fit agrees on the observed experiments and is the
  // minimum-Frobenius-norm such operator.
  expect_matrix_near(fit.a * x, a * x, 1e-10);
  EXPECT_LE(frobenius_norm(fit.a), frobenius_norm(a) + 1e-12);
}

// ---------------------------------------------------------------------------
// regression

TEST(Regression, RecoversPlantedWeightsFromNoiselessData) {
  auto rng = make_rng(98);
  const Matrix inputs = random_real_matrix(rng, 2, 5);
  const Vector w{2.0, -1.0};
  Matrix outputs(1, 5);
  for (std::size_t k = 0; k < 5; ++k) {
    outputs(0, k) = w[0] * inputs(0, k) + w[1] * inputs(1, k);
  }
  expect_vector_near(linear_regression({inputs, outputs}), w, 1e-10);
}

TEST(Regression, SingleScalarExperiment) {
  expect_vector_near(
      linear_regression({Matrix{{2.0}}, Matrix{{6.0}}}), Vector{3.0}, 1e-14);
}

TEST(Regression, UnitVectorInputsReadOffTheOutputs) {
  const Matrix outputs{{4.0, -2.0, 7.0}};
  expect_vector_near(linear_regression({Matrix::identity(3), outputs}),
                     Vector{4.0, -2.0, 7.0}, 1e-14);
}

TEST(Regression, AgreesWithNormalEquationsOnTallData) {
  auto rng = make_rng(99);
  const Matrix inputs = planted_matrix(rng, 3, 8, 3, false).a;
  Matrix outputs(1, 8);
  for (std::size_t k = 0; k < 8; ++k) {
    outputs(0, k) = testing::random_real(rng);
  }
  const Vector via_regression = linear_regression({inputs, outputs});
  Vector y(8);
  for (std::size_t k = 0; k < 8; ++k) y[k] = outputs(0, k);
  const Vector via_normal = solve_normal_equations(transpose(inputs), y);
  expect_vector_near(via_regression, via_normal, 1e-10);
}

TEST(Regression, RejectsMultiRowOutputs) {
  EXPECT_THROW(linear_regression({Matrix::identity(2), Matrix(2, 2)}),
               ShapeError);
}

// ---------------------------------------------------------------------------
// circulant projection

TEST(CirculantProjection, FixesCirculantsExactly) {
  const Matrix c = build_circulant(Vector{1.0, 2.0, 3.0, 4.0});
  expect_matrix_near(project_circulant(c), c, 1e-14);
}

TEST(CirculantProjection, AveragesWrappedDiagonals) {
  const Matrix a{{1.0, 2.0}, {3.0, 5.0}};
  expect_matrix_near(project_circulant(a),
                     Matrix{{3.0, 2.5}, {2.5, 3.0}}, 1e-14);
}

TEST(CirculantProjection, ResidualSumsToZeroOnEveryDiagonal) {
  auto rng = make_rng(100);
  const std::size_t n = 5;
  const Matrix a = random_complex_matrix(rng, n, n);
  const Matrix residual = a - project_circulant(a);
  for (std::size_t d = 0; d < n; ++d) {
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      sum += residual(i, (i + n - d) % n);
    }
    EXPECT_LE(std::abs(sum), 1e-12) << "diagonal " << d;
  }
}

TEST(CirculantProjection, RejectsRectangular) {
  EXPECT_THROW(project_circulant(Matrix(2, 3)), ShapeError);
}

}  // namespace
}  // namespace lps
