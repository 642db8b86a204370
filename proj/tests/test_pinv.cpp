#include <gtest/gtest.h>

#include <cstddef>
#include <string>
#include <vector>

#include "lps/pinv.hpp"
#include "test_support.hpp"

namespace lps {
namespace {

using testing::expect_matrix_near;
using testing::expect_vector_near;
using testing::make_rng;
using testing::orthonormal_columns;
using testing::planted_matrix;
using testing::PlantedMatrix;
using testing::random_complex_matrix;
using testing::random_complex_vector;
using testing::random_real;
using testing::random_real_matrix;
using testing::random_real_vector;
using testing::Rng;

// ---------------------------------------------------------------------------
// Classification

TEST(Classify, SquareFullRankIsCase1a) {
  const CaseLabel c = classify_case(Matrix::identity(2), Vector{1.0, 2.0});
  EXPECT_EQ(c.code, "1a");
  EXPECT_EQ(c.r, 2u);
  EXPECT_TRUE(c.b_in_span);
}

TEST(Classify, SquareSingularSplitsOnSpan) {
  const Matrix a{{1.0, 0.0}, {0.0, 0.0}};
  EXPECT_EQ(classify_case(a, Vector{1.0, 0.0}).code, "1b");
  EXPECT_EQ(classify_case(a, Vector{0.0, 1.0}).code, "1c");
}

TEST(Classify, LengthMismatchThrows) {
  EXPECT_THROW(classify_case(Matrix::identity(2), Vector{1.0}), ShapeError);
}

// Builds a random instance of each of the ten classifications. The span
// membership is controlled through planted orthonormal factors, not through
// the library's own projector, so the construction is independent evidence.
struct CaseInstance {
  Matrix a;
  Vector b;
};

CaseInstance make_case(Rng& rng, const std::string& code, bool complex_entries) {
  std::size_t m = 0, n = 0, r = 0;
  const char family = code[0];
  const char sub = code[1];
  if (family == '1') {
    m = n = 5;
    r = sub == 'a' ? 5 : 3;
  } else if (family == '2') {
    m = 7;
    n = 4;
    r = (sub == 'a' || sub == 'b') ? 4 : 2;
  } else {
    m = 4;
    n = 7;
    r = sub == 'a' ? 4 : 2;
  }
  // Span membership by family: square and wide use {a, b} for "in span",
  // the tall family uses {a, c} because its full-rank shape splits into an
  // in-span and an off-span code.
  bool want_in_span = false;
  if (family == '2') {
    want_in_span = sub == 'a' || sub == 'c';
  } else {
    want_in_span = sub == 'a' || sub == 'b';
  }

  // Plant one extra spare direction beyond the column space when an
  // off-span component is needed.
  const std::size_t u_cols = want_in_span ? r : r + 1;
  const Matrix u = orthonormal_columns(rng, m, u_cols, complex_entries);
  const Matrix v = orthonormal_columns(rng, n, r, complex_entries);
  Matrix us(m, r);
  for (std::size_t j = 0; j < r; ++j) {
    const double s = random_real(rng, 0.5, 2.0);
    for (std::size_t i = 0; i < m; ++i) us(i, j) = u(i, j) * s;
  }
  CaseInstance inst;
  inst.a = us * adjoint(v);

  Vector b(m);
  for (std::size_t j = 0; j < r; ++j) {
    const Complex c = complex_entries
                          ? Complex{random_real(rng), random_real(rng)}
                          : Complex{random_real(rng)};
    const Vector uj = u.col(j);
    b = b + c * uj;
  }
  if (!want_in_span) {
    b = b + Complex{1.0} * u.col(r);
  }
  inst.b = b;
  return inst;
}

TEST(Classify, AllTenCasesAreRecovered) {
  const std::string codes[] = {"1a", "1b", "1c", "2a", "2b",
                               "2c", "2d", "3a", "3b", "3c"};
  auto rng = make_rng(41);
  for (const std::string& code : codes) {
    for (bool complex_entries : {false, true}) {
      for (int trial = 0; trial < 3; ++trial) {
        const CaseInstance inst = make_case(rng, code, complex_entries);
        const CaseLabel got = classify_case(inst.a, inst.b);
        EXPECT_EQ(got.code, code)
            << "complex=" << complex_entries << " trial=" << trial
            << " got " << describe_case(got);
      }
    }
  }
}

TEST(Classify, DescriptionNamesShapeAndSpan) {
  const CaseLabel c = classify_case(Matrix{{1.0, 0.0}, {0.0, 0.0}},
                                    Vector{0.0, 1.0});
  const std::string text = describe_case(c);
  EXPECT_NE(text.find("1c"), std::string::npos);
  EXPECT_NE(text.find("not in"), std::string::npos);
}

// ---------------------------------------------------------------------------
// pinv

TEST(Pinv, IdentityIsItsOwnPseudoinverse) {
  expect_matrix_near(pinv(Matrix::identity(3)), Matrix::identity(3), 1e-14);
}

TEST(Pinv, TallColumnHasHandComputedPseudoinverse) {
  // A = [3; 4]: A^T A = 25, so pinv = [3, 4] / 25 = [0.12, 0.16].
  const Matrix a{{3.0}, {4.0}};
  const Matrix expected{{0.12, 0.16}};
  expect_matrix_near(pinv(a), expected, 1e-14);
  // Independent route: the regularized limit at small delta.
  expect_matrix_near(limit_pinv(a, 1e-6), expected, 1e-6);
}

TEST(Pinv, ZeroMatrixMapsToTransposedZero) {
  const Matrix z(2, 3);
  const Matrix p = pinv(z);
  EXPECT_EQ(p.rows(), 3u);
  EXPECT_EQ(p.cols(), 2u);
  EXPECT_EQ(max_abs(p), 0.0);
}

TEST(Pinv, EmptyMatrixThrows) {
  EXPECT_THROW(pinv(Matrix(0, 3)), ShapeError);
}

TEST(Pinv, AllTenCasesSatisfyPenroseConditions) {
  const std::string codes[] = {"1a", "1b", "1c", "2a", "2b",
                               "2c", "2d", "3a", "3b", "3c"};
  auto rng = make_rng(42);
  for (const std::string& code : codes) {
    for (bool complex_entries : {false, true}) {
      const CaseInstance inst = make_case(rng, code, complex_entries);
      const PenroseReport rep = verify_penrose(inst.a, pinv(inst.a), 1e-8);
      EXPECT_TRUE(rep.pass)
          << code << " residuals: " << rep.residual_a_pinv_a << " "
          << rep.residual_pinv_a_pinv << " " << rep.residual_ap_hermitian
          << " " << rep.residual_pa_hermitian;
    }
  }
}

TEST(Pinv, PseudoinverseOfPseudoinverseReturns) {
  auto rng = make_rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    const PlantedMatrix p =
        planted_matrix(rng, 5, 4, 1 + trial % 4, trial % 2 == 1);
    const Matrix back = pinv(pinv(p.a));
    EXPECT_LE(max_abs(back - p.a), 1e-8);
  }
}

TEST(Pinv, CommutesWithAdjoint) {
  auto rng = make_rng(44);
  for (int trial = 0; trial < 6; ++trial) {
    const PlantedMatrix p =
        planted_matrix(rng, 6, 3, 1 + trial % 3, trial % 2 == 0);
    expect_matrix_near(pinv(adjoint(p.a)), adjoint(pinv(p.a)), 1e-10);
  }
}

TEST(Pinv, AnalyticalRoutesAgreeWithLimitAndSvd) {
  auto rng = make_rng(45);
  for (int trial = 0; trial < 8; ++trial) {
    const bool complex_entries = trial % 2 == 1;
    // Alternate tall full-column-rank and wide full-row-rank, planted with
    // singular values in [0.5, 2] so all three routes are well conditioned.
    const bool tall = trial % 4 < 2;
    const std::size_t m = tall ? 7 : 4;
    const std::size_t n = tall ? 4 : 7;
    const PlantedMatrix p =
        planted_matrix(rng, m, n, std::min(m, n), complex_entries);
    const Matrix analytic = pinv(p.a);
    expect_matrix_near(analytic, limit_pinv(p.a, 1e-6), 1e-5);
    expect_matrix_near(analytic, pinv_svd(p.a), 1e-9);
  }
}

TEST(Pinv, RangeAndNullProjectorsAnnihilate) {
  auto rng = make_rng(46);
  for (int trial = 0; trial < 6; ++trial) {
    const PlantedMatrix p =
        planted_matrix(rng, 5, 6, 2 + trial % 3, trial % 2 == 1);
    const Matrix ap = pinv(p.a);
    const Vector z = random_complex_vector(rng, 6);
    // (I - A pinv(A)) A z = 0 and A (I - pinv(A) A) z = 0.
    const Vector az = p.a * z;
    expect_vector_near(az - p.a * (ap * az), Vector(5), 1e-10);
    expect_vector_near(p.a * (z - ap * (p.a * z)), Vector(5), 1e-10);
  }
}

// ---------------------------------------------------------------------------
// limit_pinv

TEST(LimitPinv, IdentityStaysNearIdentity) {
  expect_matrix_near(limit_pinv(Matrix::identity(2), 1e-6),
                     Matrix::identity(2), 1e-6);
}

TEST(LimitPinv, ZeroMatrixGivesZero) {
  EXPECT_EQ(max_abs(limit_pinv(Matrix(2, 2), 0.1)), 0.0);
}

TEST(LimitPinv, RequiresPositiveDelta) {
  EXPECT_THROW(limit_pinv(Matrix::identity(2), 0.0), DomainError);
  EXPECT_THROW(limit_pinv(Matrix::identity(2), -1.0), DomainError);
}

TEST(LimitPinv, ConvergesToPinvAsDeltaShrinks) {
  // Stay in the regime where the O(delta^2) approximation error dominates
  // rounding; below that the direct solve cannot get closer anyway.
  auto rng = make_rng(47);
  const PlantedMatrix p = planted_matrix(rng, 5, 3, 2, true);
  const Matrix exact = pinv(p.a);
  double prev = max_abs(limit_pinv(p.a, 1e-1) - exact);
  for (double delta : {1e-2, 1e-3}) {
    const double cur = max_abs(limit_pinv(p.a, delta) - exact);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
  EXPECT_LE(prev, 1e-4);
}

// ---------------------------------------------------------------------------
// verify_penrose

TEST(Penrose, IdentityPairPassesWithZeroResiduals) {
  const PenroseReport rep =
      verify_penrose(Matrix::identity(3), Matrix::identity(3), 1e-12);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.residual_a_pinv_a, 0.0);
  EXPECT_EQ(rep.residual_pinv_a_pinv, 0.0);
  EXPECT_EQ(rep.residual_ap_hermitian, 0.0);
  EXPECT_EQ(rep.residual_pa_hermitian, 0.0);
}

TEST(Penrose, RandomTallPairPasses) {
  auto rng = make_rng(48);
  const Matrix a = random_real_matrix(rng, 4, 3);
  EXPECT_TRUE(verify_penrose(a, pinv(a), 1e-8).pass);
  EXPECT_TRUE(verify_penrose(a, limit_pinv(a, 1e-8), 1e-6).pass);
}

TEST(Penrose, TransposeOfNonOrthogonalMatrixFails) {
  const Matrix a{{1.0, 1.0}, {0.0, 1.0}};
  const Matrix candidate = transpose(a);
  // Direct evidence the first condition is violated: A A^T A differs from A.
  const Matrix lhs = a * candidate * a;
  EXPECT_GT(max_abs(lhs - a), 0.5);
  EXPECT_FALSE(verify_penrose(a, candidate, 1e-8).pass);
}

TEST(Penrose, ShapeMismatchThrows) {
  EXPECT_THROW(verify_penrose(Matrix(2, 3), Matrix(2, 3), 1e-8), ShapeError);
}

// ---------------------------------------------------------------------------
// Normal equations

TEST(NormalEquations, AveragesTwoInconsistentEquations) {
  const Matrix a{{1.0}, {1.0}};
  const Vector b{0.0, 2.0};
  const Vector x = solve_normal_equations(a, b);
  expect_vector_near(x, Vector{1.0}, 1e-14);
  const Vector residual = a * x - b;
  expect_vector_near(residual, Vector{1.0, -1.0}, 1e-14);
  // The residual is orthogonal to the column space.
  expect_vector_near(adjoint(a) * residual, Vector(1), 1e-14);
}

TEST(NormalEquations, IdentityReturnsRhs) {
  expect_vector_near(solve_normal_equations(Matrix::identity(2), Vector{5.0, 7.0}),
                     Vector{5.0, 7.0}, 0.0);
}

TEST(NormalEquations, UnsatisfiableRowLandsInResidual) {
  const Matrix a{{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}};
  const Vector b{1.0, 2.0, 9.0};
  const Vector x = solve_normal_equations(a, b);
  expect_vector_near(x, Vector{1.0, 2.0}, 1e-14);
  expect_vector_near(a * x - b, Vector{0.0, 0.0, -9.0}, 1e-14);
}

TEST(NormalEquations, RankDeficientAdvisesPinv) {
  const Matrix a{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  try {
    solve_normal_equations(a, Vector{1.0, 1.0, 1.0});
    FAIL() << "expected SingularMatrixError";
  } catch (const SingularMatrixError& e) {
    EXPECT_NE(std::string(e.what()).find("pinv"), std::string::npos);
  }
}

TEST(NormalEquations, MatchesPinvOnFullColumnRank) {
  auto rng = make_rng(49);
  const Matrix a = random_complex_matrix(rng, 6, 3);
  const Vector b = random_complex_vector(rng, 6);
  expect_vector_near(solve_normal_equations(a, b), pinv(a) * b, 1e-10);
}

// ---------------------------------------------------------------------------
// Weighted variants

TEST(WeightedOver, IdentityWeightsReduceToPinv) {
  auto rng = make_rng(50);
  const Matrix a = random_real_matrix(rng, 5, 3);
  expect_matrix_near(weighted_pinv_over(a, WeightMatrix::identity(5)), pinv(a),
                     1e-10);
}

TEST(WeightedOver, HeavierRowPullsSolution) {
  // Equations x = 0 and x = 2 with weights 1 and 2: minimize
  // 1^2 (x-0)^2 + 2^2 (x-2)^2, so x = (0 + 4*2) / (1 + 4) = 1.6.
  const Matrix a{{1.0}, {1.0}};
  const Matrix wp = weighted_pinv_over(a, WeightMatrix({1.0, 2.0}));
  const Vector x = wp * Vector{0.0, 2.0};
  expect_vector_near(x, Vector{1.6}, 1e-14);
}

TEST(WeightedOver, ZeroWeightDropsitsEquation) {
  const Matrix a{{1.0}, {1.0}};
  const Matrix wp = weighted_pinv_over(a, WeightMatrix({1.0, 0.0}));
  const Vector x = wp * Vector{0.0, 2.0};
  expect_vector_near(x, Vector{0.0}, 1e-14);
}

TEST(WeightedOver, AllZeroWeightsAreSingular) {
  const Matrix a{{1.0}, {1.0}};
  EXPECT_THROW(weighted_pinv_over(a, WeightMatrix({0.0, 0.0})),
               SingularMatrixError);
}

TEST(WeightedOver, MinimizesWeightedResidualAgainstPerturbations) {
  auto rng = make_rng(51);
  const Matrix a = random_real_matrix(rng, 6, 3);
  const Vector b = random_real_vector(rng, 6);
  const WeightMatrix w({0.5, 1.0, 2.0, 0.1, 3.0, 1.5});
  const Vector x = weighted_pinv_over(a, w) * b;
  const auto objective = [&](const Vector& xc) {
    const Vector e = a * xc - b;
    double acc = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      acc += w.diag()[i] * w.diag()[i] * std::norm(e[i]);
    }
    return acc;
  };
  const double best = objective(x);
  for (int trial = 0; trial < 40; ++trial) {
    Vector xp = x;
    for (std::size_t i = 0; i < xp.size(); ++i) {
      xp[i] += random_real(rng, -0.1, 0.1);
    }
    EXPECT_GE(objective(xp), best - 1e-12);
  }
}

TEST(WeightedUnder, IdentityWeightsReduceToPinv) {
  auto rng = make_rng(52);
  const Matrix a = random_real_matrix(rng, 3, 5);
  expect_matrix_near(weighted_pinv_under(a, WeightMatrix::identity(5)), pinv(a),
                     1e-10);
  const Matrix sq = random_real_matrix(rng, 4, 4);
  expect_matrix_near(weighted_pinv_under(sq, WeightMatrix::identity(4)),
                     inverse(sq), 1e-9);
}

TEST(WeightedUnder, HandComputedTwoUnknownCase) {
  const Matrix a{{1.0, 1.0}};
  const Vector b{2.0};
  expect_vector_near(weighted_pinv_under(a, WeightMatrix::identity(2)) * b,
                     Vector{1.0, 1.0}, 1e-14);
  // Weighting x2 twice as heavily pushes the mass onto x1:
  // minimize x1^2 + 4 x2^2 subject to x1 + x2 = 2 gives (1.6, 0.4).
  const Vector x = weighted_pinv_under(a, WeightMatrix({1.0, 2.0})) * b;
  expect_vector_near(x, Vector{1.6, 0.4}, 1e-14);
  expect_vector_near(a * x, b, 1e-14);
}

TEST(WeightedUnder, ZeroWeightRejected) {
  EXPECT_THROW(weighted_pinv_under(Matrix{{1.0, 1.0}}, WeightMatrix({1.0, 0.0})),
               DomainError);
}

TEST(WeightedUnder, NegativeWeightRejectedAtConstruction) {
  EXPECT_THROW(WeightMatrix({1.0, -2.0}), DomainError);
}

TEST(WeightedUnder, MinimizesWeightedNormOverSolutionFamily) {
  auto rng = make_rng(53);
  const Matrix a = random_real_matrix(rng, 2, 5);
  const Vector b = random_real_vector(rng, 2);
  const WeightMatrix w({1.0, 0.5, 2.0, 1.5, 3.0});
  const Vector x = weighted_pinv_under(a, w) * b;
  expect_vector_near(a * x, b, 1e-12);
  const auto wnorm = [&](const Vector& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      acc += w.diag()[i] * w.diag()[i] * std::norm(v[i]);
    }
    return acc;
  };
  // Perturbing within the null space keeps Ax = b but must not reduce ||Wx||.
  const double best = wnorm(x);
  const Matrix ap = pinv(a);
  for (int trial = 0; trial < 40; ++trial) {
    const Vector y = random_real_vector(rng, 5);
    const Vector xp = x + (y - ap * (a * y));
    EXPECT_LE(two_norm(a * xp - b), 1e-10);
    EXPECT_GE(wnorm(xp), best - 1e-10);
  }
}

// ---------------------------------------------------------------------------
// General solution family

TEST(GeneralSolution, ZeroHomogeneousTermGivesMinimumNorm) {
  auto rng = make_rng(54);
  const Matrix a = random_real_matrix(rng, 3, 5);
  const Vector b = random_real_vector(rng, 3);
  expect_vector_near(general_solution(a, b, Vector(5)), pinv(a) * b, 0.0);
}

TEST(GeneralSolution, HandComputedUnderdeterminedFamily) {
  const Matrix a{{1.0, 1.0}};
  const Vector x = general_solution(a, Vector{2.0}, Vector{1.0, -1.0});
  // pinv(A) A = ones(2,2)/2, so the null projector maps (1,-1) to itself.
  expect_vector_near(x, Vector{2.0, 0.0}, 1e-14);
  expect_vector_near(a * x, Vector{2.0}, 1e-14);
}

TEST(GeneralSolution, SquareNonsingularIgnoresY) {
  auto rng = make_rng(55);
  const Matrix a = random_real_matrix(rng, 4, 4);
  const Vector b = random_real_vector(rng, 4);
  const Vector y = random_real_vector(rng, 4);
  expect_vector_near(general_solution(a, b, y), solve_square(a, b), 1e-10);
}

TEST(GeneralSolution, FamilySharesEquationErrorAndMinimumNorm) {
  auto rng = make_rng(56);
  const PlantedMatrix p = planted_matrix(rng, 4, 6, 3, true);
  const Vector b = random_complex_vector(rng, 4);
  const Vector x0 = general_solution(p.a, b, Vector(6));
  for (int trial = 0; trial < 12; ++trial) {
    const Vector y = random_complex_vector(rng, 6);
    const Vector xy = general_solution(p.a, b, y);
    EXPECT_LE(two_norm(p.a * xy - p.a * x0), 1e-10);
    EXPECT_LE(two_norm(x0), two_norm(xy) + 1e-12);
  }
}

TEST(GeneralSolution, ShapeMismatchThrows) {
  EXPECT_THROW(general_solution(Matrix(2, 3), Vector(2), Vector(2)), ShapeError);
  EXPECT_THROW(general_solution(Matrix(2, 3), Vector(3), Vector(3)), ShapeError);
}

}  // namespace
}  // namespace lps
