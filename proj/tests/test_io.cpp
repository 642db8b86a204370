#include "lps/io.hpp"

#include <string>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace lps {
namespace {

using testing::make_rng;
using testing::random_complex_matrix;
using testing::random_complex_vector;
using testing::random_real_matrix;

// ---------------------------------------------------------------------------
// entry formatting and parsing

TEST(IoEntries, RealEntriesOmitTheImaginaryPart) {
  EXPECT_EQ(io::format_entry(Complex{1.5, 0.0}), "1.5");
  EXPECT_EQ(io::format_entry(Complex{-2.0, 0.0}), "-2");
  EXPECT_EQ(io::format_entry(Complex{0.0, 0.0}), "0");
}

TEST(IoEntries, ComplexEntriesUseSignedSuffixForm) {
  EXPECT_EQ(io::format_entry(Complex{1.0, 2.0}), "1+2i");
  EXPECT_EQ(io::format_entry(Complex{1.5, -3.25}), "1.5-3.25i");
  EXPECT_EQ(io::format_entry(Complex{0.0, 1.0}), "0+1i");
}

TEST(IoEntries, ParsesRealAndComplexLiterals) {
  EXPECT_EQ(io::parse_entry("42"), Complex(42.0));
  EXPECT_EQ(io::parse_entry("-1e-3"), Complex(-1e-3));
  EXPECT_EQ(io::parse_entry("1+2i"), Complex(1.0, 2.0));
  EXPECT_EQ(io::parse_entry("1.5-3.25i"), Complex(1.5, -3.25));
  EXPECT_EQ(io::parse_entry("2e-3+1e-4i"), Complex(2e-3, 1e-4));
  EXPECT_EQ(io::parse_entry("-1-2i"), Complex(-1.0, -2.0));
  EXPECT_EQ(io::parse_entry("  7  "), Complex(7.0));
}

TEST(IoEntries, RejectsMalformedLiterals) {
  EXPECT_THROW(io::parse_entry("foo"), ParseError);
  EXPECT_THROW(io::parse_entry(""), ParseError);
  EXPECT_THROW(io::parse_entry("i"), ParseError);
  EXPECT_THROW(io::parse_entry("2i"), ParseError);  // real part required
  EXPECT_THROW(io::parse_entry("1 + 2i"), ParseError);
  EXPECT_THROW(io::parse_entry("1+2j"), ParseError);
  EXPECT_THROW(io::parse_entry("1+2i3"), ParseError);
}

// ---------------------------------------------------------------------------
// CSV matrices and vectors

TEST(IoCsv, ParsesAPlainGrid) {
  const Matrix a = io::parse_matrix_csv(std::string("1,2\n3,4\n"));
  ASSERT_EQ(a.rows(), 2u);
  ASSERT_EQ(a.cols(), 2u);
  EXPECT_EQ(a(1, 0), Complex(3.0));
}

TEST(IoCsv, RoundTripsRandomMatricesExactly) {
  auto rng = make_rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const Matrix a = trial % 2 == 0 ? random_complex_matrix(rng, 3, 4)
                                    : random_real_matrix(rng, 2, 5);
    const Matrix back = io::parse_matrix_csv(io::matrix_to_csv(a));
    ASSERT_EQ(back.rows(), a.rows());
    ASSERT_EQ(back.cols(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        EXPECT_EQ(back(i, j), a(i, j)) << "trial " << trial;
      }
    }
  }
}

TEST(IoCsv, RoundTripsVectorsThroughASingleRow) {
  auto rng = make_rng(102);
  const Vector x = random_complex_vector(rng, 5);
  const std::string text = io::vector_to_csv(x);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  const Vector back = io::parse_vector_csv(text);
  ASSERT_EQ(back.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(back[i], x[i]);
}

TEST(IoCsv, AcceptsColumnVectorsOnInput) {
  const Vector x = io::parse_vector_csv(std::string("1\n2\n3\n"));
  ASSERT_EQ(x.size(), 3u);
  EXPECT_EQ(x[2], Complex(3.0));
}

TEST(IoCsv, RejectsTwoDimensionalVectorFiles) {
  EXPECT_THROW(io::parse_vector_csv(std::string("1,2\n3,4\n")), ParseError);
}

TEST(IoCsv, RaggedRowsReportTheLineNumber) {
  try {
    io::parse_matrix_csv(std::string("1,2\n3\n"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line, 2u);
  }
}

TEST(IoCsv, MalformedEntriesReportTheLineNumber) {
  try {
    io::parse_matrix_csv(std::string("1,2\nfoo,4\n"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line, 2u);
  }
}

TEST(IoCsv, EmptyAndBlankFilesThrow) {
  EXPECT_THROW(io::parse_matrix_csv(std::string("")), ParseError);
  EXPECT_THROW(io::parse_matrix_csv(std::string("\n\n")), ParseError);
}

TEST(IoCsv, TrailingCommaThrows) {
  EXPECT_THROW(io::parse_matrix_csv(std::string("1,2,\n")), ParseError);
}

TEST(IoCsv, MissingFileMentionsThePath) {
  try {
    io::read_matrix_file("/nonexistent/a.csv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_NE(std::string(err.what()).find("/nonexistent/a.csv"),
              std::string::npos);
  }
}

// ---------------------------------------------------------------------------
// traces

TEST(IoTrace, HeaderAndOneLinePerIteration) {
  std::vector<IrlsIterate> trace{{1, 2.0, 1.0, 0.5}, {2, 4.0, 1.0 / 3.0, 0.25}};
  std::ostringstream out;
  io::write_trace_csv(out, trace);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "iter,pk,q,error_norm");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
  EXPECT_NE(text.find("2,4,0.33333333333333331,0.25"), std::string::npos);
}

// ---------------------------------------------------------------------------
// JSON problems

TEST(IoJson, ParsesAPartitionProblem) {
  const std::string text = R"({
    "n": 2,
    "known_x_idx": [0],
    "known_y_idx": [1],
    "x_known": [1],
    "y_known": [[0, 1]]
  })";
  const io::PartitionProblem p = io::parse_partition_problem(text);
  EXPECT_EQ(p.spec.n, 2u);
  ASSERT_EQ(p.spec.known_x_idx.size(), 1u);
  EXPECT_EQ(p.spec.known_x_idx[0], 0u);
  EXPECT_EQ(p.x_known[0], Complex(1.0));
  EXPECT_EQ(p.y_known[0], Complex(0.0, 1.0));
}

TEST(IoJson, ParsesASparseProblem) {
  const std::string text = R"({
    "n": 8,
    "sample_idx": [0, 3],
    "support_idx": [1, 5],
    "samples": [[0.5, -0.25], 2]
  })";
  const io::SparseProblem p = io::parse_sparse_problem(text);
  EXPECT_EQ(p.n, 8u);
  EXPECT_EQ(p.support_idx[1], 5u);
  EXPECT_EQ(p.samples[0], Complex(0.5, -0.25));
  EXPECT_EQ(p.samples[1], Complex(2.0));
}

TEST(IoJson, MissingKeysAndBadShapesThrow) {
  EXPECT_THROW(io::parse_partition_problem("{"), ParseError);
  EXPECT_THROW(io::parse_partition_problem(R"({"n": 2})"), ParseError);
  EXPECT_THROW(io::parse_sparse_problem(
                   R"({"n": 4, "sample_idx": [0], "support_idx": [0],
                       "samples": [[1, 2, 3]]})"),
               ParseError);
  EXPECT_THROW(io::parse_sparse_problem(
                   R"({"n": 4, "sample_idx": [-1], "support_idx": [0],
                       "samples": [1]})"),
               ParseError);
}

TEST(IoJson, MatricesSerializeWithPairsForComplexEntries) {
  Matrix a(1, 2);
  a(0, 0) = Complex{1.0, 0.0};
  a(0, 1) = Complex{2.0, -3.0};
  const io::json j = io::matrix_to_json(a);
  EXPECT_EQ(j.dump(), "[[1.0,[2.0,-3.0]]]");
}

}  // namespace
}  // namespace lps
