// lpsolve: batch front end for the lps library.
//
// One subcommand per capability, CSV/JSON files in, CSV or JSON out.
// Exit codes: 0 success, 1 a mathematical precondition failed (singular
// matrix, not a frame, recovery failure, ...), 2 usage or parse errors.
// Output depends only on the inputs, so identical invocations are
// byte-identical.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lps/decomp.hpp"
#include "lps/error.hpp"
#include "lps/frames.hpp"
#include "lps/io.hpp"
#include "lps/irls.hpp"
#include "lps/matrix.hpp"
#include "lps/opfit.hpp"
#include "lps/partition.hpp"
#include "lps/pinv.hpp"

namespace {

using lps::Matrix;
using lps::Vector;
using json = lps::io::json;

struct Options {
  std::string path_a;
  std::string path_b;
  std::optional<double> p;
  std::optional<double> homotopy;
  std::optional<int> iters;
  std::optional<double> tol;
  std::optional<double> delta;
  std::string weights;
  std::string mode;
  std::string out;
  std::string format = "csv";
  std::string trace;
};

// Tolerance precedence: --tol flag, then LPSOLVE_TOL, then fallback.
double resolve_tol(const Options& opts, double fallback) {
  if (opts.tol) return *opts.tol;
  if (const char* env = std::getenv("LPSOLVE_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      throw lps::ParseError(std::string("LPSOLVE_TOL is not a number: '") +
                            env + "'");
    }
    return v;
  }
  return fallback;
}

void write_payload(const Options& opts, const std::string& payload) {
  if (opts.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(opts.out);
  if (!f) throw lps::ParseError("cannot write '" + opts.out + "'");
  f << payload;
}

void emit(const Options& opts, const std::string& csv_text, json result,
          json meta = json::object()) {
  if (opts.format == "json") {
    json doc;
    doc["result"] = std::move(result);
    doc["meta"] = std::move(meta);
    write_payload(opts, doc.dump(2) + "\n");
  } else {
    write_payload(opts, csv_text);
  }
}

void emit_matrix(const Options& opts, const Matrix& a,
                 json meta = json::object()) {
  emit(opts, lps::io::matrix_to_csv(a), lps::io::matrix_to_json(a),
       std::move(meta));
}

void emit_vector(const Options& opts, const Vector& x,
                 json meta = json::object()) {
  emit(opts, lps::io::vector_to_csv(x), lps::io::vector_to_json(x),
       std::move(meta));
}

json flat(const Vector& x) { return lps::io::vector_to_json(x)[0]; }

lps::IrlsOptions irls_options(const Options& opts) {
  lps::IrlsOptions o;
  o.p = opts.p;
  o.homotopy_factor = opts.homotopy;
  o.max_iters = opts.iters;
  return o;
}

void write_trace(const Options& opts, const lps::IrlsResult& r) {
  if (opts.trace.empty()) return;
  std::ofstream f(opts.trace);
  if (!f) throw lps::ParseError("cannot write '" + opts.trace + "'");
  lps::io::write_trace_csv(f, r.trace);
}

json irls_meta(const lps::IrlsResult& r) {
  return json{{"iterations", r.iterations}, {"converged", r.converged}};
}

// ---------------------------------------------------------------------------
// subcommand bodies

void run_pinv(const Options& opts) {
  const Matrix a = lps::io::read_matrix_file(opts.path_a);
  const Matrix p = opts.delta ? lps::limit_pinv(a, *opts.delta)
                              : lps::pinv(a, resolve_tol(opts, -1.0));
  emit_matrix(opts, p);
}

void run_classify(const Options& opts) {
  const Matrix a = lps::io::read_matrix_file(opts.path_a);
  const Vector b = lps::io::read_vector_file(opts.path_b);
  const lps::CaseLabel c =
      lps::classify_case(a, b, resolve_tol(opts, 1e-10));
  emit(opts, c.code + "\n", c.code,
       json{{"m", c.m},
            {"n", c.n},
            {"rank", c.r},
            {"b_in_span", c.b_in_span},
            {"description", lps::describe_case(c)}});
}

void run_solve(const Options& opts) {
  const Matrix a = lps::io::read_matrix_file(opts.path_a);
  const Vector b = lps::io::read_vector_file(opts.path_b);
  Vector x;
  if (opts.weights.empty()) {
    x = lps::pinv(a, resolve_tol(opts, -1.0)) * b;
  } else {
    const Vector wv = lps::io::read_vector_file(opts.weights);
    std::vector<double> diag(wv.size());
    for (std::size_t i = 0; i < wv.size(); ++i) {
      if (wv[i].imag() != 0.0) {
        throw lps::DomainError("solve: weights must be real");
      }
      diag[i] = wv[i].real();
    }
    const lps::WeightMatrix w{std::move(diag)};
    const bool over =
        opts.mode.empty() ? a.rows() >= a.cols() : opts.mode == "over";
    x = (over ? lps::weighted_pinv_over(a, w)
              : lps::weighted_pinv_under(a, w)) *
        b;
  }
  emit_vector(opts, x);
}

void run_irls(const Options& opts) {
  const Matrix a = lps::io::read_matrix_file(opts.path_a);
  const Vector b = lps::io::read_vector_file(opts.path_b);
  const bool over =
      opts.mode.empty() ? a.rows() >= a.cols() : opts.mode == "over";
  const lps::IrlsResult r = over ? lps::irls_over(a, b, irls_options(opts))
                                 : lps::irls_under(a, b, irls_options(opts));
  write_trace(opts, r);
  emit_vector(opts, r.x, irls_meta(r));
}

void run_minimax(const Options& opts) {
  const Matrix a = lps::io::read_matrix_file(opts.path_a);
  const Vector b = lps::io::read_vector_file(opts.path_b);
  const lps::IrlsResult r = lps::minimax_solve(a, b, irls_options(opts));
  const lps::MinimaxReport rep =
      lps::check_minimax_characterization(a, b, r.x,
                                          resolve_tol(opts, 1e-3));
  write_trace(opts, r);
  json meta = irls_meta(r);
  meta["max_error"] = rep.max_error;
  meta["equal_magnitude_errors"] = rep.num_max_magnitude_errors;
  meta["satisfies_characterization"] = rep.satisfies_characterization;
  emit_vector(opts, r.x, std::move(meta));
}

void run_sparse(const Options& opts) {
  const Matrix a = lps::io::read_matrix_file(opts.path_a);
  const Vector b = lps::io::read_vector_file(opts.path_b);
  const lps::IrlsResult r = lps::sparse_solve(a, b, irls_options(opts));
  write_trace(opts, r);
  json meta = irls_meta(r);
  meta["l1_norm"] = lps::lp_norm(r.x, 1.0);
  emit_vector(opts, r.x, std::move(meta));
}

void run_frame(const Options& opts) {
  const lps::FrameSystem f(lps::io::read_matrix_file(opts.path_a));
  const lps::FrameReport rep =
      lps::frame_bounds(f, resolve_tol(opts, 1e-6));
  std::string csv = "lower,upper,redundancy,tight,is_orthobasis\n";
  csv += lps::io::format_real(rep.lower) + "," +
         lps::io::format_real(rep.upper) + "," +
         lps::io::format_real(rep.redundancy) + "," +
         (rep.tight ? "1" : "0") + "," + (rep.is_orthobasis ? "1" : "0") +
         "\n";
  emit(opts, csv,
       json{{"lower", rep.lower},
            {"upper", rep.upper},
            {"redundancy", rep.redundancy},
            {"tight", rep.tight},
            {"is_orthobasis", rep.is_orthobasis}});
}

void run_partition(const Options& opts) {
  const lps::io::PartitionProblem p =
      lps::io::parse_partition_problem(lps::io::read_text_file(opts.path_a));
  const Matrix f = lps::io::read_matrix_file(opts.path_b);
  const lps::PartitionSolution sol =
      lps::partition_solve(f, p.spec, p.x_known, p.y_known);
  // CSV: first row the full x, second row the full y.
  const std::string csv =
      lps::io::vector_to_csv(sol.x_full) + lps::io::vector_to_csv(sol.y_full);
  emit(opts, csv,
       json{{"x_full", flat(sol.x_full)},
            {"y_full", flat(sol.y_full)},
            {"x_unknown", flat(sol.x_unknown)},
            {"y_unknown", flat(sol.y_unknown)}});
}

void run_sparse_dft(const Options& opts) {
  const lps::io::SparseProblem p =
      lps::io::parse_sparse_problem(lps::io::read_text_file(opts.path_a));
  const lps::SparseRecovery rec =
      lps::sparse_dft_recover(p.samples, p.sample_idx, p.support_idx, p.n);
  emit_vector(opts, rec.spectrum,
              json{{"reduced_rows", rec.reduced_rows},
                   {"reduced_cols", rec.reduced_cols}});
}

void run_sample_recover(const Options& opts) {
  // Same file shape as sparse-dft; support_idx names the occupied bins.
  const lps::io::SparseProblem p =
      lps::io::parse_sparse_problem(lps::io::read_text_file(opts.path_a));
  const Vector x = lps::bandlimited_reconstruct(p.samples, p.sample_idx,
                                                p.support_idx, p.n);
  emit_vector(opts, x);
}

void run_fit_op(const Options& opts) {
  const Matrix inputs = lps::io::read_matrix_file(opts.path_a);
  const Matrix outputs = lps::io::read_matrix_file(opts.path_b);
  const lps::OperatorFit fit = lps::fit_operator_ls({inputs, outputs});
  emit_matrix(opts, fit.a, json{{"rank_deficient", fit.rank_deficient}});
}

void run_regress(const Options& opts) {
  const Matrix inputs = lps::io::read_matrix_file(opts.path_a);
  const Vector y = lps::io::read_vector_file(opts.path_b);
  Matrix outputs(1, y.size());
  for (std::size_t k = 0; k < y.size(); ++k) outputs(0, k) = y[k];
  emit_vector(opts, lps::linear_regression({inputs, outputs}));
}

void run_penrose_check(const Options& opts) {
  const Matrix a = lps::io::read_matrix_file(opts.path_a);
  const Matrix cand = lps::io::read_matrix_file(opts.path_b);
  const lps::PenroseReport rep =
      lps::verify_penrose(a, cand, resolve_tol(opts, 1e-8));
  std::string csv = "a_pinv_a,pinv_a_pinv,ap_hermitian,pa_hermitian,pass\n";
  csv += lps::io::format_real(rep.residual_a_pinv_a) + "," +
         lps::io::format_real(rep.residual_pinv_a_pinv) + "," +
         lps::io::format_real(rep.residual_ap_hermitian) + "," +
         lps::io::format_real(rep.residual_pa_hermitian) + "," +
         (rep.pass ? "1" : "0") + "\n";
  emit(opts, csv,
       json{{"a_pinv_a", rep.residual_a_pinv_a},
            {"pinv_a_pinv", rep.residual_pinv_a_pinv},
            {"ap_hermitian", rep.residual_ap_hermitian},
            {"pa_hermitian", rep.residual_pa_hermitian},
            {"pass", rep.pass}});
}

}  // namespace

int main(int argc, char** argv) {
  Options opts;
  CLI::App app{"Linear system tools: pseudoinverses, lp solvers, frames, "
               "partitioned systems, operator fitting"};
  app.require_subcommand(1);

  app.add_option("--p", opts.p, "Target exponent for lp solvers");
  app.add_option("--iters", opts.iters, "Iteration count (KK)");
  app.add_option("--homotopy", opts.homotopy,
                 "Per-iteration exponent factor (K)");
  app.add_option("--tol", opts.tol,
                 "Tolerance (rank / tightness / characterization, by "
                 "command); LPSOLVE_TOL is the fallback");
  app.add_option("--delta", opts.delta,
                 "Regularization for the limit form of pinv");
  app.add_option("--weights", opts.weights,
                 "CSV vector of diagonal weights (solve)");
  app.add_option("--mode", opts.mode,
                 "over (equation error) or under (minimum norm)")
      ->check(CLI::IsMember({"over", "under"}));
  app.add_option("--out", opts.out, "Write the result here instead of stdout");
  app.add_option("--format", opts.format, "csv (default) or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--trace", opts.trace,
                 "Write per-iteration convergence CSV here (lp solvers)");

  struct Cmd {
    const char* name;
    const char* help;
    int files;
    const char* file_help[2];
    void (*run)(const Options&);
  };
  const std::vector<Cmd> cmds{
      {"pinv", "Moore-Penrose pseudoinverse of a matrix", 1,
       {"matrix CSV"}, run_pinv},
      {"classify", "Shape/rank/span case of a system", 2,
       {"matrix CSV", "right-hand-side CSV"}, run_classify},
      {"solve", "Pseudoinverse (optionally weighted) solution of A x = b", 2,
       {"matrix CSV", "right-hand-side CSV"}, run_solve},
      {"irls", "Iteratively reweighted lp solution", 2,
       {"matrix CSV", "right-hand-side CSV"}, run_irls},
      {"minimax", "Minimum maximum-error solution (large-p preset)", 2,
       {"matrix CSV", "right-hand-side CSV"}, run_minimax},
      {"sparse", "Sparsity-promoting minimum-norm solution (p = 1.1)", 2,
       {"matrix CSV", "right-hand-side CSV"}, run_sparse},
      {"frame", "Frame bounds and classification of column vectors", 1,
       {"synthesis matrix CSV"}, run_frame},
      {"partition", "Mixed known/unknown solve of F x = y", 2,
       {"problem JSON", "matrix CSV"}, run_partition},
      {"sparse-dft", "Sparse-spectrum recovery from time samples", 1,
       {"problem JSON"}, run_sparse_dft},
      {"sample-recover", "Bandlimited signal from per-bin samples", 1,
       {"problem JSON"}, run_sample_recover},
      {"fit-op", "Operator from input/output experiment pairs", 2,
       {"inputs CSV", "outputs CSV"}, run_fit_op},
      {"regress", "Regression weights from scalar-response experiments", 2,
       {"inputs CSV", "responses CSV"}, run_regress},
      {"penrose-check", "Verify a candidate pseudoinverse", 2,
       {"matrix CSV", "candidate CSV"}, run_penrose_check},
  };

  for (const Cmd& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->fallthrough();
    sub->add_option("file1", opts.path_a, cmd.file_help[0])->required();
    if (cmd.files > 1) {
      sub->add_option("file2", opts.path_b, cmd.file_help[1])->required();
    }
    sub->callback([&opts, run = cmd.run] { run(opts); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const lps::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lps::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
