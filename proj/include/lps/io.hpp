// File formats for the command-line tools.
//
// Matrices travel as CSV: one row per line, entries comma separated, complex
// values written as a+bi / a-bi with no interior spaces and a bare real when
// the imaginary part is zero. Output uses 17 significant digits so emit and
// re-parse is lossless. Vectors are a single CSV row (a single column is
// accepted on input). Partition and sparse-recovery problems travel as JSON
// objects; complex values there are two-element [re, im] arrays. All parse
// failures raise ParseError carrying the 1-based line number where known.
#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "lps/error.hpp"
#include "lps/irls.hpp"
#include "lps/matrix.hpp"
#include "lps/partition.hpp"

namespace lps {
namespace io {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_entry(Complex v) {
  if (v.imag() == 0.0) return format_real(v.real());
  if (v.imag() < 0.0) {
    return format_real(v.real()) + "-" + format_real(-v.imag()) + "i";
  }
  return format_real(v.real()) + "+" + format_real(v.imag()) + "i";
}

namespace detail {

inline double parse_real_strict(const std::string& text, std::size_t line) {
  if (text.empty()) {
    throw ParseError("empty numeric field", line);
  }
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + text.size()) {
    throw ParseError("malformed number '" + text + "'", line);
  }
  return v;
}

// Index of the sign splitting real from imaginary part in a complex
// literal: the last + or - that is neither leading nor an exponent sign.
inline std::size_t imaginary_split(const std::string& body, std::size_t line) {
  for (std::size_t i = body.size(); i-- > 1;) {
    const char c = body[i];
    if (c != '+' && c != '-') continue;
    const char prev = body[i - 1];
    if (prev == 'e' || prev == 'E') continue;
    return i;
  }
  throw ParseError("complex literal '" + body + "i' lacks a real part; " +
                       "write it as a+bi",
                   line);
}

}  // namespace detail

inline Complex parse_entry(std::string text, std::size_t line = 0) {
  // Surrounding whitespace is tolerated; interior whitespace is not.
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) throw ParseError("empty field", line);
  const auto last = text.find_last_not_of(" \t");
  text = text.substr(first, last - first + 1);

  if (text.back() != 'i') {
    return Complex{detail::parse_real_strict(text, line), 0.0};
  }
  const std::string body = text.substr(0, text.size() - 1);
  if (body.empty()) throw ParseError("lone 'i' is not a number", line);
  const std::size_t split = detail::imaginary_split(body, line);
  const double re = detail::parse_real_strict(body.substr(0, split), line);
  const std::string imag_text =
      body[split] == '+' ? body.substr(split + 1) : body.substr(split);
  const double im = detail::parse_real_strict(imag_text, line);
  return Complex{re, im};
}

inline void write_matrix_csv(std::ostream& out, const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_entry(a(i, j));
    }
    out << '\n';
  }
}

inline void write_vector_csv(std::ostream& out, const Vector& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out << ',';
    out << format_entry(x[i]);
  }
  out << '\n';
}

inline std::string matrix_to_csv(const Matrix& a) {
  std::ostringstream out;
  write_matrix_csv(out, a);
  return out.str();
}

inline std::string vector_to_csv(const Vector& x) {
  std::ostringstream out;
  write_vector_csv(out, x);
  return out.str();
}

inline Matrix parse_matrix_csv(std::istream& in) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  std::size_t line_number = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<Complex> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      row.push_back(parse_entry(field, line_number));
    }
    if (line.back() == ',') {
      throw ParseError("trailing comma", line_number);
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError("row has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(width),
                       line_number);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError("no rows of data", line_number);
  }
  Matrix a(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) a(i, j) = rows[i][j];
  }
  return a;
}

inline Matrix parse_matrix_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_csv(in);
}

/// A vector file is a single row or a single column.
inline Vector parse_vector_csv(std::istream& in) {
  const Matrix a = parse_matrix_csv(in);
  if (a.rows() != 1 && a.cols() != 1) {
    throw ParseError("vector file must be a single row or column, got " +
                     std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()));
  }
  Vector x(a.rows() == 1 ? a.cols() : a.rows());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = a.rows() == 1 ? a(0, i) : a(i, 0);
  }
  return x;
}

inline Vector parse_vector_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_vector_csv(in);
}

inline Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return parse_matrix_csv(in);
  } catch (const ParseError& err) {
    throw ParseError(path + ": " + err.what(), err.line);
  }
}

inline Vector read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return parse_vector_csv(in);
  } catch (const ParseError& err) {
    throw ParseError(path + ": " + err.what(), err.line);
  }
}

/// Convergence trace as CSV with a fixed header, one line per iteration.
inline void write_trace_csv(std::ostream& out,
                            const std::vector<IrlsIterate>& trace) {
  out << "iter,pk,q,error_norm\n";
  for (const IrlsIterate& it : trace) {
    out << it.iter << ',' << format_real(it.pk) << ',' << format_real(it.q)
        << ',' << format_real(it.error_norm) << '\n';
  }
}

// ---------------------------------------------------------------------------
// JSON problem files

using json = nlohmann::ordered_json;

namespace detail {

inline json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string(what) + ": " + err.what());
  }
}

inline const json& require_key(const json& doc, const char* key,
                               const char* what) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParseError(std::string(what) + ": missing key '" + key + "'");
  }
  return *it;
}

inline std::vector<std::size_t> index_list(const json& node, const char* key,
                                           const char* what) {
  if (!node.is_array()) {
    throw ParseError(std::string(what) + ": '" + key +
                     "' must be an array of indices");
  }
  std::vector<std::size_t> out;
  for (const json& v : node) {
    if (!v.is_number_unsigned()) {
      throw ParseError(std::string(what) + ": '" + key +
                       "' entries must be nonnegative integers");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

inline Complex complex_value(const json& v, const char* what) {
  if (v.is_number()) return Complex{v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return Complex{v[0].get<double>(), v[1].get<double>()};
  }
  throw ParseError(std::string(what) +
                   ": values must be numbers or [re, im] pairs");
}

inline Vector value_list(const json& node, const char* key,
                         const char* what) {
  if (!node.is_array()) {
    throw ParseError(std::string(what) + ": '" + key +
                     "' must be an array of values");
  }
  Vector out(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    out[i] = complex_value(node[i], what);
  }
  return out;
}

}  // namespace detail

struct PartitionProblem {
  PartitionSpec spec;
  Vector x_known;
  Vector y_known;
};

/// {"n": 4, "known_x_idx": [...], "known_y_idx": [...],
///  "x_known": [...], "y_known": [...]}
inline PartitionProblem parse_partition_problem(const std::string& text) {
  const char* what = "partition problem";
  const json doc = detail::parse_json_text(text, what);
  PartitionProblem p;
  const json& n = detail::require_key(doc, "n", what);
  if (!n.is_number_unsigned()) {
    throw ParseError(std::string(what) + ": 'n' must be a positive integer");
  }
  p.spec.n = n.get<std::size_t>();
  p.spec.known_x_idx = detail::index_list(
      detail::require_key(doc, "known_x_idx", what), "known_x_idx", what);
  p.spec.known_y_idx = detail::index_list(
      detail::require_key(doc, "known_y_idx", what), "known_y_idx", what);
  p.x_known = detail::value_list(detail::require_key(doc, "x_known", what),
                                 "x_known", what);
  p.y_known = detail::value_list(detail::require_key(doc, "y_known", what),
                                 "y_known", what);
  return p;
}

struct SparseProblem {
  std::size_t n = 0;
  Vector samples;
  std::vector<std::size_t> sample_idx;
  std::vector<std::size_t> support_idx;
};

/// {"n": 8, "sample_idx": [...], "support_idx": [...], "samples": [...]}
inline SparseProblem parse_sparse_problem(const std::string& text) {
  const char* what = "sparse recovery problem";
  const json doc = detail::parse_json_text(text, what);
  SparseProblem p;
  const json& n = detail::require_key(doc, "n", what);
  if (!n.is_number_unsigned()) {
    throw ParseError(std::string(what) + ": 'n' must be a positive integer");
  }
  p.n = n.get<std::size_t>();
  p.sample_idx = detail::index_list(
      detail::require_key(doc, "sample_idx", what), "sample_idx", what);
  p.support_idx = detail::index_list(
      detail::require_key(doc, "support_idx", what), "support_idx", what);
  p.samples = detail::value_list(detail::require_key(doc, "samples", what),
                                 "samples", what);
  return p;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// {"result": [[...]], "meta": {...}}; complex entries become [re, im].
inline json matrix_to_json(const Matrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex v = a(i, j);
      if (v.imag() == 0.0) {
        row.push_back(v.real());
      } else {
        row.push_back(json::array({v.real(), v.imag()}));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json vector_to_json(const Vector& x) {
  return matrix_to_json(as_row(x));
}

}  // namespace io
}  // namespace lps
