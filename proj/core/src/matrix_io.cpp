#include "hollowstab/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hollowstab/errors.hpp"

namespace hollowstab {

namespace {

void check_finite(const DenseMatrix& m, const char* where) {
  if (!m.all_finite()) {
    throw ParseError(std::string(where) + ": non-finite entry");
  }
}

}  // namespace

DenseMatrix read_matrix_text(std::istream& in) {
  long long rows = 0, cols = 0;
  if (!(in >> rows >> cols)) {
    throw ParseError("matrix text: missing or malformed 'n m' header");
  }
  if (rows <= 0 || cols <= 0 || rows > 100000 || cols > 100000) {
    throw ParseError("matrix text: implausible dimensions in header");
  }
  DenseMatrix m(static_cast<int>(rows), static_cast<int>(cols));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      double v = 0.0;
      if (!(in >> v)) {
        throw ParseError("matrix text: truncated or non-numeric data");
      }
      m(i, j) = v;
    }
  }
  check_finite(m, "matrix text");
  return m;
}

void write_matrix_text(std::ostream& out, const DenseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_entry(m(i, j));
    }
    out << '\n';
  }
}

DenseMatrix read_matrix_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data")) {
    throw ParseError("matrix json: expected {rows, cols, data}");
  }
  const long long rows = j["rows"].get<long long>();
  const long long cols = j["cols"].get<long long>();
  if (rows <= 0 || cols <= 0 || rows > 100000 || cols > 100000) {
    throw ParseError("matrix json: implausible dimensions");
  }
  const auto& data = j["data"];
  if (!data.is_array() ||
      static_cast<long long>(data.size()) != rows * cols) {
    throw ParseError("matrix json: data length does not match rows*cols");
  }
  DenseMatrix m(static_cast<int>(rows), static_cast<int>(cols));
  std::size_t k = 0;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j2 = 0; j2 < m.cols(); ++j2) {
      if (!data[k].is_number()) {
        throw ParseError("matrix json: non-numeric data entry");
      }
      m(i, j2) = data[k].get<double>();
      ++k;
    }
  }
  check_finite(m, "matrix json");
  return m;
}

void write_matrix_json(std::ostream& out, const DenseMatrix& m) {
  // Emitted by hand so entries carry the same 17-digit round-trip
  // guarantee as the text format.
  out << "{\"rows\":" << m.rows() << ",\"cols\":" << m.cols() << ",\"data\":[";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (i || j) out << ',';
      out << format_entry(m(i, j));
    }
  }
  out << "]}\n";
}

DenseMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  int c = in.peek();
  while (c != EOF && std::isspace(c)) {
    in.get();
    c = in.peek();
  }
  if (c == '{') return read_matrix_json(in);
  return read_matrix_text(in);
}

void save_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  if (path.extension() == ".json") {
    write_matrix_json(out, m);
  } else {
    write_matrix_text(out, m);
  }
  if (!out.good()) throw ParseError("write failed for " + path.string());
}

std::string format_entry(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace hollowstab
