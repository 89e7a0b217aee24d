#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hollowstab/matrix.hpp"

namespace hollowstab {

// Text format: a header line "n m" followed by n lines of m
// whitespace-separated decimals. The writer emits 17 significant digits,
// which round-trips IEEE doubles bit-exactly.
//
// JSON format: {"rows": n, "cols": m, "data": [row-major numbers]}.
//
// Both readers reject non-finite entries with ParseError.

DenseMatrix read_matrix_text(std::istream& in);
void write_matrix_text(std::ostream& out, const DenseMatrix& m);

DenseMatrix read_matrix_json(std::istream& in);
void write_matrix_json(std::ostream& out, const DenseMatrix& m);

/// Reads either format, sniffing JSON by a leading '{'.
DenseMatrix load_matrix(const std::filesystem::path& path);

/// Writes JSON when the extension is ".json", text otherwise.
void save_matrix(const std::filesystem::path& path, const DenseMatrix& m);

/// Formats one double with 17 significant digits.
std::string format_entry(double v);

}  // namespace hollowstab
