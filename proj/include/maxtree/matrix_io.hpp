#pragma once

// Matrix files.
//
//   JSON: {"n": 4, "rows": [[1, "3/4", "5/6", 0], ...]}
//         Entries are numbers or strings holding a decimal or a rational
//         "p/q". "n" is optional; when given, the matrix must be n x n.
//   CSV:  one row per line, comma separated; blank lines and lines
//         starting with '#' are skipped. Rationals are accepted here too.
//
// A rational is converted to the nearest double only after both integer
// parts are read exactly.

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "maxtree/semiring.hpp"

namespace maxtree::io {

/// Parses "21/80", "0.25" or "1e-3". Throws ParseError.
double parse_scalar(std::string_view text);

NonnegMatrix parse_matrix_json(const nlohmann::json& doc);
NonnegMatrix parse_matrix_json_text(std::string_view text);
NonnegMatrix parse_matrix_csv(std::string_view text);

/// Format chosen by extension (.json / .csv), else by sniffing for '{'.
NonnegMatrix read_matrix_file(const std::filesystem::path& path);

nlohmann::json matrix_to_json(const NonnegMatrix& a);
nlohmann::json vector_to_json(const NonnegVector& v);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

std::string matrix_to_csv(const NonnegMatrix& a);

}  // namespace maxtree::io
