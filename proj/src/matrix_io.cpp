#include "maxtree/matrix_io.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace maxtree::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_integer_part(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("malformed rational '" + std::string(whole) + "'");
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

double parse_rational(std::string_view text, std::size_t slash) {
  std::string_view num = trim(text.substr(0, slash));
  const std::string_view den = trim(text.substr(slash + 1));
  bool negative = false;
  if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
    negative = num.front() == '-';
    num.remove_prefix(1);
  }
  const std::uint64_t p = parse_integer_part(num, text);
  const std::uint64_t q = parse_integer_part(den, text);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");

  constexpr std::uint64_t kExact = std::uint64_t{1} << 53;
  double value;
  if (p <= kExact && q <= kExact) {
    // Both operands are exact doubles, so IEEE division rounds once.
    value = static_cast<double>(p) / static_cast<double>(q);
  } else {
    value = static_cast<double>(static_cast<long double>(p) / static_cast<long double>(q));
  }
  return negative ? -value : value;
}

double scalar_from_json(const nlohmann::json& cell) {
  if (cell.is_number()) return cell.get<double>();
  if (cell.is_string()) return parse_scalar(cell.get<std::string>());
  throw ParseError("matrix entries must be numbers or strings, got " + cell.dump());
}

NonnegMatrix build(const std::vector<std::vector<double>>& rows) {
  try {
    return NonnegMatrix::from_rows(rows);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid matrix: ") + e.what());
  }
}

}  // namespace

double parse_scalar(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.empty()) throw ParseError("empty numeric field");
  if (const auto slash = t.find('/'); slash != std::string_view::npos) {
    return parse_rational(t, slash);
  }
  std::string_view body = t;
  if (body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc{} || ptr != body.data() + body.size()) {
    throw ParseError("malformed number '" + std::string(t) + "'");
  }
  return value;
}

NonnegMatrix parse_matrix_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
    throw ParseError("matrix JSON must be an object with a \"rows\" array");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& r : doc["rows"]) {
    if (!r.is_array()) throw ParseError("each row must be an array");
    auto& out = rows.emplace_back();
    for (const auto& cell : r) out.push_back(scalar_from_json(cell));
  }
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
    const auto n = doc["n"].get<std::int64_t>();
    if (n < 1 || static_cast<std::size_t>(n) != rows.size()) {
      throw ParseError("\"n\" = " + std::to_string(n) + " but " + std::to_string(rows.size()) +
                       " rows given");
    }
    for (const auto& r : rows) {
      if (r.size() != rows.size()) throw ParseError("\"n\" given but a row has the wrong length");
    }
  }
  return build(rows);
}

NonnegMatrix parse_matrix_json_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON: ") + e.what());
  }
  return parse_matrix_json(doc);
}

NonnegMatrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    auto& row = rows.emplace_back();
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      row.push_back(parse_scalar(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  if (rows.empty()) throw ParseError("CSV contains no rows");
  return build(rows);
}

NonnegMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const auto ext = path.extension().string();
  if (ext == ".json") return parse_matrix_json_text(text);
  if (ext == ".csv") return parse_matrix_csv(text);
  const std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_matrix_json_text(text);
  return parse_matrix_csv(text);
}

nlohmann::json matrix_to_json(const NonnegMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    rows.push_back(std::vector<double>(a.row(i).begin(), a.row(i).end()));
  }
  nlohmann::json doc;
  if (a.is_square()) doc["n"] = a.n();
  doc["rows"] = std::move(rows);
  return doc;
}

nlohmann::json vector_to_json(const NonnegVector& v) { return v.as_vector(); }

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string matrix_to_csv(const NonnegMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ',';
      out += format_double(a(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace maxtree::io
