#include "sketchsdp/io.hpp"

#include "sketchsdp/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace sketchsdp {
namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
  cell = trim(cell);
  if (cell.empty()) throw ParseError("empty cell", row, col);
  if (cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("non-numeric cell '" + std::string(cell) + "'", row, col);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite cell", row, col);
  return v;
}

}  // namespace

Dataset parse_csv(std::string_view text, char delimiter, bool has_header) {
  const auto lines = split_lines(text);
  std::size_t first = has_header ? 1 : 0;
  if (lines.size() <= first) throw ParseError("empty input", lines.size() + 1, 0);
  std::vector<double> values;
  std::size_t width = 0;
  for (std::size_t r = first; r < lines.size(); ++r) {
    const std::size_t row = r + 1;
    const auto line = lines[r];
    if (trim(line).empty()) throw ParseError("blank line", row, 0);
    std::size_t col = 0;
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find(delimiter, start);
      const auto cell = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
      ++col;
      values.push_back(parse_cell(cell, row, col));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    if (r == first) {
      width = col;
    } else if (col != width) {
      throw ParseError("ragged row: expected " + std::to_string(width) + " cells, found " + std::to_string(col),
                       row, std::min(col, width) + 1);
    }
  }
  const auto n = static_cast<Index>(lines.size() - first);
  PointMatrix m(n, static_cast<Index>(width));
  std::copy(values.begin(), values.end(), m.data());
  return Dataset(std::move(m));
}

Dataset load_csv(const std::filesystem::path& path, char delimiter, bool has_header) {
  return parse_csv(read_file(path), delimiter, has_header);
}

std::string to_csv(const Dataset& x, char delimiter) {
  std::string out;
  std::array<char, 64> buf{};
  for (Index i = 0; i < x.n(); ++i) {
    for (Index j = 0; j < x.d(); ++j) {
      if (j > 0) out.push_back(delimiter);
      const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x.points()(i, j));
      out.append(buf.data(), ptr);
    }
    out.push_back('\n');
  }
  return out;
}

std::string format_sci(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2e", v);
  std::string s(buf.data());
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  bool negative = false;
  if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-')) {
    negative = exponent[0] == '-';
    exponent.erase(0, 1);
  }
  const auto nz = exponent.find_first_not_of('0');
  exponent = nz == std::string::npos ? "0" : exponent.substr(nz);
  if (exponent == "0") negative = false;
  return mantissa + "e" + (negative ? "-" : "") + exponent;
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  const auto lines = split_lines(text);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    auto line = lines[r];
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", r + 1, 1);
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", r + 1, 1);
    kv[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return kv;
}

std::string to_key_values(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sketchsdp
