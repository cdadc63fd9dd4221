#pragma once

// CSV ingestion, number formatting and key=value configuration text.

#include "sketchsdp/core.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace sketchsdp {

/// Numeric table, one point per row. Blank trailing lines are ignored; CRLF
/// is accepted. Throws ParseError on empty input, ragged rows and
/// non-numeric cells.
Dataset parse_csv(std::string_view text, char delimiter = ',', bool has_header = false);
Dataset load_csv(const std::filesystem::path& path, char delimiter = ',', bool has_header = false);

/// Shortest round-trip representation of every coordinate.
std::string to_csv(const Dataset& x, char delimiter = ',');

/// Scientific notation with 3 significant digits and a bare exponent:
/// 39.2 -> "3.92e1", 0.124 -> "1.24e-1". NaN prints as "NA".
std::string format_sci(double v);

/// Flat `key = value` lines; '#' starts a comment. Later keys override
/// earlier ones.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(std::string_view text);
std::string to_key_values(const KeyValues& kv);

/// Whole file as a string; throws Error when unreadable.
std::string read_file(const std::filesystem::path& path);

}  // namespace sketchsdp
