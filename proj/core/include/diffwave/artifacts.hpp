#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace diffwave {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

/// Parses a full-string floating-point literal; throws ConfigError naming
/// `what` on failure.
double parse_double(std::string_view text, std::string_view what);

std::string trim(std::string_view s);

/// SHA-1 of "blob <size>\0<content>", i.e. the id `git hash-object` reports.
std::string git_blob_hash(std::string_view content);
std::string git_blob_hash_file(const std::filesystem::path& path);

/// Ordered `key = value` text with `#` comments.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_key_values(std::istream& is);
KeyValues load_key_values(const std::filesystem::path& path);
void write_key_values(std::ostream& os, const KeyValues& kv);

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
};

/// Columnar text: a `#`-prefixed header naming each column with its unit,
/// then whitespace-separated rows.
void write_columns(std::ostream& os, std::string_view title, const std::vector<Column>& columns,
                   const std::vector<std::vector<double>>& data);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace diffwave
