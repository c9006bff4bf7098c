#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace svbench {

// Minimal delimited-text support: UTF-8, comma or tab separated, header row,
// RFC-4180 style quoting on read and (when needed) on write.

struct TextTable {
  char delimiter = ',';
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(const std::string& name) const;  // npos if absent
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// Reads a whole file. delimiter_hint of '\0' auto-detects comma vs tab from
// the header row.
TextTable read_delimited(const std::string& path, char delimiter_hint = '\0');

void write_delimited_field(std::ostream& os, const std::string& field, char delimiter);
void write_delimited_row(std::ostream& os, const std::vector<std::string>& fields, char delimiter);

// 64-bit FNV-1a of a file's bytes, as 16 hex digits. Used for provenance
// digests and config digests embedded in outputs.
std::string fnv1a_file_digest(const std::string& path);
std::string fnv1a_digest(const std::string& bytes);

// Shortest decimal form that round-trips a double.
std::string format_double(double v);

}  // namespace svbench
