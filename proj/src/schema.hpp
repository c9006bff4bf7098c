#pragma once

#include <map>
#include <string>
#include <vector>

#include "types.hpp"

namespace svbench {

// Column mapping and category coding for an input file. Lives in config so
// non-CMS datasets can be ingested; `canonical()` is the schema our own
// writers emit (column names equal to field names, codes equal to enum
// labels).
struct SchemaConfig {
  char delimiter = '\0';  // '\0' = auto-detect

  // logical field -> column name in the file
  std::map<std::string, std::string> columns;

  // logical field -> (cell value -> category label)
  std::map<std::string, std::map<std::string, std::string>> codes;

  // cell values treated as missing for fields that allow it
  std::vector<std::string> missing_codes = {""};

  // source_label -> frame definition
  std::map<std::string, FrameKind> frames;

  static SchemaConfig canonical();
  static SchemaConfig load(const std::string& path);
  void save(const std::string& path) const;

  // Applies the code table for `field` to a raw cell, or returns the cell
  // unchanged if no table is declared for that field.
  const std::string* decode(const std::string& field, const std::string& cell) const;
  bool is_missing_code(const std::string& cell) const;
};

// Field names expected by the loader, in canonical column order.
const std::vector<std::string>& record_field_names();

}  // namespace svbench
