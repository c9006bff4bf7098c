#include "text_table.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "errors.hpp"

namespace svbench {

std::size_t TextTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return npos;
}

namespace {

// Splits one logical CSV record starting at `pos`. Quoted fields may contain
// delimiters and newlines.
std::vector<std::string> parse_record(const std::string& text, std::size_t& pos, char delim) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  const std::size_t n = text.size();
  while (pos < n) {
    char c = text[pos];
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < n && text[pos + 1] == '"') {
          field.push_back('"');
          ++pos;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      ++pos;
      continue;
    }
    if (c == '"' && field.empty()) {
      in_quotes = true;
      ++pos;
      continue;
    }
    if (c == delim) {
      fields.push_back(std::move(field));
      field.clear();
      ++pos;
      continue;
    }
    if (c == '\n' || c == '\r') {
      ++pos;
      if (c == '\r' && pos < n && text[pos] == '\n') ++pos;
      fields.push_back(std::move(field));
      return fields;
    }
    field.push_back(c);
    ++pos;
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

TextTable read_delimited(const std::string& path, char delimiter_hint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::missing_file, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();

  TextTable table;
  std::size_t header_end = text.find('\n');
  std::string first_line = text.substr(0, header_end == std::string::npos ? text.size() : header_end);
  if (delimiter_hint != '\0') {
    table.delimiter = delimiter_hint;
  } else {
    table.delimiter = first_line.find('\t') != std::string::npos ? '\t' : ',';
  }

  std::size_t pos = 0;
  bool have_header = false;
  while (pos < text.size()) {
    // Comment lines (metadata preambles in our own outputs) are skipped.
    if (text[pos] == '#') {
      std::size_t eol = text.find('\n', pos);
      pos = eol == std::string::npos ? text.size() : eol + 1;
      continue;
    }
    auto fields = parse_record(text, pos, table.delimiter);
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  if (!have_header) raise(ErrorCode::empty_dataset, path + " has no header row");
  return table;
}

void write_delimited_field(std::ostream& os, const std::string& field, char delimiter) {
  bool needs_quotes = field.find(delimiter) != std::string::npos ||
                      field.find('"') != std::string::npos ||
                      field.find('\n') != std::string::npos;
  if (!needs_quotes) {
    os << field;
    return;
  }
  os << '"';
  for (char c : field) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

void write_delimited_row(std::ostream& os, const std::vector<std::string>& fields, char delimiter) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << delimiter;
    write_delimited_field(os, fields[i], delimiter);
  }
  os << '\n';
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

std::string fnv1a_file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::missing_file, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a_digest(buf.str());
}

std::string format_double(double v) {
  char out[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(out, sizeof out, "%.*g", prec, v);
    if (std::strtod(out, nullptr) == v) break;
  }
  return out;
}

}  // namespace svbench
