#include "bornflea/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bornflea/errors.hpp"

namespace bornflea::csv {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw InvalidInputError("csv::Table: no columns");
}

void Table::add_provenance(std::string_view key, std::string_view value) {
  provenance_.push_back("# " + std::string(key) + " " + std::string(value));
}

void Table::prepend_provenance(std::string_view key, std::string_view value) {
  provenance_.insert(provenance_.begin(),
                     "# " + std::string(key) + " " + std::string(value));
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw InvalidInputError("csv::Table: row width does not match schema");
  rows_.push_back(std::move(cells));
}

std::string Table::to_string() const {
  std::ostringstream os;
  for (const auto& p : provenance_) os << p << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i)
    os << columns_[i] << (i + 1 == columns_.size() ? '\n' : ',');
  for (const auto& row : rows_)
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 == row.size() ? '\n' : ',');
  return os.str();
}

void Table::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInputError("csv::Table: cannot open " + path);
  f << to_string();
}

}  // namespace bornflea::csv
