#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bornflea::csv {

// shortest round-trippable decimal form; byte-stable across reruns
std::string fmt(double v);
std::string fmt(std::uint64_t v);

std::uint64_t fnv1a64(std::string_view s);

// CSV with '#'-prefixed provenance lines before the header row.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_provenance(std::string_view key, std::string_view value);
  void prepend_provenance(std::string_view key, std::string_view value);
  void add_row(std::vector<std::string> cells);  // size must match columns

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t row_count() const { return rows_.size(); }

  std::string to_string() const;
  void write_file(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> provenance_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace bornflea::csv
