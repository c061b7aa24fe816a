#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace cldecohere {

/// %.17g, so values round-trip exactly and output is reproducible.
std::string format_number(double v);

/// Comma-separated file with a header row and LF line endings.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<double>& values);
  /// Pre-formatted cells, for label columns.
  void row_cells(const std::vector<std::string>& cells);
  void close();
  std::size_t rows() const { return rows_; }

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

}  // namespace cldecohere
