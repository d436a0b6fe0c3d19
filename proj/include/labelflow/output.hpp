#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "labelflow/config.hpp"
#include "labelflow/field.hpp"

namespace labelflow::output {

inline constexpr int kDefaultLoops = 3;

/// Column names for a mode; fixed regardless of the run's data.
std::vector<std::string> csv_columns(config::Mode mode);

/// RFC 4180 writer: comma separated, CRLF line ends, fields quoted when they
/// contain a comma, quote or line break. Numbers use 17 significant digits so
/// repeated runs compare byte for byte.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  /// Throws BadParameters when the row width differs from the header.
  void write_row(const std::vector<double>& values);
  void flush();

 private:
  std::ofstream out_;
  std::vector<std::string> columns_;
};

std::string csv_escape(const std::string& field);
std::string format_number(double v);

struct SnapshotInfo {
  std::string field;
  int n = 0;
  double length = 0.0;
  double t = 0.0;
  int chart_index = 0;
  int components = 1;
  std::string dtype = "float64-le";
  std::string order = "x-fastest";
};

/// Writes <dir>/<stem>.bin (components one after another, each x-fastest,
/// little-endian float64) and <dir>/<stem>.json. Returns the .json path.
std::filesystem::path write_snapshot(const std::filesystem::path& dir, const std::string& stem,
                                     const std::string& field, const VectorField& v, double t,
                                     int chart_index);
std::filesystem::path write_snapshot(const std::filesystem::path& dir, const std::string& stem,
                                     const std::string& field, const ScalarField& f, double t,
                                     int chart_index);

/// Parses a sidecar and checks the data file's size. Throws Io.
SnapshotInfo read_snapshot_info(const std::filesystem::path& json_path);
/// Reads the data of a snapshot as one flat array.
std::vector<double> read_snapshot_data(const std::filesystem::path& json_path);

}  // namespace labelflow::output
