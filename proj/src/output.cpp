#include "labelflow/output.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>

#include <json.hpp>

#include "labelflow/error.hpp"

namespace labelflow::output {
namespace {

[[noreturn]] void io_fail(const std::string& msg) { throw Error(ErrorKind::kIo, msg); }

void append_le(std::string& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int b = 0; b < 8; ++b) buf.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
}

double read_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

std::filesystem::path write_components(const std::filesystem::path& dir, const std::string& stem,
                                       const std::string& field,
                                       std::span<const ScalarField> comps, double t,
                                       int chart_index) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) io_fail("cannot create snapshot directory '" + dir.string() + "': " + ec.message());
  const Grid& g = comps.front().grid();
  std::string buf;
  buf.reserve(comps.size() * g.size() * 8);
  for (const auto& c : comps)
    for (double v : c.values()) append_le(buf, v);
  const auto bin = dir / (stem + ".bin");
  {
    std::ofstream out(bin, std::ios::binary);
    if (!out) io_fail("cannot write '" + bin.string() + "'");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) io_fail("short write to '" + bin.string() + "'");
  }
  nlohmann::json j = {{"field", field},        {"n", g.n()},
                      {"L", g.length()},       {"t", t},
                      {"chart_index", chart_index},
                      {"components", comps.size()},
                      {"dtype", "float64-le"}, {"order", "x-fastest"},
                      {"data", bin.filename().string()}};
  const auto side = dir / (stem + ".json");
  std::ofstream out(side);
  if (!out) io_fail("cannot write '" + side.string() + "'");
  out << j.dump(2) << "\n";
  return side;
}

}  // namespace

std::vector<std::string> csv_columns(config::Mode mode) {
  if (mode == config::Mode::kPicard) {
    return {"iteration", "residual", "ratio", "t_end", "time_curl_product"};
  }
  std::vector<std::string> cols = {"step",          "t",
                                   "dt",            "chart_index",
                                   "energy",        "helicity",
                                   "sup_vorticity", "bkm_integral",
                                   "det_error",     "holder_grad_delta",
                                   "sup_delta",     "cauchy_residual",
                                   "omega_dot_w_drift"};
  for (int i = 1; i <= kDefaultLoops; ++i) cols.push_back("circulation_" + std::to_string(i));
  for (int i = 1; i <= 8; ++i) cols.push_back("distribution_" + std::to_string(i));
  if (mode == config::Mode::kOracleCompare) {
    cols.push_back("oracle_energy");
    cols.push_back("compare");
  }
  return cols;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  out_.open(path, std::ios::binary);
  if (!out_) io_fail("cannot write diagnostics file '" + path.string() + "'");
  for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << csv_escape(columns_[i]);
  out_ << "\r\n";
}

void CsvWriter::write_row(const std::vector<double>& values) {
  if (values.size() != columns_.size()) {
    throw Error(ErrorKind::kBadParameters, "CSV row has " + std::to_string(values.size()) +
                                               " values for " + std::to_string(columns_.size()) +
                                               " columns");
  }
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << "\r\n";
  if (!out_) io_fail("write to diagnostics file failed");
}

void CsvWriter::flush() { out_.flush(); }

std::filesystem::path write_snapshot(const std::filesystem::path& dir, const std::string& stem,
                                     const std::string& field, const VectorField& v, double t,
                                     int chart_index) {
  return write_components(dir, stem, field, v.components(), t, chart_index);
}

std::filesystem::path write_snapshot(const std::filesystem::path& dir, const std::string& stem,
                                     const std::string& field, const ScalarField& f, double t,
                                     int chart_index) {
  return write_components(dir, stem, field, std::span<const ScalarField>(&f, 1), t, chart_index);
}

SnapshotInfo read_snapshot_info(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) io_fail("cannot read '" + json_path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
    SnapshotInfo info;
    info.field = j.at("field").get<std::string>();
    info.n = j.at("n").get<int>();
    info.length = j.at("L").get<double>();
    info.t = j.at("t").get<double>();
    info.chart_index = j.at("chart_index").get<int>();
    info.components = j.value("components", 1);
    info.dtype = j.at("dtype").get<std::string>();
    info.order = j.at("order").get<std::string>();
    const auto bin = json_path.parent_path() /
                     j.value("data", json_path.stem().string() + ".bin");
    std::error_code ec;
    const auto size = std::filesystem::file_size(bin, ec);
    if (ec) io_fail("missing data file '" + bin.string() + "'");
    const auto expected = static_cast<std::uintmax_t>(info.components) * info.n * info.n * info.n * 8;
    if (size != expected) {
      io_fail("data file '" + bin.string() + "' has " + std::to_string(size) + " bytes, expected " +
              std::to_string(expected));
    }
    return info;
  } catch (const nlohmann::json::exception& e) {
    io_fail("malformed snapshot sidecar '" + json_path.string() + "': " + e.what());
  }
}

std::vector<double> read_snapshot_data(const std::filesystem::path& json_path) {
  const SnapshotInfo info = read_snapshot_info(json_path);
  const auto bin = json_path.parent_path() / (json_path.stem().string() + ".bin");
  std::ifstream in(bin, std::ios::binary);
  if (!in) io_fail("cannot read '" + bin.string() + "'");
  std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<double> out(raw.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = read_le(raw.data() + 8 * i);
  (void)info;
  return out;
}

}  // namespace labelflow::output
