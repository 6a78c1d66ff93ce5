#include "rednoise/series_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rednoise/model_spec.hpp"

namespace rednoise::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void check_written(const std::ofstream& out, const std::filesystem::path& path) {
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
  return v;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "f64le") return Format::f64le;
  throw std::invalid_argument("format must be 'csv' or 'f64le'");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_series(const std::filesystem::path& path, const Eigen::VectorXd& values, double dt,
                  Format format) {
  if (format == Format::f64le) {
    auto out = open_out(path, std::ios::binary | std::ios::trunc);
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(values[k]));
      out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
    check_written(out, path);
    return;
  }
  auto out = open_out(path, std::ios::trunc);
  out << "t,value\n";
  for (Eigen::Index k = 0; k < values.size(); ++k)
    out << format_number(static_cast<double>(k) * dt) << ',' << format_number(values[k]) << '\n';
  check_written(out, path);
}

LoadedSeries read_series(const std::filesystem::path& path, Format format) {
  if (format == Format::f64le) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() % 8 != 0)
      throw std::runtime_error("'" + path.string() + "': size is not a multiple of 8 bytes");
    LoadedSeries s{Eigen::VectorXd(static_cast<Eigen::Index>(bytes.size() / 8)), std::nullopt};
    for (Eigen::Index k = 0; k < s.values.size(); ++k) {
      std::uint64_t bits = 0;
      std::memcpy(&bits, bytes.data() + 8 * k, 8);
      s.values[k] = std::bit_cast<double>(to_little_endian(bits));
    }
    return s;
  }

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path.string() + "': empty file");
  std::vector<double> times;
  std::vector<double> values;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto first = line.find(',');
    const auto last = line.rfind(',');
    const std::string where = path.string() + ":" + std::to_string(row);
    if (first == std::string::npos) throw std::runtime_error(where + ": expected t,value");
    times.push_back(parse_number(where, std::string_view(line).substr(0, first)));
    values.push_back(parse_number(where, std::string_view(line).substr(last + 1)));
  }
  LoadedSeries s{Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())),
                 std::nullopt};
  if (times.size() >= 2) s.dt = times[1] - times[0];
  return s;
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<Eigen::VectorXd>& columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("write_table: header/column mismatch");
  const Eigen::Index rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw std::invalid_argument("write_table: ragged columns");
  auto out = open_out(path, std::ios::trunc);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i)
      out << (i ? "," : "") << format_number(columns[i][r]);
    out << '\n';
  }
  check_written(out, path);
}

void write_lag_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const Eigen::VectorX<Eigen::Index>& lags, const Eigen::VectorXd& values) {
  if (header.size() != 2 || lags.size() != values.size())
    throw std::invalid_argument("write_lag_table: shape mismatch");
  auto out = open_out(path, std::ios::trunc);
  out << header[0] << ',' << header[1] << '\n';
  for (Eigen::Index r = 0; r < lags.size(); ++r)
    out << lags[r] << ',' << format_number(values[r]) << '\n';
  check_written(out, path);
}

}  // namespace rednoise::io
