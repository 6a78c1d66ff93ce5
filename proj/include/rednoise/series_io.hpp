#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace rednoise::io {

enum class Format { csv, f64le };

Format parse_format(std::string_view name);

/// "%.16e": 17 significant digits, round-trips every double.
std::string format_number(double v);

/// CSV with header "t,value" (t = k dt), or raw little-endian doubles without header.
void write_series(const std::filesystem::path& path, const Eigen::VectorXd& values, double dt,
                  Format format);

struct LoadedSeries {
  Eigen::VectorXd values;
  std::optional<double> dt;  // recovered from the t column of CSV input
};

/// CSV: last column is the value, first column the time; f64le: raw doubles.
LoadedSeries read_series(const std::filesystem::path& path, Format format);

/// Header row then one row per index; all columns must have equal length.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<Eigen::VectorXd>& columns);

/// Like write_table but the first column is written as integers (lags).
void write_lag_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const Eigen::VectorX<Eigen::Index>& lags, const Eigen::VectorXd& values);

}  // namespace rednoise::io
