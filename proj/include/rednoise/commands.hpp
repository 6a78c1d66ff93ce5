#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rednoise/rng.hpp"
#include "rednoise/series_io.hpp"
#include "rednoise/spectral.hpp"
#include "rednoise/theorem_lab.hpp"

namespace rednoise::cli {

enum class Command { generate, psd, acf, slope, fig1, fig2, theorem };

/// Flags shared by all subcommands. Unset optionals take per-command defaults.
struct RunConfig {
  Command command = Command::generate;
  std::string model;
  std::optional<Eigen::Index> n;
  std::optional<double> dt;
  Seed seed{0};
  std::optional<Eigen::Index> band_width;
  std::filesystem::path output;
  io::Format format = io::Format::csv;
  bool quick = false;

  // psd / acf / slope input
  std::filesystem::path input;
  io::Format input_format = io::Format::csv;
  Eigen::Index max_lag = 20;
  AcfMode acf_mode = AcfMode::correlation;
  double omega_min = 1.0;
  double omega_max = 10.0;

  // fig1 / fig2 / theorem parameters; defaults mirror the published runs
  double theta = 0.1;
  double gamma = 0.5;
  double psi = 0.8;
  double phi = 0.9;
  double sigma = 1.0;
  double beta = 1.0;
  double horizon = 1e3;
  Eigen::Index replicas = 64;
  Eigen::Index subsample = 10;
  std::optional<double> target;
};

struct Outcome {
  int exit_code = 0;  // 0 pass, 1 assertion failure, 2 invalid input
  std::vector<std::string> lines;
};

struct Fig1Entry {
  std::string name;
  AvgSpectrum spectrum;
  Eigen::VectorXd theory;
  double omega_from = 0.0;
  double omega_to = 0.0;
  Eigen::Index compared = 0;
  double max_rel_dev = 0.0;          // against the continuous-time PSD
  double max_rel_dev_sampled = 0.0;  // against the expected periodogram on the grid
};

struct Fig1Result {
  std::vector<Fig1Entry> entries;  // white, red, du, mixed
  double red_slope = 0.0;
  double tolerance = 0.0;
  Outcome outcome;
};

struct Fig2Result {
  double lambda = 0.0;
  double theta = 0.0;
  AcfEstimate discrete;
  AcfEstimate continuous;
  Eigen::VectorXd theory;
  double max_rel_dev_discrete = 0.0;
  double max_rel_dev_continuous = 0.0;
  double tolerance = 0.0;
  Outcome outcome;
};

Outcome cmd_generate(const RunConfig& config);
Outcome cmd_psd(const RunConfig& config);
Outcome cmd_acf(const RunConfig& config);
Outcome cmd_slope(const RunConfig& config);
Fig1Result cmd_fig1(const RunConfig& config);
Fig2Result cmd_fig2(const RunConfig& config);
Outcome cmd_theorem(const RunConfig& config);

/// Dispatch on config.command; std::exceptions become exit code 2 with an "error:" line.
Outcome run(const RunConfig& config);

}  // namespace rednoise::cli
