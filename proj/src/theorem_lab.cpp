#include "rednoise/theorem_lab.hpp"

#include <cmath>
#include <cstdio>

#include "rednoise/spectral.hpp"

namespace rednoise {

namespace {

using detail::require;

Eigen::Index nearest_band(const Eigen::VectorXd& omegas, double omega) {
  Eigen::Index best = 0;
  (omegas.array() - omega).abs().minCoeff(&best);
  return best;
}

}  // namespace

double finite_psd_theoretical(const NoiseModel& m, double horizon, double omega) {
  validate(m);
  require(horizon > 0, "finite_psd_theoretical: T must be positive");
  if (const auto* red = std::get_if<model::RedOuDt>(&m))
    return f1(horizon, omega, red->ou.theta) / horizon;
  if (const auto* mixed = std::get_if<model::Mixed>(&m)) {
    const double theta = mixed->params.theta;
    const double gamma = mixed->params.gamma;
    return (gamma * gamma * f1(horizon, omega, theta) +
            2 * gamma * f2(horizon, omega, theta).real() + horizon) /
           horizon;
  }
  throw std::invalid_argument("finite_psd_theoretical: only red and mixed models are supported");
}

void validate(const TheoremConfig& c) {
  require(c.theta > 0, "theorem: theta must be positive");
  require(std::isfinite(c.beta), "theorem: beta must be finite");
  require(c.dt > 0 && c.horizon > 0, "theorem: T and dt must be positive");
  require(c.horizon / c.dt >= 16, "theorem: T/dt must be at least 16");
  require(c.replicas >= 32, "theorem: at least 32 replicas are required");
  require(c.omega_lo > 0 && c.omega_hi >= 2 * c.omega_lo,
          "theorem: window must satisfy 0 < omega_lo and omega_hi >= 2 omega_lo");
  require(c.omega_hi <= nyquist(c.dt), "theorem: omega_hi lies above the Nyquist frequency");
  require(c.dt <= 2 * std::numbers::pi / (10 * c.omega_hi),
          "theorem: dt must not exceed 2 pi / (10 omega_hi)");
  require(c.band_width >= 1, "theorem: band_width must be at least 1");
  require(!c.target || *c.target >= 0, "theorem: target must be non-negative");
}

TheoremReport theorem_experiment(const TheoremConfig& config, const GaussianStream& stream) {
  validate(config);
  const auto n = static_cast<Eigen::Index>(std::llround(config.horizon / config.dt));
  const double dt = config.dt;
  const double horizon = static_cast<double>(n) * dt;
  const OuParams alpha{config.theta, Init::stationary};

  Periodogram mean;
  for (Eigen::Index r = 0; r < config.replicas; ++r) {
    GaussianStream alpha_stream = stream.split(2 * static_cast<std::uint64_t>(r));
    GaussianStream noise_stream = stream.split(2 * static_cast<std::uint64_t>(r) + 1);
    const Eigen::VectorXd u = ou_exact_sample(alpha, dt, n, alpha_stream).values;
    const Eigen::VectorXd dw = std::sqrt(dt) * gaussian_fill(noise_stream, n);
    Periodogram p = periodogram(u * dt + config.beta * dw, dt);
    if (r == 0) {
      mean = std::move(p);
    } else {
      mean.powers += p.powers;
    }
  }
  mean.powers /= static_cast<double>(config.replicas);

  // Raw bins inside the window, then disjoint bands over them.
  Eigen::Index first = 0;
  while (first < mean.omegas.size() && mean.omegas[first] < config.omega_lo) ++first;
  Eigen::Index last = first;
  while (last < mean.omegas.size() && mean.omegas[last] <= config.omega_hi) ++last;
  const Eigen::Index count = last - first;
  require(count >= 8 * config.band_width, "theorem: window holds too few frequencies");

  Periodogram window{mean.omegas.segment(first, count), mean.powers.segment(first, count), n, dt};
  const AvgSpectrum bands = band_average(window, config.band_width);

  TheoremReport report;
  report.target = config.target.value_or(config.beta * config.beta);
  report.plateau = window.powers.mean();
  const NoiseModel red = model::RedOuDt{alpha};
  for (Eigen::Index b = 0; b < bands.omegas.size(); ++b) {
    const double w = bands.omegas[b];
    report.bands.push_back(
        {w, bands.powers[b],
         finite_psd_theoretical(red, horizon, w) + config.beta * config.beta});
  }
  report.decay_slope = loglog_slope(bands, config.omega_lo, config.omega_hi).slope;
  report.power_ratio = bands.powers[nearest_band(bands.omegas, config.omega_lo)] /
                       bands.powers[nearest_band(bands.omegas, 2 * config.omega_lo)];

  char buf[512];
  if (report.target > 0) {
    const double rel = std::abs(report.plateau / report.target - 1);
    report.pass = rel <= config.plateau_tolerance;
    std::snprintf(buf, sizeof buf,
                  "%s theorem beta=%.6g plateau=%.6g target=%.6g rel_dev=%.4g tol=%.4g "
                  "window=[%.6g,%.6g] replicas=%lld",
                  report.pass ? "PASS" : "FAIL", config.beta, report.plateau, report.target, rel,
                  config.plateau_tolerance, config.omega_lo, config.omega_hi,
                  static_cast<long long>(config.replicas));
  } else {
    const double slope_dev = std::abs(report.decay_slope + 2);
    const double ratio_dev = std::abs(report.power_ratio / 4 - 1);
    report.pass = slope_dev <= config.slope_tolerance && ratio_dev <= config.ratio_tolerance;
    std::snprintf(buf, sizeof buf,
                  "%s theorem beta=%.6g plateau=%.6g target=0 slope=%.6g expected=-2 tol=%.4g "
                  "ratio=%.6g expected=4 tol=%.4g window=[%.6g,%.6g] replicas=%lld",
                  report.pass ? "PASS" : "FAIL", config.beta, report.plateau, report.decay_slope,
                  config.slope_tolerance, report.power_ratio, config.ratio_tolerance,
                  config.omega_lo, config.omega_hi, static_cast<long long>(config.replicas));
  }
  report.summary = buf;
  return report;
}

}  // namespace rednoise
