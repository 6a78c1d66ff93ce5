#pragma once

#include <numbers>

#include <Eigen/Core>

#include "rednoise/noise_models.hpp"

namespace rednoise {

/// Raw finite-time periodogram. omegas[j-1] = 2 pi j / (n dt), j = 1..floor(n/2).
struct Periodogram {
  Eigen::VectorXd omegas;
  Eigen::VectorXd powers;
  Eigen::Index n_samples = 0;
  double dt = 1.0;
};

/// Disjoint-block band means of a periodogram.
struct AvgSpectrum {
  Eigen::VectorXd omegas;
  Eigen::VectorXd powers;
  Eigen::Index band_width = 1;
};

enum class AcfMode { covariance, correlation };

struct AcfEstimate {
  Eigen::VectorX<Eigen::Index> lags;
  Eigen::VectorXd values;
  AcfMode mode = AcfMode::covariance;
};

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  Eigen::Index points = 0;
};

inline double nyquist(double dt) { return std::numbers::pi / dt; }

/**
 * powers[j] = |sum_k exp(-i omega_j k dt) dY_k|^2 / (n dt).
 *
 * A single-realisation estimate of the finite-time PSD: no window, no
 * averaging. Any length n >= 2 is accepted.
 */
Periodogram periodogram(const Eigen::Ref<const Eigen::VectorXd>& increments, double dt);
Periodogram periodogram(const IncrementSeries& incr);

/// Means of consecutive blocks of band_width raw bins; a trailing partial block is dropped.
AvgSpectrum band_average(const Periodogram& p, Eigen::Index band_width);

/**
 * Biased (divide by n) sample autocovariance about the sample mean, lags
 * 0..max_lag, or its normalisation by lag 0.
 *
 * Sums pair term k with term N-1-k before accumulating, so running the
 * estimator on the reversed series gives bit-identical output.
 * Callers should keep max_lag below length/10.
 */
AcfEstimate empirical_acf(const TimeSeries& series, Eigen::Index max_lag, AcfMode mode);

/// OLS of ln(power) on ln(omega) over bands with omega in [omega_min, omega_max].
LogLogFit loglog_slope(const AvgSpectrum& spec, double omega_min, double omega_max);

}  // namespace rednoise
