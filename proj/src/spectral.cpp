#include "rednoise/spectral.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "fft.hpp"

namespace rednoise {

namespace {

using detail::require;

// Sum of f(k), k = 0..count-1, pairing k with count-1-k first. Commutativity of
// the pairwise adds makes the result invariant under k -> count-1-k.
template <typename F>
double mirrored_sum(Eigen::Index count, F f) {
  double acc = 0.0;
  Eigen::Index lo = 0;
  Eigen::Index hi = count - 1;
  for (; lo < hi; ++lo, --hi) acc += f(lo) + f(hi);
  if (lo == hi) acc += f(lo);
  return acc;
}

}  // namespace

Periodogram periodogram(const Eigen::Ref<const Eigen::VectorXd>& increments, double dt) {
  const Eigen::Index n = increments.size();
  require(n >= 2, "periodogram: need at least 2 increments");
  require(dt > 0, "periodogram: dt must be positive");

  const auto spectrum = fft::forward_real(increments);
  const Eigen::Index bins = n / 2;
  const double horizon = static_cast<double>(n) * dt;
  Periodogram p{Eigen::VectorXd(bins), Eigen::VectorXd(bins), n, dt};
  for (Eigen::Index j = 1; j <= bins; ++j) {
    p.omegas[j - 1] = 2 * std::numbers::pi * static_cast<double>(j) / horizon;
    p.powers[j - 1] = std::norm(spectrum[static_cast<std::size_t>(j)]) / horizon;
  }
  return p;
}

Periodogram periodogram(const IncrementSeries& incr) { return periodogram(incr.values, incr.dt); }

AvgSpectrum band_average(const Periodogram& p, Eigen::Index band_width) {
  require(band_width >= 1, "band_average: band_width must be at least 1");
  const Eigen::Index raw = p.powers.size();
  require(band_width <= raw, "band_average: band_width exceeds the number of frequencies");
  const Eigen::Index bands = raw / band_width;
  AvgSpectrum out{Eigen::VectorXd(bands), Eigen::VectorXd(bands), band_width};
  for (Eigen::Index b = 0; b < bands; ++b) {
    out.omegas[b] = p.omegas.segment(b * band_width, band_width).mean();
    out.powers[b] = p.powers.segment(b * band_width, band_width).mean();
  }
  return out;
}

AcfEstimate empirical_acf(const TimeSeries& series, Eigen::Index max_lag, AcfMode mode) {
  const Eigen::VectorXd& x = series.values;
  const Eigen::Index n = x.size();
  require(max_lag >= 0, "empirical_acf: max_lag must be non-negative");
  require(max_lag < n, "empirical_acf: max_lag must be below the series length");

  const double mean = mirrored_sum(n, [&](Eigen::Index k) { return x[k]; }) / static_cast<double>(n);
  AcfEstimate est{Eigen::VectorX<Eigen::Index>::LinSpaced(max_lag + 1, 0, max_lag),
                  Eigen::VectorXd(max_lag + 1), mode};
  for (Eigen::Index m = 0; m <= max_lag; ++m) {
    const double s = mirrored_sum(n - m, [&](Eigen::Index k) {
      return (x[k] - mean) * (x[k + m] - mean);
    });
    est.values[m] = s / static_cast<double>(n);
  }
  if (mode == AcfMode::correlation) {
    const double c0 = est.values[0];
    require(c0 > 0, "empirical_acf: zero variance, correlation undefined");
    est.values /= c0;
    est.values[0] = 1.0;
  }
  return est;
}

LogLogFit loglog_slope(const AvgSpectrum& spec, double omega_min, double omega_max) {
  require(omega_min < omega_max, "loglog_slope: empty frequency range");
  std::vector<Eigen::Index> picked;
  for (Eigen::Index b = 0; b < spec.omegas.size(); ++b) {
    const double w = spec.omegas[b];
    if (w >= omega_min && w <= omega_max) {
      require(spec.powers[b] > 0, "loglog_slope: non-positive power in range");
      picked.push_back(b);
    }
  }
  const auto count = static_cast<Eigen::Index>(picked.size());
  require(count >= 8, "loglog_slope: fewer than 8 bands in range");

  Eigen::MatrixXd design(count, 2);
  Eigen::VectorXd rhs(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::log(spec.omegas[picked[static_cast<std::size_t>(i)]]);
    rhs[i] = std::log(spec.powers[picked[static_cast<std::size_t>(i)]]);
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  return {coef[1], coef[0], count};
}

}  // namespace rednoise
