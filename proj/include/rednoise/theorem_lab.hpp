#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "rednoise/noise_models.hpp"

namespace rednoise {

/**
 * f1(T, omega, theta) = int_0^T int_0^T e^{-i omega (t-s)} e^{-theta|t-s|} / (2 theta) ds dt,
 * i.e. T times the finite-horizon PSD of U_t dt for stationary U:
 *
 *   T/(theta^2+omega^2)
 *     + [(omega^2-theta^2)(1 - e^{-theta T} cos(omega T)) - 2 theta omega e^{-theta T} sin(omega T)]
 *       / (theta (theta^2+omega^2)^2)
 */
template <typename Scalar>
Scalar f1(Scalar horizon, Scalar omega, Scalar theta) {
  detail::require(horizon > 0, "f1: T must be positive");
  detail::require(theta > 0, "f1: theta must be positive");
  using std::cos;
  using std::exp;
  using std::sin;
  const Scalar w2 = omega * omega;
  const Scalar t2 = theta * theta;
  const Scalar d = t2 + w2;
  const Scalar decay = exp(-theta * horizon);
  const Scalar edge = (w2 - t2) * (1 - decay * cos(omega * horizon)) -
                      2 * theta * omega * decay * sin(omega * horizon);
  return horizon / d + edge / (theta * d * d);
}

/**
 * f2(T, omega, theta) = int_0^T int_0^t e^{-i omega (s-t)} e^{-theta (t-s)} ds dt
 *                     = [T b + e^{-T b} - 1] / b^2,   b = theta - i omega.
 *
 * The bracket is summed as a series when |T b| is small to avoid cancellation.
 */
template <typename Scalar>
std::complex<Scalar> f2(Scalar horizon, Scalar omega, Scalar theta) {
  detail::require(horizon > 0, "f2: T must be positive");
  detail::require(theta > 0, "f2: theta must be positive");
  using C = std::complex<Scalar>;
  const C b(theta, -omega);
  const C x = horizon * b;
  if (std::abs(x) < Scalar(0.25)) {
    // e^{-x} - 1 + x = x^2 sum_{k>=0} (-x)^k / (k+2)!
    C term(Scalar(1) / 2);
    C sum = term;
    for (int k = 1; k < 40; ++k) {
      term *= -x / Scalar(k + 2);
      sum += term;
      if (std::abs(term) < std::numeric_limits<Scalar>::epsilon() * std::abs(sum)) break;
    }
    return horizon * horizon * sum;
  }
  return (x + std::exp(-x) - Scalar(1)) / (b * b);
}

/// Finite-horizon PSD S^(T). RedOuDt: f1/T. Mixed: (gamma^2 f1 + 2 gamma Re f2 + T)/T.
double finite_psd_theoretical(const NoiseModel& m, double horizon, double omega);

struct TheoremConfig {
  double theta = 0.1;
  double beta = 1.0;
  double horizon = 1e3;
  double dt = 1e-2;
  Eigen::Index replicas = 64;
  double omega_lo = 10.0;
  double omega_hi = 30.0;
  Eigen::Index band_width = 64;
  /// Plateau target; beta^2 when unset. A target of 0 selects the decay assertions.
  std::optional<double> target;
  double plateau_tolerance = 0.05;
  double slope_tolerance = 0.2;
  double ratio_tolerance = 0.2;
};

struct TheoremBand {
  double omega;
  double empirical;
  double theoretical;
};

struct TheoremReport {
  std::vector<TheoremBand> bands;
  double target = 0.0;
  double plateau = 0.0;         // mean replica-averaged power over [omega_lo, omega_hi]
  double decay_slope = 0.0;     // log-log slope over the window
  double power_ratio = 0.0;     // band power near omega_lo over band power near 2 omega_lo
  bool pass = false;
  std::string summary;          // one line, machine parseable
};

void validate(const TheoremConfig& config);

/**
 * dY_k = U_k dt + beta dW_k with U a stationary OU process independent of W.
 * Periodograms are averaged over replicas (each on its own substream) and
 * then over bands of band_width bins.
 *
 * target > 0: pass iff the plateau is within plateau_tolerance of target.
 * target = 0: pass iff the window slope is within slope_tolerance of -2 and
 * the power ratio between omega_lo and 2 omega_lo is within ratio_tolerance of 4.
 */
TheoremReport theorem_experiment(const TheoremConfig& config, const GaussianStream& stream);

}  // namespace rednoise
