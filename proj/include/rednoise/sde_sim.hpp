#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>

#include "rednoise/noise_models.hpp"

namespace rednoise {

/// X_{k+1} = psi X_k + sigma eps_k, eps_{k+1} = phi eps_k + z_k, eps_0 = 0.
struct DiscreteSystemParams {
  double psi = 0.8;
  double phi = 0.9;
  double sigma = 1.0;
  double x0 = 0.0;
};

/// dX = -lambda X dt + sigma U dt, dU = -theta U dt + dW, U_0 = 0.
struct ContinuousSystemParams {
  double lambda = 0.0;
  double theta = 0.0;
  double sigma = 1.0;
  double x0 = 0.0;

  /// lambda = -ln(psi), theta = -ln(phi).
  static ContinuousSystemParams from_discrete(const DiscreteSystemParams& d);
};

struct SimConfig {
  double dt_fine = 0.1;
  Eigen::Index subsample = 10;
  Eigen::Index n_out = 1;

  [[nodiscard]] double output_dt() const { return dt_fine * static_cast<double>(subsample); }
};

void validate(const DiscreteSystemParams& p);
void validate(const ContinuousSystemParams& p);
void validate(const SimConfig& c);

TimeSeries simulate_discrete(const DiscreteSystemParams& params, Eigen::Index n,
                             GaussianStream& stream);

/// Discrete system driven by explicit unit normals; needs n - 2 of them for n >= 2.
TimeSeries simulate_discrete(const DiscreteSystemParams& params, Eigen::Index n,
                             std::span<const double> normals);

/**
 * Two-level scheme: U on the fine grid by the exact OU recursion, X by Euler
 * on the same grid, every subsample-th value emitted (X_0 first). Memory is
 * O(n_out); the fine path is never stored.
 */
TimeSeries simulate_continuous(const ContinuousSystemParams& params, const SimConfig& config,
                               GaussianStream& stream);

/// Message when lambda * dt_fine > 0.05, i.e. Euler error may exceed 1% tolerances.
std::optional<std::string> step_size_warning(const ContinuousSystemParams& params,
                                             const SimConfig& config);

/// X_{k+1} = X_k - lambda X_k dt + sigma dY_k; output has forcing.size() + 1 values.
TimeSeries euler_integrate(double lambda, double sigma, double x0, const IncrementSeries& forcing);

/// Time discarded before estimating stationary statistics: max(10/lambda, 10/theta).
double burn_in_time(const ContinuousSystemParams& params);

/**
 * Asymptotic autocorrelation of X, sigma^2 (lambda e^{-theta|tau|} - theta e^{-lambda|tau|}) / (lambda - theta).
 * Equals sigma^2 at tau = 0 and is symmetric in (lambda, theta). Near lambda = theta
 * (relative gap below 1e-8) the limit sigma^2 e^{-theta|tau|} (1 + theta|tau|) is used.
 */
template <typename Scalar>
Scalar stationary_autocorr(Scalar lambda, Scalar theta, Scalar sigma, Scalar tau) {
  detail::require(lambda > 0 && theta > 0 && sigma > 0,
                  "stationary_autocorr: lambda, theta and sigma must be positive");
  using std::abs;
  using std::exp;
  using std::max;
  const Scalar t = abs(tau);
  const Scalar s2 = sigma * sigma;
  if (abs(lambda - theta) < Scalar(1e-8) * max(lambda, theta)) {
    const Scalar rate = (lambda + theta) / 2;
    return s2 * exp(-rate * t) * (1 + rate * t);
  }
  return s2 * (lambda * exp(-theta * t) - theta * exp(-lambda * t)) / (lambda - theta);
}

}  // namespace rednoise
