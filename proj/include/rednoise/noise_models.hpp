#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string_view>
#include <variant>

#include <Eigen/Core>

#include "rednoise/rng.hpp"

namespace rednoise {

enum class Init { stationary, zero };

struct Ar1Params {
  double phi = 0.9;
  Init init = Init::stationary;
};

struct OuParams {
  double theta = 0.1;
  Init init = Init::stationary;
};

struct MixedParams {
  double theta = 0.1;
  double gamma = 0.5;
};

struct FgnParams {
  double hurst = 0.5;
};

namespace model {
/// dW
struct White {};
/// U_t dt, the red noise differential.
struct RedOuDt { OuParams ou; };
/// dU
struct DiffU { OuParams ou; };
/// gamma U_t dt + dW, both driven by the same W.
struct Mixed { MixedParams params; };
/// eps_k dt with eps an AR(1) sequence; integer grid only.
struct Ar1Driven { Ar1Params ar1; };
/// dB^H, fractional Gaussian noise.
struct Fgn { FgnParams fgn; };
}  // namespace model

using NoiseModel = std::variant<model::White, model::RedOuDt, model::DiffU,
                                model::Mixed, model::Ar1Driven, model::Fgn>;

/// Uniformly sampled path.
struct TimeSeries {
  double dt = 1.0;
  Eigen::VectorXd values;
};

/// Noise differentials over a fixed step, tagged with the generating model.
struct IncrementSeries {
  double dt = 1.0;
  Eigen::VectorXd values;
  NoiseModel model;
};

/// Throws std::invalid_argument if the active variant's parameters are out of range.
void validate(const NoiseModel& m);

std::string_view model_name(const NoiseModel& m);

// ---------------------------------------------------------------------------
// Closed-form autocovariances and spectra
// ---------------------------------------------------------------------------

namespace detail {
inline void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace detail

template <typename Scalar>
Scalar ar1_autocov(Scalar phi, std::int64_t tau) {
  detail::require(phi > 0 && phi < 1, "ar1_autocov: phi must lie in (0, 1)");
  using std::pow;
  return pow(phi, static_cast<Scalar>(tau < 0 ? -tau : tau)) / (1 - phi * phi);
}

template <typename Scalar>
Scalar ou_autocov(Scalar theta, Scalar tau) {
  detail::require(theta > 0, "ou_autocov: theta must be positive");
  using std::abs;
  using std::exp;
  return exp(-theta * abs(tau)) / (2 * theta);
}

/// Cov(U_dt - U_0, U_{tau+dt} - U_tau) for tau >= dt. Always negative.
template <typename Scalar>
Scalar ou_increment_cov(Scalar theta, Scalar dt, Scalar tau) {
  detail::require(theta > 0, "ou_increment_cov: theta must be positive");
  detail::require(dt > 0, "ou_increment_cov: dt must be positive");
  detail::require(tau >= dt, "ou_increment_cov: requires tau >= dt");
  using std::exp;
  using std::sinh;
  // 1 - cosh(x) == -2 sinh^2(x/2), free of cancellation for small x.
  const Scalar s = sinh(theta * dt / 2);
  return -2 * s * s * exp(-theta * tau) / theta;
}

/// Cov(B^H_t, B^H_{t+tau}).
template <typename Scalar>
Scalar fbm_autocov(Scalar hurst, Scalar t, Scalar tau) {
  detail::require(hurst > 0 && hurst < 1, "fbm_autocov: hurst must lie in (0, 1)");
  detail::require(t >= 0 && tau >= 0, "fbm_autocov: t and tau must be non-negative");
  using std::pow;
  const Scalar h2 = 2 * hurst;
  return (pow(t, h2) + pow(t + tau, h2) - pow(tau, h2)) / 2;
}

/// Covariance of fGn increments over step dt, m steps apart.
template <typename Scalar>
Scalar fgn_increment_cov(Scalar hurst, Scalar dt, std::int64_t m) {
  detail::require(hurst > 0 && hurst < 1, "fgn_increment_cov: hurst must lie in (0, 1)");
  using std::abs;
  using std::pow;
  const Scalar h2 = 2 * hurst;
  const Scalar k = abs(static_cast<Scalar>(m));
  return pow(dt, h2) * (pow(k + 1, h2) - 2 * pow(k, h2) + pow(abs(k - 1), h2)) / 2;
}

template <typename Scalar>
Scalar red_psd(Scalar theta, Scalar omega) {
  return 1 / (theta * theta + omega * omega);
}

template <typename Scalar>
Scalar diffu_psd(Scalar theta, Scalar omega) {
  const Scalar w2 = omega * omega;
  return w2 / (theta * theta + w2);
}

template <typename Scalar>
Scalar mixed_psd(Scalar theta, Scalar gamma, Scalar omega) {
  const Scalar g = gamma + theta;
  const Scalar w2 = omega * omega;
  return (g * g + w2) / (theta * theta + w2);
}

template <typename Scalar>
Scalar ar1_driven_psd(Scalar phi, Scalar omega) {
  using std::log;
  const Scalar l = log(phi);
  return -2 * l / ((1 - phi * phi) * (l * l + omega * omega));
}

/// Shape omega^(1-2H) with unit amplitude; the amplitude is not modelled.
template <typename Scalar>
Scalar fgn_psd_shape(Scalar hurst, Scalar omega) {
  using std::abs;
  using std::pow;
  return pow(abs(omega), 1 - 2 * hurst);
}

/// Continuous-time PSD of the model's differential.
double theoretical_psd(const NoiseModel& m, double omega);

/**
 * Closed-form autocovariance of the noise at lag tau.
 *
 * Ar1Driven: integer lag, R_eps(tau). RedOuDt: R_U(tau). DiffU: covariance of
 * increments over step dt, tau apart (tau >= dt). Other variants throw.
 */
double theoretical_acf(const NoiseModel& m, double tau, double dt = 1.0);

/**
 * Expected periodogram of the increments that increments() actually produces
 * on a grid of step dt, at angular frequency omega. Differs from
 * theoretical_psd by aliasing and by the Riemann/Euler discretisation; it
 * converges to theoretical_psd for omega * dt -> 0. Fgn is not supported.
 */
double sampled_psd(const NoiseModel& m, double omega, double dt);

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

/// eps_{k+1} = phi eps_k + z_k; eps_0 per init.
TimeSeries ar1_sample(const Ar1Params& params, Eigen::Index n, GaussianStream& stream);

/// Same recursion driven by explicit innovations; output length innovations.size() + 1.
TimeSeries ar1_recurse(double phi, double eps0, std::span<const double> innovations);

struct OuStep {
  double decay;        // e^{-theta dt}
  double noise_scale;  // sqrt((1 - e^{-2 theta dt}) / (2 theta))
};

OuStep ou_exact_step(double theta, double dt);

/// Exact OU values on the grid k*dt, k = 0..n-1.
TimeSeries ou_exact_sample(const OuParams& params, double dt, Eigen::Index n,
                           GaussianStream& stream);

/// fGn increments by circulant embedding, Cholesky fallback for small n.
IncrementSeries fgn_sample(const FgnParams& params, double dt, Eigen::Index n,
                           GaussianStream& stream);

/// Dense Cholesky fGn sampler, O(n^2) memory.
IncrementSeries fgn_sample_cholesky(const FgnParams& params, double dt, Eigen::Index n,
                                    GaussianStream& stream);

IncrementSeries increments(const NoiseModel& m, double dt, Eigen::Index n,
                           GaussianStream& stream);

}  // namespace rednoise
