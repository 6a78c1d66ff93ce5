#include "rednoise/sde_sim.hpp"

#include <algorithm>
#include <cstdio>

namespace rednoise {

namespace {

using detail::require;

inline double euler_step(double x, double lambda, double sigma, double dt, double dy) {
  return x - lambda * x * dt + sigma * dy;
}

}  // namespace

ContinuousSystemParams ContinuousSystemParams::from_discrete(const DiscreteSystemParams& d) {
  validate(d);
  return {-std::log(d.psi), -std::log(d.phi), d.sigma, d.x0};
}

void validate(const DiscreteSystemParams& p) {
  require(p.psi > 0 && p.psi < 1, "discrete system: psi must lie in (0, 1)");
  require(p.phi > 0 && p.phi < 1, "discrete system: phi must lie in (0, 1)");
  require(p.sigma > 0, "discrete system: sigma must be positive");
  require(std::isfinite(p.x0), "discrete system: x0 must be finite");
}

void validate(const ContinuousSystemParams& p) {
  require(p.lambda > 0, "continuous system: lambda must be positive");
  require(p.theta > 0, "continuous system: theta must be positive");
  require(p.sigma > 0, "continuous system: sigma must be positive");
  require(std::isfinite(p.x0), "continuous system: x0 must be finite");
}

void validate(const SimConfig& c) {
  require(c.dt_fine > 0, "simulation: dt_fine must be positive");
  require(c.subsample >= 1, "simulation: subsample must be at least 1");
  require(c.n_out >= 1, "simulation: n_out must be at least 1");
}

TimeSeries simulate_discrete(const DiscreteSystemParams& params, Eigen::Index n,
                             std::span<const double> normals) {
  validate(params);
  require(n >= 1, "simulate_discrete: n must be at least 1");
  const auto needed = static_cast<std::size_t>(std::max<Eigen::Index>(n - 2, 0));
  require(normals.size() >= needed, "simulate_discrete: not enough unit normals");

  TimeSeries out{1.0, Eigen::VectorXd(n)};
  double x = params.x0;
  double eps = 0.0;
  out.values[0] = x;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    x = params.psi * x + params.sigma * eps;
    out.values[k + 1] = x;
    if (k + 2 < n) eps = params.phi * eps + normals[static_cast<std::size_t>(k)];
  }
  return out;
}

TimeSeries simulate_discrete(const DiscreteSystemParams& params, Eigen::Index n,
                             GaussianStream& stream) {
  validate(params);
  require(n >= 1, "simulate_discrete: n must be at least 1");
  const Eigen::VectorXd z = gaussian_fill(stream, std::max<Eigen::Index>(n - 2, 0));
  return simulate_discrete(params, n, std::span<const double>(z.data(), z.size()));
}

TimeSeries simulate_continuous(const ContinuousSystemParams& params, const SimConfig& config,
                               GaussianStream& stream) {
  validate(params);
  validate(config);
  const OuStep ou = ou_exact_step(params.theta, config.dt_fine);
  const double dt = config.dt_fine;
  const Eigen::Index steps = (config.n_out - 1) * config.subsample;

  TimeSeries out{config.output_dt(), Eigen::VectorXd(config.n_out)};
  double x = params.x0;
  double u = 0.0;
  out.values[0] = x;
  for (Eigen::Index j = 0; j < steps; ++j) {
    x = euler_step(x, params.lambda, params.sigma, dt, u * dt);
    if (j + 1 < steps) u = ou.decay * u + ou.noise_scale * stream.next();
    if ((j + 1) % config.subsample == 0) out.values[(j + 1) / config.subsample] = x;
  }
  return out;
}

std::optional<std::string> step_size_warning(const ContinuousSystemParams& params,
                                             const SimConfig& config) {
  const double product = params.lambda * config.dt_fine;
  if (product <= 0.05) return std::nullopt;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "lambda*dt_fine = %.4g exceeds 0.05; Euler error may exceed 1%% tolerances",
                product);
  return std::string(buf);
}

TimeSeries euler_integrate(double lambda, double sigma, double x0, const IncrementSeries& forcing) {
  require(forcing.values.size() >= 1, "euler_integrate: forcing must be non-empty");
  require(forcing.dt > 0, "euler_integrate: dt must be positive");
  const Eigen::Index n = forcing.values.size();
  TimeSeries out{forcing.dt, Eigen::VectorXd(n + 1)};
  double x = x0;
  out.values[0] = x;
  for (Eigen::Index k = 0; k < n; ++k) {
    x = euler_step(x, lambda, sigma, forcing.dt, forcing.values[k]);
    out.values[k + 1] = x;
  }
  return out;
}

double burn_in_time(const ContinuousSystemParams& params) {
  validate(params);
  return std::max(10.0 / params.lambda, 10.0 / params.theta);
}

}  // namespace rednoise
