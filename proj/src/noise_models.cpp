#include "rednoise/noise_models.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "overloaded.hpp"

namespace rednoise {

namespace {

using detail::overloaded;

using detail::require;

void check_ou(const OuParams& p) { require(p.theta > 0, "OU: theta must be positive"); }

void check_ar1(const Ar1Params& p) {
  require(p.phi > 0 && p.phi < 1, "AR(1): phi must lie in (0, 1)");
}

void check_hurst(double h) { require(h > 0 && h < 1, "fGn: hurst must lie in (0, 1)"); }

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

}  // namespace

void validate(const NoiseModel& m) {
  std::visit(overloaded{
                 [](const model::White&) {},
                 [](const model::RedOuDt& r) { check_ou(r.ou); },
                 [](const model::DiffU& d) { check_ou(d.ou); },
                 [](const model::Mixed& x) {
                   require(x.params.theta > 0, "mixed: theta must be positive");
                   require(std::isfinite(x.params.gamma), "mixed: gamma must be finite");
                 },
                 [](const model::Ar1Driven& a) { check_ar1(a.ar1); },
                 [](const model::Fgn& f) { check_hurst(f.fgn.hurst); },
             },
             m);
}

std::string_view model_name(const NoiseModel& m) {
  return std::visit(overloaded{
                        [](const model::White&) { return std::string_view("white"); },
                        [](const model::RedOuDt&) { return std::string_view("red"); },
                        [](const model::DiffU&) { return std::string_view("du"); },
                        [](const model::Mixed&) { return std::string_view("mixed"); },
                        [](const model::Ar1Driven&) { return std::string_view("ar1"); },
                        [](const model::Fgn&) { return std::string_view("fgn"); },
                    },
                    m);
}

double theoretical_psd(const NoiseModel& m, double omega) {
  validate(m);
  return std::visit(
      overloaded{
          [](const model::White&) { return 1.0; },
          [&](const model::RedOuDt& r) { return red_psd(r.ou.theta, omega); },
          [&](const model::DiffU& d) { return diffu_psd(d.ou.theta, omega); },
          [&](const model::Mixed& x) {
            return mixed_psd(x.params.theta, x.params.gamma, omega);
          },
          [&](const model::Ar1Driven& a) { return ar1_driven_psd(a.ar1.phi, omega); },
          [&](const model::Fgn& f) {
            require(omega != 0, "theoretical_psd: fGn spectrum diverges at omega = 0");
            return fgn_psd_shape(f.fgn.hurst, omega);
          },
      },
      m);
}

double theoretical_acf(const NoiseModel& m, double tau, double dt) {
  validate(m);
  return std::visit(
      overloaded{
          [](const model::White&) -> double {
            throw std::invalid_argument("theoretical_acf: white noise is delta-correlated");
          },
          [&](const model::RedOuDt& r) { return ou_autocov(r.ou.theta, tau); },
          [&](const model::DiffU& d) {
            return ou_increment_cov(d.ou.theta, dt, std::abs(tau));
          },
          [](const model::Mixed&) -> double {
            throw std::invalid_argument("theoretical_acf: no closed form for the mixed model");
          },
          [&](const model::Ar1Driven& a) {
            require(is_integer(tau), "theoretical_acf: AR(1) lag must be an integer");
            return ar1_autocov(a.ar1.phi, static_cast<std::int64_t>(tau));
          },
          [](const model::Fgn&) -> double {
            throw std::invalid_argument("theoretical_acf: no closed form for fGn noise");
          },
      },
      m);
}

double sampled_psd(const NoiseModel& m, double omega, double dt) {
  validate(m);
  require(dt > 0, "sampled_psd: dt must be positive");
  const double c = std::cos(omega * dt);
  // Spectrum of exact OU samples on the grid, per unit dt of the sum.
  auto ou_grid = [&](double theta) {
    const double a = std::exp(-theta * dt);
    return (1 - a * a) / (2 * theta * (1 - 2 * a * c + a * a));
  };
  return std::visit(
      overloaded{
          [](const model::White&) { return 1.0; },
          [&](const model::RedOuDt& r) { return dt * ou_grid(r.ou.theta); },
          [&](const model::DiffU& d) { return (2 - 2 * c) / dt * ou_grid(d.ou.theta); },
          [&](const model::Mixed& x) {
            const double b = 1 - x.params.theta * dt;
            const std::complex<double> z = std::polar(1.0, -omega * dt);
            const std::complex<double> h = 1.0 + x.params.gamma * dt * z / (1.0 - b * z);
            return std::norm(h);
          },
          [&](const model::Ar1Driven& a) {
            require(dt == 1.0, "sampled_psd: AR(1)-driven noise is defined on dt = 1 only");
            const double phi = a.ar1.phi;
            return 1 / (1 - 2 * phi * c + phi * phi);
          },
          [](const model::Fgn&) -> double {
            throw std::invalid_argument("sampled_psd: not available for fGn");
          },
      },
      m);
}

TimeSeries ar1_recurse(double phi, double eps0, std::span<const double> innovations) {
  require(phi > 0 && phi < 1, "ar1: phi must lie in (0, 1)");
  TimeSeries out{1.0, Eigen::VectorXd(static_cast<Eigen::Index>(innovations.size()) + 1)};
  double eps = eps0;
  out.values[0] = eps;
  for (std::size_t k = 0; k < innovations.size(); ++k) {
    eps = phi * eps + innovations[k];
    out.values[static_cast<Eigen::Index>(k) + 1] = eps;
  }
  return out;
}

TimeSeries ar1_sample(const Ar1Params& params, Eigen::Index n, GaussianStream& stream) {
  check_ar1(params);
  require(n >= 1, "ar1_sample: n must be at least 1");
  const double phi = params.phi;
  const double eps0 =
      params.init == Init::stationary ? stream.next() / std::sqrt(1 - phi * phi) : 0.0;
  const Eigen::VectorXd z = gaussian_fill(stream, n - 1);
  return ar1_recurse(phi, eps0, std::span<const double>(z.data(), z.size()));
}

OuStep ou_exact_step(double theta, double dt) {
  require(theta > 0, "ou: theta must be positive");
  require(dt > 0, "ou: dt must be positive");
  // 1 - e^{-2 theta dt} via expm1 keeps the innovation scale accurate for tiny steps.
  return {std::exp(-theta * dt), std::sqrt(-std::expm1(-2 * theta * dt) / (2 * theta))};
}

TimeSeries ou_exact_sample(const OuParams& params, double dt, Eigen::Index n,
                           GaussianStream& stream) {
  const OuStep step = ou_exact_step(params.theta, dt);
  require(n >= 1, "ou_exact_sample: n must be at least 1");
  TimeSeries out{dt, Eigen::VectorXd(n)};
  double q = params.init == Init::stationary ? stream.next() / std::sqrt(2 * params.theta) : 0.0;
  out.values[0] = q;
  for (Eigen::Index k = 1; k < n; ++k) {
    q = step.decay * q + step.noise_scale * stream.next();
    out.values[k] = q;
  }
  return out;
}

IncrementSeries increments(const NoiseModel& m, double dt, Eigen::Index n,
                           GaussianStream& stream) {
  validate(m);
  require(dt > 0, "increments: dt must be positive");
  require(n >= 1, "increments: n must be at least 1");
  return std::visit(
      overloaded{
          [&](const model::White&) {
            return IncrementSeries{dt, std::sqrt(dt) * gaussian_fill(stream, n), m};
          },
          [&](const model::RedOuDt& r) {
            // Left-endpoint rule: dY_k = U_{k dt} dt.
            TimeSeries u = ou_exact_sample(r.ou, dt, n, stream);
            return IncrementSeries{dt, u.values * dt, m};
          },
          [&](const model::DiffU& d) {
            TimeSeries u = ou_exact_sample(d.ou, dt, n + 1, stream);
            return IncrementSeries{dt, u.values.tail(n) - u.values.head(n), m};
          },
          [&](const model::Mixed& x) {
            // Euler on one Brownian path: the same dW drives U and appears in dY.
            const double theta = x.params.theta;
            const double gamma = x.params.gamma;
            const double sqdt = std::sqrt(dt);
            double u = stream.next() / std::sqrt(2 * theta);
            Eigen::VectorXd dy(n);
            for (Eigen::Index k = 0; k < n; ++k) {
              const double dw = sqdt * stream.next();
              dy[k] = gamma * u * dt + dw;
              u = u - theta * u * dt + dw;
            }
            return IncrementSeries{dt, std::move(dy), m};
          },
          [&](const model::Ar1Driven& a) {
            require(dt == 1.0, "increments: AR(1)-driven noise is only defined for dt = 1");
            TimeSeries eps = ar1_sample(a.ar1, n, stream);
            return IncrementSeries{dt, std::move(eps.values), m};
          },
          [&](const model::Fgn& f) { return fgn_sample(f.fgn, dt, n, stream); },
      },
      m);
}

}  // namespace rednoise
