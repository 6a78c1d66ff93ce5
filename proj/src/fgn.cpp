#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "fft.hpp"
#include "rednoise/noise_models.hpp"

namespace rednoise {

namespace {

// Cholesky fallback is only attempted below this length (dense n x n factor).
constexpr Eigen::Index kCholeskyLimit = Eigen::Index{1} << 14;

void check_args(const FgnParams& params, double dt, Eigen::Index n) {
  detail::require(params.hurst > 0 && params.hurst < 1, "fgn: hurst must lie in (0, 1)");
  detail::require(dt > 0, "fgn: dt must be positive");
  detail::require(n >= 1, "fgn: n must be at least 1");
}

}  // namespace

IncrementSeries fgn_sample_cholesky(const FgnParams& params, double dt, Eigen::Index n,
                                    GaussianStream& stream) {
  check_args(params, dt, n);
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      cov(i, j) = cov(j, i) = fgn_increment_cov(params.hurst, dt, i - j);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("fgn: covariance matrix is not positive definite");
  Eigen::VectorXd z = gaussian_fill(stream, n);
  return {dt, llt.matrixL() * z, model::Fgn{params}};
}

IncrementSeries fgn_sample(const FgnParams& params, double dt, Eigen::Index n,
                           GaussianStream& stream) {
  check_args(params, dt, n);
  if (n == 1) {
    Eigen::VectorXd v(1);
    v[0] = std::pow(dt, params.hurst) * stream.next();
    return {dt, std::move(v), model::Fgn{params}};
  }

  // Circulant embedding of the Toeplitz covariance, size 2n.
  const auto m = static_cast<std::size_t>(2 * n);
  std::vector<std::complex<double>> spectrum(m);
  for (Eigen::Index k = 0; k <= n; ++k) {
    const double g = fgn_increment_cov(params.hurst, dt, k);
    spectrum[static_cast<std::size_t>(k)] = g;
    if (k > 0 && k < n) spectrum[m - static_cast<std::size_t>(k)] = g;
  }
  fft::forward_complex(spectrum);

  double largest = 0.0;
  double smallest = 0.0;
  for (const auto& v : spectrum) {
    largest = std::max(largest, v.real());
    smallest = std::min(smallest, v.real());
  }
  if (smallest < -1e-10 * largest) {
    if (n < kCholeskyLimit) return fgn_sample_cholesky(params, dt, n, stream);
    throw std::runtime_error("fgn: circulant embedding is not nonnegative definite");
  }

  // y = F (sqrt(lambda / m) * (a + i b)); Re(y) has exactly the target covariance.
  const double inv_m = 1.0 / static_cast<double>(m);
  for (auto& v : spectrum) {
    const double scale = std::sqrt(std::max(v.real(), 0.0) * inv_m);
    const double a = stream.next();
    const double b = stream.next();
    v = {scale * a, scale * b};
  }
  fft::forward_complex(spectrum);

  Eigen::VectorXd out(n);
  for (Eigen::Index k = 0; k < n; ++k) out[k] = spectrum[static_cast<std::size_t>(k)].real();
  return {dt, std::move(out), model::Fgn{params}};
}

}  // namespace rednoise
