#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace rednoise::fft {

/// X_j = sum_k x_k e^{-2 pi i j k / n}, j = 0..n/2.
std::vector<std::complex<double>> forward_real(const Eigen::Ref<const Eigen::VectorXd>& x);

/// In-place unnormalised forward complex transform.
void forward_complex(std::vector<std::complex<double>>& data);

}  // namespace rednoise::fft
