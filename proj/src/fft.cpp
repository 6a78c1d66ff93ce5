#include "fft.hpp"

#include <cstring>
#include <limits>
#include <memory>
#include <stdexcept>

#include <fftw3.h>

namespace rednoise::fft {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
struct PlanDestroy {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

template <typename T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  return std::unique_ptr<T[], FftwFree>(p);
}

using Plan = std::unique_ptr<fftw_plan_s, PlanDestroy>;

int checked_size(std::size_t n) {
  if (n == 0 || n > static_cast<std::size_t>(std::numeric_limits<int>::max()))
    throw std::length_error("fft: unsupported transform length");
  return static_cast<int>(n);
}

}  // namespace

// FFTW_ESTIMATE picks plans without timing, so output is reproducible run to run.

std::vector<std::complex<double>> forward_real(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const auto n = static_cast<std::size_t>(x.size());
  const int len = checked_size(n);
  const std::size_t half = n / 2 + 1;
  auto in = fftw_buffer<double>(n);
  auto out = fftw_buffer<fftw_complex>(half);
  Plan plan(fftw_plan_dft_r2c_1d(len, in.get(), out.get(), FFTW_ESTIMATE));
  if (!plan) throw std::runtime_error("fft: planning failed");
  for (std::size_t k = 0; k < n; ++k) in[k] = x[static_cast<Eigen::Index>(k)];
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(half);
  std::memcpy(static_cast<void*>(result.data()), out.get(), sizeof(fftw_complex) * half);
  return result;
}

void forward_complex(std::vector<std::complex<double>>& data) {
  const std::size_t n = data.size();
  const int len = checked_size(n);
  auto buf = fftw_buffer<fftw_complex>(n);
  Plan plan(fftw_plan_dft_1d(len, buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE));
  if (!plan) throw std::runtime_error("fft: planning failed");
  std::memcpy(static_cast<void*>(buf.get()), data.data(), sizeof(fftw_complex) * n);
  fftw_execute(plan.get());
  std::memcpy(static_cast<void*>(data.data()), buf.get(), sizeof(fftw_complex) * n);
}

}  // namespace rednoise::fft
