#include "rednoise/rng.hpp"

#include <stdexcept>

namespace rednoise {

namespace {

std::mt19937_64 make_engine(Seed seed, std::uint64_t substream) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed.value), hi(seed.value), lo(substream), hi(substream)};
  return std::mt19937_64(seq);
}

// splitmix64 finalizer, used to turn (parent key, child id) into a child key.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

GaussianStream::GaussianStream(Seed seed, std::uint64_t substream)
    : seed_(seed), substream_(substream), engine_(make_engine(seed, substream)) {}

void GaussianStream::fill(std::span<double> out) {
  for (double& v : out) v = normal_(engine_);
  count_drawn_ += out.size();
}

GaussianStream GaussianStream::split(std::uint64_t id) const {
  return GaussianStream(seed_, mix(mix(substream_) ^ id));
}

Eigen::VectorXd gaussian_fill(GaussianStream& stream, Eigen::Index n) {
  if (n < 0) throw std::invalid_argument("gaussian_fill: negative count");
  Eigen::VectorXd out(n);
  stream.fill(std::span<double>(out.data(), static_cast<std::size_t>(n)));
  return out;
}

}  // namespace rednoise
