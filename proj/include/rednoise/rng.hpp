#pragma once

#include <cstdint>
#include <random>
#include <span>

#include <Eigen/Core>

namespace rednoise {

/// Root seed of a run. Equal seeds give bit-identical streams on the same build.
struct Seed {
  std::uint64_t value = 0;

  friend bool operator==(Seed, Seed) = default;
};

/**
 * Single-owner source of i.i.d. standard Gaussian variates.
 *
 * A stream is identified by its root seed and a substream id. Substreams are
 * derived with split(), so independent noise sources (the OU innovations of
 * one path, the Brownian increments of another, one replica per index) can
 * all hang off a single --seed value and still be reproduced individually.
 */
class GaussianStream {
 public:
  explicit GaussianStream(Seed seed, std::uint64_t substream = 0);

  double next() { ++count_drawn_; return normal_(engine_); }

  void fill(std::span<double> out);

  /// Independent stream keyed by (this stream's key, id). Does not touch this stream's state.
  [[nodiscard]] GaussianStream split(std::uint64_t id) const;

  [[nodiscard]] Seed seed() const { return seed_; }
  [[nodiscard]] std::uint64_t substream() const { return substream_; }
  [[nodiscard]] std::uint64_t count_drawn() const { return count_drawn_; }

 private:
  Seed seed_;
  std::uint64_t substream_;
  std::uint64_t count_drawn_ = 0;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// n fresh draws from the stream; advances count_drawn by n.
Eigen::VectorXd gaussian_fill(GaussianStream& stream, Eigen::Index n);

}  // namespace rednoise
