// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_RNG_HPP
#define GUIDED_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace guided {

/// SplitMix64 finalizer. Used to derive engine seeds and to hash
/// (seed, index) tuples into independent run seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Mixes a base seed with up to two indices into a new 64-bit seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/**
 * Deterministic stream of pseudo-random draws identified by (seed, stream_id).
 *
 * The underlying engine is std::mt19937_64, whose output sequence is fixed
 * by the C++ standard, so identical (seed, stream_id) pairs produce identical
 * draw sequences on every platform. Distinct stream_ids under one seed give
 * independent streams (train data, batch shuffling, parameter init, ...).
 *
 * Gaussian variates use the Marsaglia polar transform rather than
 * std::normal_distribution, whose algorithm is implementation-defined.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Fresh stream derived from the same base seed.
  Rng split(std::uint64_t stream_id) const { return Rng(seed_, stream_id); }

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit();

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n);

  /// Standard normal variate.
  double next_gaussian();

  /// n standard normal variates, advancing the stream.
  std::vector<double> gaussians(std::size_t n);

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// In-place Fisher-Yates shuffle with draws from rng.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace guided

#endif  // GUIDED_RNG_HPP
