#pragma once

#include <complex>
#include <cstdint>

namespace ndstc {

/// Counter-based splittable pseudo-random stream.
///
/// The generator is SplitMix64: the state is a counter advanced by a fixed
/// odd increment and each output is a bijective finalizer of the counter.
/// A stream is fully determined by (master_seed, stream_id), so identical
/// seeds reproduce identical draw sequences regardless of thread schedule,
/// and derive() yields substreams that are independent of how many draws
/// the parent has made.
///
/// The algorithm identifier recorded in result files is algorithm_id().
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  static const char* algorithm_id() { return "splitmix64-v1"; }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Substream keyed by child_id; a pure function of (master_seed,
  /// stream_id, child_id), not of the parent's position.
  RngStream derive(std::uint64_t child_id) const;

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double next_double();

  /// Standard normal (Box-Muller; the spare is cached).
  double next_gaussian();

  /// Circularly symmetric complex Gaussian with E|x|^2 = variance.
  std::complex<double> next_cgaussian(double variance);

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ndstc
