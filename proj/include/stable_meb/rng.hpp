#pragma once

#include <cstdint>
#include <random>

namespace smeb {

/// Reproducible random stream identified by (seed, stream id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit halves of seed and stream id. Both are fully specified by the
/// standard, and the bounded-integer, uniform and normal draws below are
/// implemented here rather than through std::*_distribution (whose output is
/// implementation-defined), so a given (seed, stream id) produces the same
/// sequence on every conforming toolchain.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be >= 1.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01();

  /// Standard normal deviate (Marsaglia polar method).
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace smeb
