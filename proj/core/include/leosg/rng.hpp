#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace leosg {

// A reproducible random stream keyed by (master_seed, substream_id).
//
// The same key yields the same sequence on every platform and under any thread
// schedule: the engine is std::mt19937_64 seeded through std::seed_seq (both fully
// specified by the standard) and all distributions come from Boost.Random, whose
// algorithms do not vary between standard libraries.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t master_seed, std::uint64_t substream_id = 0);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t substream_id() const { return substream_id_; }

  // Independent stream for a sub-task; deterministic in (master_seed, substream_id, id).
  RngStream child(std::uint64_t id) const;

  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  // [0, 1) with 53 random bits.
  double uniform();
  // (0, 1].
  double uniform_positive();
  double uniform(double lo, double hi);
  double normal(double mean, double stddev);
  double exponential(double mean);
  // Gamma with the given shape and scale (mean = shape * scale).
  double gamma(double shape, double scale);
  std::uint64_t poisson(double mean);
  bool bernoulli(double p);

 private:
  std::uint64_t master_seed_;
  std::uint64_t substream_id_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used for substream key derivation.
std::uint64_t mix64(std::uint64_t x);

}  // namespace leosg
