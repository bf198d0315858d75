#include "leosg/rng.hpp"

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

namespace leosg {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t master_seed, std::uint64_t substream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(substream_id), static_cast<std::uint32_t>(substream_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t substream_id)
    : master_seed_(master_seed), substream_id_(substream_id), engine_(seeded_engine(master_seed, substream_id)) {}

RngStream RngStream::child(std::uint64_t id) const {
  return RngStream(master_seed_, mix64(substream_id_ ^ mix64(id)));
}

double RngStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RngStream::uniform_positive() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RngStream::normal(double mean, double stddev) {
  if (stddev == 0.0) {
    return mean;
  }
  return boost::random::normal_distribution<double>(mean, stddev)(engine_);
}

double RngStream::exponential(double mean) {
  return mean * boost::random::exponential_distribution<double>(1.0)(engine_);
}

double RngStream::gamma(double shape, double scale) {
  return boost::random::gamma_distribution<double>(shape, scale)(engine_);
}

std::uint64_t RngStream::poisson(double mean) {
  if (mean <= 0.0) {
    return 0;
  }
  return boost::random::poisson_distribution<std::uint64_t, double>(mean)(engine_);
}

bool RngStream::bernoulli(double p) { return uniform() < p; }

}  // namespace leosg
