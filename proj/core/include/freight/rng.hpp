#pragma once

#include <cstdint>
#include <random>

namespace freight {

using Rng = std::mt19937_64;

// Independent sub-streams of one replication seed. Each consumer owns its
// stream, so changing how much randomness one agent draws never shifts the
// numbers seen by the market or the other agent.
enum class Stream : std::uint64_t {
  kArrivals = 1,
  kShipperPolicy = 2,
  kCarrierPolicy = 3,
  kShipperInit = 4,
  kCarrierInit = 5,
  kShipperCriticInit = 6,
  kCarrierCriticInit = 7,
};

std::uint64_t splitmix64(std::uint64_t x);

Rng make_stream(std::uint64_t seed, Stream stream);

/// Uniform draw on the open interval (0, 1) from the top 53 bits.
double uniform_open01(Rng& rng);

/// Uniform integer in [lo, hi]. Platform-independent (no std distribution).
int uniform_int(Rng& rng, int lo, int hi);

/// Quantile of the standard normal distribution.
double standard_normal_quantile(double p);

/// Normal variate by inverse-CDF sampling.
double sample_normal(Rng& rng, double mu, double sigma);

}  // namespace freight
