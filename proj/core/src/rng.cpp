#include "freight/rng.hpp"

#include <boost/math/distributions/normal.hpp>
#include <stdexcept>

namespace freight {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t seed, Stream stream) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ (static_cast<std::uint64_t>(stream) * 0xD1B54A32D192ED03ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32)};
  return Rng(seq);
}

double uniform_open01(Rng& rng) {
  // (k + 0.5) / 2^53 is never 0 or 1.
  const std::uint64_t k = rng() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

int uniform_int(Rng& rng, int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  if (span == 1) return lo;
  const std::uint64_t limit = Rng::max() - (Rng::max() % span);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return static_cast<int>(lo + static_cast<std::int64_t>(x % span));
}

double standard_normal_quantile(double p) {
  static const boost::math::normal_distribution<double> standard;
  return boost::math::quantile(standard, p);
}

double sample_normal(Rng& rng, double mu, double sigma) {
  return mu + sigma * standard_normal_quantile(uniform_open01(rng));
}

}  // namespace freight
