#pragma once

// Seeded generator of abstract triples covering dense divisor lattices.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>

#include "opn/identity.hpp"
#include "opn/primality.hpp"

namespace opn {

inline constexpr std::uint64_t kDefaultSeed = 20200101;

class TripleGenerator {
 public:
  explicit TripleGenerator(std::uint64_t seed = kDefaultSeed) : rng_(seed) {}

  /// n: 1 to 4 distinct primes from {3, ..., 31}, exponents 1 to 3, n <= 10^6.
  /// i: each exponent uniform in [0, 2e]. q: smallest prime = 1 (mod 4) not
  /// dividing n. k: 1 or 5.
  AbstractTriple next() {
    static constexpr std::array<std::uint64_t, 10> kPrimes = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    static constexpr std::uint64_t kCap = 1'000'000;

    std::array<std::uint64_t, 10> pool = kPrimes;
    std::shuffle(pool.begin(), pool.end(), rng_);
    const int count = std::uniform_int_distribution<int>(1, 4)(rng_);

    std::uint64_t n = 1;
    std::uint64_t i = 1;
    for (int j = 0; j < count; ++j) {
      const std::uint64_t p = pool[j];
      unsigned e = std::uniform_int_distribution<unsigned>(1, 3)(rng_);
      // Lower the exponent until the cap holds; a prime that cannot fit at all is skipped.
      while (e > 0 && n * ipow(p, e) > kCap) --e;
      if (e == 0) continue;
      n *= ipow(p, e);
      i *= ipow(p, std::uniform_int_distribution<unsigned>(0, 2 * e)(rng_));
    }

    std::uint64_t q = 5;
    while (!(is_prime(q) && n % q != 0)) q += 4;
    const unsigned k = std::bernoulli_distribution(0.5)(rng_) ? 1 : 5;
    return AbstractTriple::make(Natural{n}, Natural{i}, Natural{q}, k);
  }

 private:
  static constexpr std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
  }
  std::mt19937_64 rng_;
};

}  // namespace opn
