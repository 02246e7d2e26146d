#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "opn/natural.hpp"
#include "opn/primality.hpp"
#include "opn/sieve.hpp"

namespace opn {

struct PrimePower {
  Natural prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

class FactorizationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prime-power decomposition, strictly increasing by prime. Empty means 1.
class Factorization {
 public:
  Factorization() = default;

  /// Validates: primes strictly increasing, each prime, exponents positive.
  static Factorization from_factors(std::vector<PrimePower> factors) {
    for (std::size_t j = 0; j < factors.size(); ++j) {
      if (factors[j].exponent == 0) throw DomainError("zero exponent in factorization");
      if (!is_prime(factors[j].prime)) {
        throw DomainError(to_string(factors[j].prime) + " is not prime");
      }
      if (j > 0 && !(factors[j - 1].prime < factors[j].prime)) {
        throw DomainError("factorization primes must be strictly increasing");
      }
    }
    Factorization f;
    f.factors_ = std::move(factors);
    return f;
  }

  std::span<const PrimePower> factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }

  Natural value() const {
    Natural v{1};
    for (const auto& [p, e] : factors_) v *= pow(p, e);
    return v;
  }

  /// Exponent of p, 0 when absent.
  unsigned exponent_of(Natural p) const {
    for (const auto& pp : factors_) {
      if (pp.prime == p) return pp.exponent;
    }
    return 0;
  }

  /// Factorization of value()^k.
  Factorization power(unsigned k) const {
    if (k == 0) return {};
    Factorization f = *this;
    for (auto& pp : f.factors_) pp.exponent *= k;
    return f;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  friend Factorization factor(Natural x, u64 seed);
  std::vector<PrimePower> factors_;
};

/// "3^2*11" style rendering; "1" for the empty factorization.
inline std::string to_string(const Factorization& f) {
  if (f.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : f.factors()) {
    if (!out.empty()) out += '*';
    out += to_string(p);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

inline bool is_squarefree(const Factorization& f) {
  return std::all_of(f.factors().begin(), f.factors().end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

namespace detail {

constexpr u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr int kRhoAttempts = 64;
inline constexpr u64 kRhoIterations = u64{1} << 24;

constexpr u64 gcd64(u64 a, u64 b) { return static_cast<u64>(binary_gcd(a, b)); }

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n, or 0 once the retry budget is spent. The polynomial constant
// and start point come from (n, seed) so the result is reproducible.
inline u64 rho_split(u64 n, u64 seed) {
  u64 state = splitmix64(n ^ seed);
  for (int attempt = 0; attempt < kRhoAttempts; ++attempt) {
    state = splitmix64(state);
    const u64 c = state % (n - 1) + 1;
    state = splitmix64(state);
    u64 y = state % n;
    u64 x = y;
    u64 ys = y;
    u64 q = 1;
    u64 g = 1;
    constexpr u64 kBatch = 128;
    u64 spent = 0;
    for (u64 r = 1; g == 1 && spent < kRhoIterations; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 steps = std::min(kBatch, r - k);
        for (u64 i = 0; i < steps; ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd64(q, n);
        spent += steps;
      }
    }
    if (g == n) {
      // The batch overshot; replay it one step at a time.
      do {
        ys = (mulmod(ys, ys, n) + c) % n;
        g = gcd64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

inline void split_into(u64 n, u64 seed, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = rho_split(n, seed);
  if (d == 0) {
    throw FactorizationFailure("composite " + to_string(Natural{n}) +
                               " resisted splitting within the retry budget");
  }
  split_into(d, seed, out);
  split_into(n / d, seed, out);
}

}  // namespace detail

inline constexpr u64 kDefaultRhoSeed = 0x6f70'6e5f'6763'6431ULL;

/// Exact factorization: trial division by primes below 10^6, then
/// Miller-Rabin, then Pollard rho on composite survivors. The survivor must
/// fit in 64 bits.
inline Factorization factor(Natural x, u64 seed = kDefaultRhoSeed) {
  if (x.is_zero()) throw DomainError("factor(0) is undefined");
  Factorization result;
  auto& out = result.factors_;
  for (std::uint32_t p32 : small_primes()) {
    const Natural p{p32};
    if (p * p > x) break;
    if (divides(p, x)) {
      unsigned e = 0;
      do {
        x /= p;
        ++e;
      } while (divides(p, x));
      out.push_back({p, e});
    }
  }
  if (x == Natural{1}) return result;
  constexpr u64 kTrialBound = 1'000'000;
  if (x < Natural{kTrialBound} * Natural{kTrialBound}) {
    out.push_back({x, 1});
    return result;
  }
  if (!x.fits_u64()) {
    throw DomainError("cofactor " + to_string(x) + " exceeds 64 bits; factorization out of scope");
  }
  std::vector<u64> primes;
  detail::split_into(x.to_u64(), seed, primes);
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!out.empty() && out.back().prime == Natural{p}) {
      ++out.back().exponent;
    } else {
      out.push_back({Natural{p}, 1});
    }
  }
  return result;
}

/// Factorization of m read off a smallest-prime-factor table.
inline Factorization factor_with_table(std::uint64_t m, const SpfTable& table) {
  if (m == 0 || m > table.limit()) throw DomainError("value outside spf table range");
  std::vector<PrimePower> out;
  while (m > 1) {
    const std::uint32_t p = table.at_unchecked(m);
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({Natural{p}, e});
  }
  return Factorization::from_factors(std::move(out));
}

}  // namespace opn
