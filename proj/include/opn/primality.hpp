#pragma once

// Deterministic 64-bit primality.

#include <array>

#include "opn/natural.hpp"

namespace opn {

constexpr u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128{a} * b % m); }

constexpr u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

namespace detail {

// The first twelve primes are a complete Miller-Rabin witness set below
// 3.3 * 10^24, which covers every 64-bit input.
inline constexpr std::array<u64, 12> kMillerRabinWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

constexpr bool miller_rabin(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

constexpr bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : detail::kMillerRabinWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : detail::kMillerRabinWitnesses) {
    if (!detail::miller_rabin(n, a, d, s)) return false;
  }
  return true;
}

/// Primality for Naturals; values above 64 bits are out of scope.
inline bool is_prime(Natural n) {
  if (!n.fits_u64()) throw DomainError("primality above 64 bits is not supported");
  return is_prime(n.to_u64());
}

}  // namespace opn
