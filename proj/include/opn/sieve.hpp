#pragma once

// Prime lists and the smallest-prime-factor table.

#include <unistd.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "opn/natural.hpp"

namespace opn {

/// All primes p <= limit, increasing (sieve of Eratosthenes, odd-only).
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  const std::uint32_t half = (limit - 1) / 2;  // index j stands for 2j + 3
  std::vector<bool> composite(half, false);
  for (std::uint64_t j = 0; j < half; ++j) {
    if (composite[j]) continue;
    const std::uint64_t p = 2 * j + 3;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t c = p * p; c <= limit; c += 2 * p) composite[(c - 3) / 2] = true;
  }
  return primes;
}

/// Primes below 10^6, computed once and shared.
inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(1'000'000);
  return primes;
}

class MemoryBudgetExceeded : public std::runtime_error {
 public:
  MemoryBudgetExceeded(std::uint64_t requested, std::uint64_t available)
      : std::runtime_error("memory budget exceeded: requested " + std::to_string(requested) +
                           " bytes, available " + std::to_string(available) + " bytes"),
        requested_(requested),
        available_(available) {}
  std::uint64_t requested() const { return requested_; }
  std::uint64_t available() const { return available_; }

 private:
  std::uint64_t requested_;
  std::uint64_t available_;
};

/// Half of physical memory, the default ceiling for large tables.
inline std::uint64_t default_memory_budget() {
  const long pages = ::sysconf(_SC_PHYS_PAGES);
  const long page_size = ::sysconf(_SC_PAGESIZE);
  if (pages <= 0 || page_size <= 0) return std::uint64_t{1} << 32;
  return static_cast<std::uint64_t>(pages) * static_cast<std::uint64_t>(page_size) / 2;
}

/// Smallest prime factor for every 2 <= m <= limit. Immutable once built, so
/// one table can be shared by any number of reader threads.
class SpfTable {
 public:
  static constexpr std::uint64_t kMaxLimit = std::uint64_t{1} << 31;

  explicit SpfTable(std::uint64_t limit, std::uint64_t memory_budget = default_memory_budget()) {
    if (limit < 2 || limit > kMaxLimit) {
      throw DomainError("spf table limit must lie in [2, 2^31], got " + std::to_string(limit));
    }
    const std::uint64_t requested = (limit + 1) * sizeof(std::uint32_t);
    if (requested > memory_budget) throw MemoryBudgetExceeded(requested, memory_budget);
    limit_ = limit;
    spf_.assign(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    // Linear sieve: each composite is written exactly once by its smallest prime.
    for (std::uint64_t m = 2; m <= limit; ++m) {
      if (spf_[m] == 0) {
        spf_[m] = static_cast<std::uint32_t>(m);
        primes.push_back(static_cast<std::uint32_t>(m));
      }
      const std::uint32_t sm = spf_[m];
      for (std::uint32_t p : primes) {
        const std::uint64_t c = std::uint64_t{p} * m;
        if (p > sm || c > limit) break;
        spf_[c] = p;
      }
    }
  }

  std::uint64_t limit() const { return limit_; }

  std::uint32_t operator[](std::uint64_t m) const {
    if (m < 2 || m > limit_) throw DomainError("spf lookup outside [2, limit]: " + std::to_string(m));
    return spf_[m];
  }

  /// Unchecked access for hot loops; caller guarantees 2 <= m <= limit.
  std::uint32_t at_unchecked(std::uint64_t m) const { return spf_[m]; }

  std::span<const std::uint32_t> data() const { return spf_; }

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
};

inline SpfTable spf_sieve(std::uint64_t limit) { return SpfTable(limit); }

}  // namespace opn
