#pragma once

// Range classification of m by whether gcd(m, sigma(m^2)) = gcd(m^2, sigma(m^2)),
// and the search for w with w | sigma(w^2).
//
// Two bulk routes produce sigma(m^2) without ever factoring m^2: lookup in a
// shared SpfTable, and a segmented sieve over sqrt-bounded base primes whose
// memory is proportional to the segment, not the range.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "opn/factorization.hpp"
#include "opn/multiplicative.hpp"
#include "opn/natural.hpp"
#include "opn/sieve.hpp"

namespace opn {

struct SolutionClass {
  Natural m;
  Natural g1;  // gcd(m, sigma(m^2))
  Natural g2;  // gcd(m^2, sigma(m^2))
  bool is_solution = false;
  friend bool operator==(const SolutionClass&, const SolutionClass&) = default;
};

/// Builds the class from m and sigma(m^2). g1 | g2 always holds; a violation
/// means the arithmetic is broken and throws std::logic_error.
inline SolutionClass classify_from_sigma(Natural m, Natural sigma_square) {
  SolutionClass c;
  c.m = m;
  c.g1 = gcd(m, sigma_square);
  c.g2 = gcd(m * m, sigma_square);
  c.is_solution = c.g1 == c.g2;
  if (!divides(c.g1, c.g2)) {
    throw std::logic_error("g1 does not divide g2 at m = " + to_string(m));
  }
  return c;
}

/// sigma(m^2) for 1 <= m <= table.limit() by spf lookup.
inline Natural sigma_of_square(std::uint64_t m, const SpfTable& table) {
  Natural out{1};
  while (m > 1) {
    const std::uint32_t p = table.at_unchecked(m);
    unsigned e = 0;
    do {
      m /= p;
      ++e;
    } while (m % p == 0);
    out *= geometric_sigma(Natural{p}, 2 * e);
  }
  return out;
}

inline SolutionClass classify(std::uint64_t m, const SpfTable& table) {
  if (m < 1 || m > table.limit()) {
    throw DomainError("m = " + std::to_string(m) + " outside [1, table limit]");
  }
  return classify_from_sigma(Natural{m}, sigma_of_square(m, table));
}

struct ScanOptions {
  unsigned threads = 1;
  std::size_t nonsolution_cap = 1'000'000;
  std::size_t tail_size = 1024;
};

/// Counts plus the ordered non-solutions. When more than `cap` non-solutions
/// occur, `nonsolutions` keeps the first `cap` and `tail` the most recent
/// `tail_size` beyond it.
struct ScanSummary {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;
  std::uint64_t solution_count = 0;
  std::uint64_t nonsolution_count = 0;
  std::vector<SolutionClass> nonsolutions;
  std::vector<SolutionClass> tail;
  std::size_t cap = 0;
  bool complete = true;
  std::chrono::duration<double> elapsed{};

  bool capped() const { return nonsolution_count > nonsolutions.size(); }
};

class SummaryBuilder {
 public:
  SummaryBuilder(std::uint64_t lo, std::uint64_t hi, const ScanOptions& options) {
    summary_.lo = lo;
    summary_.hi = hi;
    summary_.cap = options.nonsolution_cap;
    tail_size_ = options.tail_size;
  }

  void add_solutions(std::uint64_t count) { summary_.solution_count += count; }

  void add_nonsolution(const SolutionClass& c) {
    ++summary_.nonsolution_count;
    if (summary_.nonsolutions.size() < summary_.cap) {
      summary_.nonsolutions.push_back(c);
      return;
    }
    if (tail_size_ == 0) return;
    if (summary_.tail.size() == tail_size_) summary_.tail.erase(summary_.tail.begin());
    summary_.tail.push_back(c);
  }

  ScanSummary& summary() { return summary_; }

 private:
  ScanSummary summary_;
  std::size_t tail_size_ = 0;
};

/// Runs job(index) for index in [0, count) on `threads` workers. The first
/// exception thrown by any job is rethrown after all workers stop.
template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t j = 0; j < count; ++j) job(j);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t j = next++; j < count && !failed; j = next++) {
        try {
          job(j);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

namespace detail {

struct ChunkResult {
  std::uint64_t solutions = 0;
  std::vector<SolutionClass> nonsolutions;
};

inline ArithmeticOverflow overflow_at(std::uint64_t m, const ArithmeticOverflow& e) {
  return ArithmeticOverflow("overflow at m = " + std::to_string(m) + ": " + e.what());
}

}  // namespace detail

/// Classifies every m in [lo, hi] using the shared table. Output is
/// independent of the thread count.
inline ScanSummary scan_range(std::uint64_t lo, std::uint64_t hi, const SpfTable& table,
                              const ScanOptions& options = {}) {
  if (lo < 1 || lo > hi || hi > table.limit()) {
    throw DomainError("scan range must satisfy 1 <= lo <= hi <= table limit");
  }
  const auto start = std::chrono::steady_clock::now();
  constexpr std::uint64_t kChunk = 1 << 16;
  const std::size_t chunks = static_cast<std::size_t>((hi - lo) / kChunk + 1);
  std::vector<detail::ChunkResult> results(chunks);
  parallel_for(chunks, options.threads, [&](std::size_t c) {
    const std::uint64_t a = lo + c * kChunk;
    const std::uint64_t b = std::min(hi, a + kChunk - 1);
    auto& out = results[c];
    for (std::uint64_t m = a; m <= b; ++m) {
      try {
        const SolutionClass cls = classify(m, table);
        if (cls.is_solution) {
          ++out.solutions;
        } else {
          out.nonsolutions.push_back(cls);
        }
      } catch (const ArithmeticOverflow& e) {
        throw detail::overflow_at(m, e);
      }
    }
  });
  SummaryBuilder builder(lo, hi, options);
  for (const auto& r : results) {
    builder.add_solutions(r.solutions);
    for (const auto& c : r.nonsolutions) builder.add_nonsolution(c);
  }
  builder.summary().elapsed = std::chrono::steady_clock::now() - start;
  return std::move(builder.summary());
}

/// Segmented sieve producing sigma(m^2) for each m of a segment. Holds only
/// the base primes up to sqrt(limit); segments may be sieved concurrently.
class SegmentSieve {
 public:
  static constexpr std::uint64_t kMaxLimit = std::uint64_t{1} << 40;

  explicit SegmentSieve(std::uint64_t limit) : limit_(limit) {
    if (limit < 1 || limit > kMaxLimit) throw DomainError("segmented sieve limit must lie in [1, 2^40]");
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= limit) ++root;
    base_primes_ = primes_up_to(static_cast<std::uint32_t>(root));
  }

  std::uint64_t limit() const { return limit_; }

  /// sigma(m^2) for m = lo .. hi, written to out[m - lo].
  void sigma_squares(std::uint64_t lo, std::uint64_t hi, std::vector<Natural>& out) const {
    if (lo < 1 || lo > hi || hi > limit_) throw DomainError("segment outside [1, limit]");
    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::uint64_t> rest(len);
    out.assign(len, Natural{1});
    for (std::size_t j = 0; j < len; ++j) rest[j] = lo + j;
    std::uint64_t current = lo;
    try {
      for (std::uint32_t p32 : base_primes_) {
        const std::uint64_t p = p32;
        if (p * p > hi) break;
        Natural cache[64] = {};
        for (std::uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
          current = m;
          const std::size_t j = static_cast<std::size_t>(m - lo);
          unsigned e = 0;
          do {
            rest[j] /= p;
            ++e;
          } while (rest[j] % p == 0);
          if (cache[e].is_zero()) cache[e] = geometric_sigma(Natural{p}, 2 * e);
          out[j] *= cache[e];
        }
      }
      for (std::size_t j = 0; j < len; ++j) {
        current = lo + j;
        if (rest[j] > 1) {
          const Natural r{rest[j]};
          out[j] *= r * r + r + Natural{1};
        }
      }
    } catch (const ArithmeticOverflow& e) {
      throw detail::overflow_at(current, e);
    }
  }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> base_primes_;
};

inline constexpr std::uint64_t kDefaultSegmentSize = 1'048'576;

/// Classifies the segment [lo, hi] with the segmented sieve.
inline detail::ChunkResult classify_segment(const SegmentSieve& sieve, std::uint64_t lo, std::uint64_t hi) {
  std::vector<Natural> sig;
  sieve.sigma_squares(lo, hi, sig);
  detail::ChunkResult out;
  for (std::uint64_t m = lo; m <= hi; ++m) {
    try {
      const SolutionClass c = classify_from_sigma(Natural{m}, sig[m - lo]);
      if (c.is_solution) {
        ++out.solutions;
      } else {
        out.nonsolutions.push_back(c);
      }
    } catch (const ArithmeticOverflow& e) {
      throw detail::overflow_at(m, e);
    }
  }
  return out;
}

/// Number of solutions m <= cutoffs[j] for each j, from one pass to
/// max(cutoffs). Cutoffs must be increasing and positive.
inline std::vector<std::uint64_t> solution_counts(std::span<const std::uint64_t> cutoffs,
                                                  const ScanOptions& options = {},
                                                  std::uint64_t segment_size = kDefaultSegmentSize) {
  if (cutoffs.empty()) return {};
  for (std::size_t j = 0; j < cutoffs.size(); ++j) {
    if (cutoffs[j] == 0 || (j > 0 && cutoffs[j] <= cutoffs[j - 1])) {
      throw DomainError("cutoffs must be positive and strictly increasing");
    }
  }
  const std::uint64_t limit = cutoffs.back();
  const SegmentSieve sieve(limit);
  const std::size_t segments = static_cast<std::size_t>((limit - 1) / segment_size + 1);
  // buckets[s][b]: solutions of segment s in (cutoffs[b-1], cutoffs[b]].
  std::vector<std::vector<std::uint64_t>> buckets(segments, std::vector<std::uint64_t>(cutoffs.size(), 0));
  parallel_for(segments, options.threads, [&](std::size_t s) {
    const std::uint64_t lo = 1 + s * segment_size;
    const std::uint64_t hi = std::min(limit, lo + segment_size - 1);
    std::vector<Natural> sig;
    sieve.sigma_squares(lo, hi, sig);
    std::size_t b = static_cast<std::size_t>(std::lower_bound(cutoffs.begin(), cutoffs.end(), lo) - cutoffs.begin());
    for (std::uint64_t m = lo; m <= hi; ++m) {
      while (cutoffs[b] < m) ++b;
      if (classify_from_sigma(Natural{m}, sig[m - lo]).is_solution) ++buckets[s][b];
    }
  });
  std::vector<std::uint64_t> counts(cutoffs.size(), 0);
  for (const auto& seg : buckets) {
    for (std::size_t b = 0; b < seg.size(); ++b) counts[b] += seg[b];
  }
  for (std::size_t b = 1; b < counts.size(); ++b) counts[b] += counts[b - 1];
  return counts;
}

struct WitnessEntry {
  Natural prime;
  unsigned a = 0;  // exponent of prime in gcd(m, sigma(m^2))
  unsigned b = 0;  // exponent of prime in gcd(m^2, sigma(m^2))
  friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};

/// Primes at which gcd(m, sigma(m^2)) and gcd(m^2, sigma(m^2)) differ.
/// Empty exactly when m is a solution.
inline std::vector<WitnessEntry> witness(Natural m) {
  if (m < Natural{2}) throw DomainError("witness requires m >= 2");
  const Factorization f = factor(m);
  const Natural s = sigma_of_square(f);
  std::vector<WitnessEntry> out;
  for (const auto& [p, e] : f.factors()) {
    const unsigned v = valuation(s, p);
    const unsigned a = std::min(e, v);
    const unsigned b = std::min(2 * e, v);
    if (a != b) out.push_back({p, a, b});
  }
  return out;
}

/// All w in [2, limit] with w | sigma(w^2), increasing.
inline std::vector<Natural> divides_sigma_square_scan(std::uint64_t limit, const ScanOptions& options = {},
                                                      std::uint64_t segment_size = kDefaultSegmentSize) {
  if (limit < 2) throw DomainError("limit must be at least 2");
  const SegmentSieve sieve(limit);
  const std::size_t segments = static_cast<std::size_t>((limit - 1) / segment_size + 1);
  std::vector<std::vector<Natural>> found(segments);
  parallel_for(segments, options.threads, [&](std::size_t s) {
    const std::uint64_t lo = std::max<std::uint64_t>(2, 1 + s * segment_size);
    const std::uint64_t hi = std::min(limit, s * segment_size + segment_size);
    if (lo > hi) return;
    std::vector<Natural> sig;
    sieve.sigma_squares(lo, hi, sig);
    for (std::uint64_t w = lo; w <= hi; ++w) {
      if (divides(Natural{w}, sig[w - lo])) found[s].push_back(Natural{w});
    }
  });
  std::vector<Natural> out;
  for (const auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

struct QuotientReport {
  Natural quotient;
  bool is_prime_power = false;
  Factorization quotient_factors;
};

/// sigma(w^2)/w and whether it is d^e for a prime d. Requires w | sigma(w^2).
inline QuotientReport prime_power_quotient(Natural w) {
  if (w.is_zero()) throw DomainError("w must be positive");
  const Natural s = sigma_of_square(factor(w));
  if (!divides(w, s)) throw DomainError(to_string(w) + " does not divide sigma(w^2)");
  QuotientReport r;
  r.quotient = s / w;
  r.quotient_factors = factor(r.quotient);
  r.is_prime_power = r.quotient_factors.size() == 1;
  return r;
}

}  // namespace opn
