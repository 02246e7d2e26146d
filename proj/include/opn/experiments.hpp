#pragma once

// Solution-density tables and the arithmetic behind the density bounds.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opn/candidate.hpp"
#include "opn/natural.hpp"
#include "opn/primality.hpp"
#include "opn/rational.hpp"
#include "opn/scan.hpp"
#include "opn/sieve.hpp"

namespace opn {

/// Decimal text for a non-negative rational: rounded half-to-even to
/// `digits` significant digits, trailing fractional zeros dropped.
/// 923464/10000 -> "92.3464", 93845/1000 -> "93.845", 100 -> "100".
inline std::string render_decimal(const Rational& value, int digits = 6) {
  if (digits < 1) throw DomainError("need at least one significant digit");
  const Natural num = value.numerator();
  const Natural den = value.denominator();
  if (num.is_zero()) return "0";

  // Position of the leading digit: value lies in [10^lead, 10^(lead+1)).
  int lead = 0;
  {
    Natural whole = num / den;
    if (!whole.is_zero()) {
      while (whole >= Natural{10}) {
        whole /= Natural{10};
        ++lead;
      }
    } else {
      Natural scaled = num;
      do {
        scaled *= Natural{10};
        --lead;
      } while (scaled < den);
    }
  }

  // Integer N holding the retained digits: round(value * 10^(digits-1-lead)).
  auto rounded_digits = [&](int shift) {
    Natural n = num;
    Natural d = den;
    if (shift >= 0) {
      n *= pow(Natural{10}, static_cast<unsigned>(shift));
    } else {
      d *= pow(Natural{10}, static_cast<unsigned>(-shift));
    }
    Natural q = n / d;
    const Natural r = n % d;
    const Natural twice = r * Natural{2};
    if (twice > d || (twice == d && q.is_odd())) q += Natural{1};
    return q;
  };
  int shift = digits - 1 - lead;
  Natural kept = rounded_digits(shift);
  if (kept == pow(Natural{10}, static_cast<unsigned>(digits))) {
    // Rounding carried into a new leading digit.
    ++lead;
    shift = digits - 1 - lead;
    kept = rounded_digits(shift);
  }

  std::string text = to_string(kept);
  if (shift <= 0) return text + std::string(static_cast<std::size_t>(-shift), '0');
  const auto frac_len = static_cast<std::size_t>(shift);
  if (text.size() <= frac_len) text = std::string(frac_len - text.size() + 1, '0') + text;
  std::string out = text.substr(0, text.size() - frac_len) + "." + text.substr(text.size() - frac_len);
  while (out.back() == '0') out.pop_back();
  if (out.back() == '.') out.pop_back();
  return out;
}

struct DensityRow {
  std::uint64_t limit = 0;
  std::uint64_t count = 0;
  Rational percentage;  // 100 * count / limit, exact
  std::string decimal;  // render_decimal(percentage)
  friend bool operator==(const DensityRow&, const DensityRow&) = default;
};

inline DensityRow make_density_row(std::uint64_t limit, std::uint64_t count) {
  const Rational pct(Natural{count} * Natural{100}, Natural{limit});
  return {limit, count, pct, render_decimal(pct)};
}

/// One row per limit from a single pass to the largest limit.
inline std::vector<DensityRow> density_table(const std::vector<std::uint64_t>& limits,
                                             const ScanOptions& options = {}) {
  const std::vector<std::uint64_t> counts = solution_counts(limits, options);
  std::vector<DensityRow> rows;
  rows.reserve(limits.size());
  for (std::size_t j = 0; j < limits.size(); ++j) rows.push_back(make_density_row(limits[j], counts[j]));
  return rows;
}

/// 10, 100, ..., up to `limit`, with `limit` itself appended when it is not
/// a power of ten.
inline std::vector<std::uint64_t> decade_limits(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 10; p <= limit; p *= 10) {
    out.push_back(p);
    if (p > limit / 10) break;
  }
  if (out.empty() || out.back() != limit) out.push_back(limit);
  return out;
}

/// 1 - (2/27)(10/121): the density of 3^2*11 || m is 20/3267, and each such
/// m is a non-solution.
inline Rational density_bound_from_99() {
  return Rational(1) - Rational(2, 27) * Rational(10, 121);
}

/// 1 - 2/9, the bound from 3 || m.
inline Rational density_bound_from_3() { return Rational(1) - Rational(2, 9); }

struct LocalDensityReport {
  std::uint64_t limit = 0;
  std::string pattern;
  std::uint64_t observed_count = 0;
  Rational expected_density;
  Rational expected_count;
  Rational relative_error;
  std::uint64_t mechanism_failures = 0;  // matching m that classify as solutions
  std::optional<std::uint64_t> first_failure;

  bool within(const Rational& tolerance) const { return relative_error <= tolerance; }
};

/// Counts m <= limit with 3^2 || m and 11 || m, compares with limit*20/3267,
/// and classifies each such m.
inline LocalDensityReport local_density_check(std::uint64_t limit) {
  if (limit < 3267) throw DomainError("local density check needs limit >= 3267");
  LocalDensityReport r;
  r.limit = limit;
  r.pattern = "3^2 || m and 11 || m";
  r.expected_density = Rational(2, 27) * Rational(10, 121);
  r.expected_count = Rational(Natural{limit}) * r.expected_density;

  const SpfTable table(limit);
  for (std::uint64_t m = 99; m <= limit; m += 99) {
    if (m % 27 == 0 || m % 121 == 0) continue;
    ++r.observed_count;
    if (classify(m, table).is_solution) {
      ++r.mechanism_failures;
      if (!r.first_failure) r.first_failure = m;
    }
  }
  r.relative_error = abs_diff(Rational(Natural{r.observed_count}), r.expected_count) / r.expected_count;
  return r;
}

// ---------------------------------------------------------------------------
// Roots of u^2 + u + 1 modulo p.

/// A square root of a modulo the odd prime p by Tonelli-Shanks, or nullopt
/// when a is a non-residue.
inline std::optional<u64> sqrt_mod_prime(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  u64 q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  if (s == 1) return powmod(a, (p + 1) / 4, p);
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 c = powmod(z, q, p);
  u64 x = powmod(a, (q + 1) / 2, p);
  u64 t = powmod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    for (u64 tt = t; tt != 1; tt = mulmod(tt, tt, p)) ++i;
    u64 b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    x = mulmod(x, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return x;
}

class NoRoots : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegenerateRoot : public DomainError {
 public:
  using DomainError::DomainError;
};

struct CubicRoots {
  u64 p = 0;
  u64 r = 0;
  u64 s = 0;
  friend bool operator==(const CubicRoots&, const CubicRoots&) = default;
};

/// The two roots 0 < r < s < p-1 of u^2 + u + 1 = 0 (mod p) for a prime
/// p = 1 (mod 6), from a square root of -3 and the quadratic formula.
inline CubicRoots cyclotomic_roots(u64 p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (p == 3) throw DegenerateRoot("modulo 3 the congruence has the single double root 1");
  if (p % 3 != 1) throw NoRoots("no roots modulo " + std::to_string(p));
  const u64 t = *sqrt_mod_prime(p - 3, p);  // -3 is a residue exactly when p = 1 (mod 3)
  const u64 inv2 = (p + 1) / 2;
  const u64 u1 = mulmod((t + p - 1) % p, inv2, p);
  const u64 u2 = mulmod((p - t + p - 1) % p, inv2, p);
  return {p, std::min(u1, u2), std::max(u1, u2)};
}

// ---------------------------------------------------------------------------
// Partial products of (1 - (p-1)/p^2) over primes p = 1 (mod 6).

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

struct MeyerowitzProduct {
  std::uint64_t limit = 0;
  std::uint64_t terms = 0;
  std::optional<Rational> exact;  // kept while numerator and denominator fit
  HighPrecision value = 1;

  /// Fixed-point text with `places` digits after the point.
  std::string decimal(int places = 20) const { return value.str(places, std::ios_base::fixed); }
};

inline MeyerowitzProduct meyerowitz_product(std::uint64_t limit) {
  if (limit < 7) throw DomainError("meyerowitz product needs limit >= 7");
  if (limit > (std::uint64_t{1} << 32) - 1) throw DomainError("meyerowitz product limit must fit in 32 bits");
  MeyerowitzProduct out;
  out.limit = limit;
  out.exact = Rational(1);
  for (std::uint32_t p32 : primes_up_to(static_cast<std::uint32_t>(limit))) {
    if (p32 % 6 != 1) continue;
    const u64 p = p32;
    ++out.terms;
    const u64 p2 = p * p;
    out.value *= HighPrecision(p2 - (p - 1)) / HighPrecision(p2);
    if (out.exact) {
      try {
        out.exact = *out.exact * Rational(Natural{p2 - (p - 1)}, Natural{p2});
      } catch (const ArithmeticOverflow&) {
        out.exact.reset();
      }
    }
  }
  return out;
}

/// The Descartes spoof 3^2 7^2 11^2 13^2 22021 with 22021 treated as prime.
inline EulerianCandidate descartes_candidate() {
  CandidateSpec spec;
  spec.n_factors = Factorization::from_factors({{Natural{3}, 1}, {Natural{7}, 1}, {Natural{11}, 1}, {Natural{13}, 1}});
  spec.q = Natural{22021};
  spec.k = 1;
  spec.quasi = true;
  return EulerianCandidate(std::move(spec));
}

}  // namespace opn
