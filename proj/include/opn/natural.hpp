#pragma once

// Exact integers for the arithmetic core.
//
// Natural holds a non-negative value below 2^127. Every operation that would
// leave that range throws ArithmeticOverflow; nothing wraps. Integer is the
// signed companion used where a result may be negative (deficiency and the
// index-chain members).

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace opn {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr u128 kNaturalMax = (u128{1} << 127) - 1;

class Natural {
 public:
  constexpr Natural() = default;
  constexpr Natural(u64 v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Natural from_u128(u128 v) {
    if (v > kNaturalMax) throw ArithmeticOverflow("value exceeds 2^127 - 1");
    Natural n;
    n.v_ = v;
    return n;
  }

  constexpr u128 raw() const { return v_; }
  constexpr bool fits_u64() const { return v_ <= ~u64{0}; }
  constexpr u64 to_u64() const {
    if (!fits_u64()) throw ArithmeticOverflow("value does not fit in 64 bits");
    return static_cast<u64>(v_);
  }
  constexpr bool is_zero() const { return v_ == 0; }
  constexpr bool is_odd() const { return (v_ & 1) != 0; }

  friend constexpr auto operator<=>(Natural, Natural) = default;
  friend constexpr bool operator==(Natural, Natural) = default;

  friend constexpr Natural operator+(Natural a, Natural b) {
    return from_u128(a.v_ + b.v_);  // both < 2^127, so the u128 sum cannot wrap
  }
  friend constexpr Natural operator-(Natural a, Natural b) {
    if (b.v_ > a.v_) throw DomainError("natural subtraction would go negative");
    return from_u128(a.v_ - b.v_);
  }
  friend constexpr Natural operator*(Natural a, Natural b) {
    u128 out = 0;
    if (__builtin_mul_overflow(a.v_, b.v_, &out)) {
      throw ArithmeticOverflow("product exceeds 2^127 - 1");
    }
    return from_u128(out);
  }
  friend constexpr Natural operator/(Natural a, Natural b) {
    if (b.v_ == 0) throw DomainError("division by zero");
    return from_u128(a.v_ / b.v_);
  }
  friend constexpr Natural operator%(Natural a, Natural b) {
    if (b.v_ == 0) throw DomainError("division by zero");
    return from_u128(a.v_ % b.v_);
  }
  Natural& operator+=(Natural b) { return *this = *this + b; }
  Natural& operator-=(Natural b) { return *this = *this - b; }
  Natural& operator*=(Natural b) { return *this = *this * b; }
  Natural& operator/=(Natural b) { return *this = *this / b; }

 private:
  u128 v_ = 0;
};

/// True when d divides x; 0 divides only 0.
constexpr bool divides(Natural d, Natural x) {
  if (d.is_zero()) return x.is_zero();
  return (x % d).is_zero();
}

/// Quotient that must be exact; throws DomainError otherwise.
inline Natural exact_div(Natural a, Natural b, std::string_view what = "exact division") {
  if (b.is_zero() || !(a % b).is_zero()) {
    throw DomainError(std::string(what) + " is not exact");
  }
  return a / b;
}

namespace detail {

constexpr int ctz128(u128 x) {
  const auto lo = static_cast<u64>(x);
  if (lo != 0) return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<u64>(x >> 64));
}

constexpr u128 binary_gcd(u128 a, u128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = ctz128(a | b);
  a >>= ctz128(a);
  while (b != 0) {
    b >>= ctz128(b);
    if (a > b) {
      const u128 t = a;
      a = b;
      b = t;
    }
    b -= a;
  }
  return a << shift;
}

}  // namespace detail

constexpr Natural gcd(Natural a, Natural b) {
  return Natural::from_u128(detail::binary_gcd(a.raw(), b.raw()));
}

constexpr Natural pow(Natural base, unsigned exponent) {
  Natural result{1};
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

/// Exponent of prime p in x (x > 0).
inline unsigned valuation(Natural x, Natural p) {
  if (x.is_zero()) throw DomainError("valuation of zero");
  unsigned e = 0;
  while (divides(p, x)) {
    x /= p;
    ++e;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Signed values.

using Integer = i128;

inline constexpr i128 kIntegerMax = static_cast<i128>(kNaturalMax);

inline Integer to_integer(Natural n) { return static_cast<i128>(n.raw()); }

inline Integer checked_sub(Integer a, Integer b) {
  Integer out = 0;
  if (__builtin_sub_overflow(a, b, &out) || out > kIntegerMax || out < -kIntegerMax) {
    throw ArithmeticOverflow("signed difference out of range");
  }
  return out;
}

inline Integer checked_mul(Integer a, Integer b) {
  Integer out = 0;
  if (__builtin_mul_overflow(a, b, &out) || out > kIntegerMax || out < -kIntegerMax) {
    throw ArithmeticOverflow("signed product out of range");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text conversion.

inline std::string to_string(Natural n) {
  u128 v = n.raw();
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

inline std::string to_string(Integer v) {
  if (v < 0) return "-" + to_string(Natural::from_u128(static_cast<u128>(-v)));
  return to_string(Natural::from_u128(static_cast<u128>(v)));
}

/// Parses a decimal natural; throws DomainError on malformed text and
/// ArithmeticOverflow when the value exceeds 2^127 - 1.
inline Natural parse_natural(std::string_view text) {
  if (text.empty()) throw DomainError("empty number");
  Natural out{0};
  for (char c : text) {
    if (c < '0' || c > '9') throw DomainError("malformed number: " + std::string(text));
    out = out * Natural{10} + Natural{static_cast<u64>(c - '0')};
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, Natural n) { return os << to_string(n); }
}  // namespace opn
