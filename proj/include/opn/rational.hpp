#pragma once

#include <compare>
#include <string>

#include "opn/natural.hpp"

namespace opn {

/// Non-negative fraction kept in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(Natural numerator, Natural denominator = Natural{1}) {  // NOLINT
    if (denominator.is_zero()) throw DomainError("rational with zero denominator");
    const Natural g = gcd(numerator, denominator);
    num_ = g.is_zero() ? numerator : numerator / g;
    den_ = g.is_zero() ? denominator : denominator / g;
  }

  constexpr Natural numerator() const { return num_; }
  constexpr Natural denominator() const { return den_; }
  constexpr bool is_integral() const { return den_ == Natural{1}; }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    // Cross-cancel first so intermediate products stay small.
    const Natural g1 = gcd(a.num_, b.den_);
    const Natural g2 = gcd(b.num_, a.den_);
    return Rational((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    const Natural g = gcd(a.den_, b.den_);
    const Natural lhs = a.num_ * (b.den_ / g);
    const Natural rhs = b.num_ * (a.den_ / g);
    return Rational(lhs + rhs, (a.den_ / g) * b.den_);
  }
  /// Throws DomainError when b > a.
  friend Rational operator-(const Rational& a, const Rational& b) {
    const Natural g = gcd(a.den_, b.den_);
    const Natural lhs = a.num_ * (b.den_ / g);
    const Natural rhs = b.num_ * (a.den_ / g);
    return Rational(lhs - rhs, (a.den_ / g) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_.is_zero()) throw DomainError("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }

  /// |a - b|
  friend Rational abs_diff(const Rational& a, const Rational& b) { return a < b ? b - a : a - b; }

 private:
  Natural num_{0};
  Natural den_{1};
};

inline std::string to_string(const Rational& r) {
  if (r.is_integral()) return to_string(r.numerator());
  return to_string(r.numerator()) + "/" + to_string(r.denominator());
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << to_string(r); }

}  // namespace opn
