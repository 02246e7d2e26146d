#pragma once

// Divisor-sum functions and the small constructors built on them.

#include <string>

#include "opn/factorization.hpp"
#include "opn/natural.hpp"
#include "opn/rational.hpp"

namespace opn {

/// 1 + b + b^2 + ... + b^e, i.e. (b^(e+1) - 1)/(b - 1), for any base b.
/// For prime b this is sigma(b^e); for composite b it is the quasi-sigma
/// used by spoof candidates.
inline Natural geometric_sigma(Natural base, unsigned exponent) {
  Natural sum{1};
  Natural term{1};
  for (unsigned j = 0; j < exponent; ++j) {
    term *= base;
    sum += term;
  }
  return sum;
}

inline Natural sigma(const Factorization& f) {
  Natural out{1};
  for (const auto& [p, e] : f.factors()) out *= geometric_sigma(p, e);
  return out;
}

/// sigma(m^2) from the factorization of m, by doubling exponents.
inline Natural sigma_of_square(const Factorization& f) {
  Natural out{1};
  for (const auto& [p, e] : f.factors()) out *= geometric_sigma(p, 2 * e);
  return out;
}

inline Natural sigma(Natural x) { return sigma(factor(x)); }

/// D(x) = 2x - sigma(x). Negative for abundant x.
inline Integer deficiency(Natural x) {
  const Natural twice = Natural{2} * x;
  return checked_sub(to_integer(twice), to_integer(sigma(x)));
}

/// s(x) = sigma(x) - x.
inline Natural aliquot(Natural x) { return sigma(x) - x; }

/// sigma(x)/x in lowest terms.
inline Rational abundancy(Natural x) {
  if (x.is_zero()) throw DomainError("abundancy of zero");
  return Rational(sigma(x), x);
}

class NotMersenneExponent : public DomainError {
 public:
  using DomainError::DomainError;
};

/// (2^t - 1) * 2^(t-1) when 2^t - 1 is prime.
inline Natural even_perfect(unsigned t) {
  if (t < 2) throw NotMersenneExponent("2^" + std::to_string(t) + " - 1 is not prime");
  if (t > 64) throw DomainError("Mersenne exponents above 64 are out of scope");
  const Natural mersenne = pow(Natural{2}, t) - Natural{1};
  if (!is_prime(mersenne)) {
    throw NotMersenneExponent("2^" + std::to_string(t) + " - 1 = " + to_string(mersenne) +
                              " is composite; not a Mersenne exponent");
  }
  return mersenne * pow(Natural{2}, t - 1);
}

}  // namespace opn
