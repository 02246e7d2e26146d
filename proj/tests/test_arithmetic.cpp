#include <gtest/gtest.h>

#include <random>

#include "opn/factorization.hpp"
#include "opn/multiplicative.hpp"
#include "opn/natural.hpp"
#include "opn/rational.hpp"
#include "opn/sieve.hpp"
#include "oracles.hpp"

using namespace opn;

namespace {

Factorization fz(std::initializer_list<std::pair<u64, unsigned>> pp) {
  std::vector<PrimePower> v;
  for (auto [p, e] : pp) v.push_back({Natural{p}, e});
  return Factorization::from_factors(std::move(v));
}

}  // namespace

TEST(Natural, OverflowIsDetectedNotWrapped) {
  const Natural big = Natural::from_u128(kNaturalMax);
  EXPECT_THROW(big + Natural{1}, ArithmeticOverflow);
  EXPECT_THROW(big * Natural{2}, ArithmeticOverflow);
  EXPECT_THROW(Natural::from_u128(kNaturalMax + 1), ArithmeticOverflow);
  EXPECT_THROW(pow(Natural{2}, 127), ArithmeticOverflow);
  EXPECT_EQ(pow(Natural{2}, 126) + (pow(Natural{2}, 126) - Natural{1}), big);
  EXPECT_THROW(Natural{1} - Natural{2}, DomainError);
}

TEST(Natural, TextRoundTrip) {
  const Natural big = Natural::from_u128(kNaturalMax);
  EXPECT_EQ(to_string(big), "170141183460469231731687303715884105727");
  EXPECT_EQ(parse_natural(to_string(big)), big);
  EXPECT_THROW(parse_natural("170141183460469231731687303715884105728"), ArithmeticOverflow);
  EXPECT_THROW(parse_natural("12a"), DomainError);
  EXPECT_EQ(to_string(Integer{-42}), "-42");
}

TEST(Natural, GcdMatchesStd) {
  std::mt19937_64 rng(7);
  for (int j = 0; j < 2000; ++j) {
    const u64 a = rng() >> (rng() % 60);
    const u64 b = rng() >> (rng() % 60);
    EXPECT_EQ(gcd(Natural{a}, Natural{b}), Natural{std::gcd(a, b)});
  }
  EXPECT_EQ(gcd(Natural{0}, Natural{5}), Natural{5});
}

TEST(Rational, LowestTermsAndOrder) {
  const Rational r(Natural{12}, Natural{18});
  EXPECT_EQ(r.numerator(), Natural{2});
  EXPECT_EQ(r.denominator(), Natural{3});
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1) - Rational(2, 27) * Rational(10, 121), Rational(3247, 3267));
  EXPECT_THROW(Rational(1, 3) - Rational(1, 2), DomainError);
  EXPECT_THROW(Rational(Natural{1}, Natural{0}), DomainError);
}

TEST(Primality, AgreesWithTrialDivision) {
  for (u64 x = 0; x < 20000; ++x) ASSERT_EQ(is_prime(x), oracle::is_prime(x)) << x;
  EXPECT_TRUE(is_prime(u64{18446744073709551557ULL}));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(u64{3215031751ULL}));           // strong pseudoprime to 2, 3, 5, 7
  EXPECT_FALSE(is_prime(u64{3825123056546413051ULL}));  // strong pseudoprime to bases up to 23
  EXPECT_THROW(is_prime(pow(Natural{2}, 80)), DomainError);
}

TEST(Factor, Examples) {
  EXPECT_EQ(factor(Natural{99}), fz({{3, 2}, {11, 1}}));
  EXPECT_TRUE(factor(Natural{1}).empty());
  EXPECT_EQ(factor(Natural{9018009}), fz({{3, 2}, {7, 2}, {11, 2}, {13, 2}}));
  EXPECT_EQ(factor(Natural{22021}), fz({{19, 2}, {61, 1}}));
  EXPECT_THROW(factor(Natural{0}), DomainError);
}

TEST(Factor, LargeSemiprimesNeedRho) {
  // Both factors above the trial-division bound.
  const u64 p = 1000003;
  const u64 q = 998244353;
  EXPECT_EQ(factor(Natural{p * q}), fz({{p, 1}, {q, 1}}));
  const u64 a = 4294967291ULL;  // largest 32-bit prime
  const u64 b = 4294967279ULL;
  EXPECT_EQ(factor(Natural{a} * Natural{b}), fz({{b, 1}, {a, 1}}));
  EXPECT_EQ(factor(Natural{a} * Natural{a}), fz({{a, 2}}));
  // A 64-bit prime survivor times small primes.
  EXPECT_EQ(factor(Natural{18446744073709551557ULL} * Natural{6}),
            fz({{2, 1}, {3, 1}, {18446744073709551557ULL, 1}}));
}

TEST(Factor, Deterministic) {
  const Natural x = Natural{1000003} * Natural{998244353};
  EXPECT_EQ(factor(x, 1), factor(x, 2));
  EXPECT_EQ(factor(x), factor(x));
}

TEST(Factor, CofactorAbove64BitsIsRejected) {
  const Natural big = Natural{1099511627791ULL} * Natural{2199023255579ULL};
  EXPECT_THROW(factor(big), DomainError);
}

TEST(Factor, RecompositionIsIdentity) {
  for (u64 x = 1; x <= 1'000'000; ++x) {
    const Factorization f = factor(Natural{x});
    ASSERT_EQ(f.value(), Natural{x}) << x;
  }
}

TEST(Factor, RandomMatchesTrialDivision) {
  std::mt19937_64 rng(11);
  for (int j = 0; j < 300; ++j) {
    const u64 x = rng() % 1'000'000'000'000ULL + 1;
    std::vector<PrimePower> expect;
    for (auto [p, e] : oracle::trial_factor(x)) expect.push_back({Natural{p}, e});
    ASSERT_EQ(factor(Natural{x}), Factorization::from_factors(expect)) << x;
  }
}

TEST(Factorization, ValidationRejectsBadInput) {
  EXPECT_THROW(fz({{4, 1}}), DomainError);
  EXPECT_THROW(fz({{5, 1}, {3, 1}}), DomainError);
  EXPECT_THROW(fz({{3, 0}}), DomainError);
  EXPECT_EQ(to_string(fz({{3, 2}, {11, 1}})), "3^2*11");
  EXPECT_EQ(to_string(Factorization{}), "1");
}

TEST(Sigma, Examples) {
  EXPECT_EQ(sigma(Natural{6}), Natural{12});
  EXPECT_EQ(sigma(Natural{1}), Natural{1});
  EXPECT_EQ(sigma(Natural{28}), Natural{56});
  EXPECT_EQ(sigma_of_square(factor(Natural{99})), Natural{16093});
  EXPECT_EQ(sigma_of_square(factor(Natural{1})), Natural{1});
  EXPECT_EQ(sigma_of_square(factor(Natural{39})), Natural{2379});
  EXPECT_EQ(sigma_of_square(factor(Natural{3003})), Natural{18035199});
}

TEST(Sigma, MatchesDivisorEnumeration) {
  for (u64 x = 1; x <= 20000; ++x) ASSERT_EQ(sigma(Natural{x}), Natural{oracle::sigma(x)}) << x;
}

TEST(Sigma, SquareByDoublingMatchesFactoringTheSquare) {
  for (u64 m = 1; m <= 10000; ++m) {
    ASSERT_EQ(sigma_of_square(factor(Natural{m})), sigma(factor(Natural{m * m}))) << m;
  }
}

TEST(Sigma, MultiplicativeOnCoprimePairs) {
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 5000) {
    const u64 a = rng() % 1'000'000 + 1;
    const u64 b = rng() % 1'000'000 + 1;
    if (std::gcd(a, b) != 1) continue;
    ASSERT_EQ(sigma(factor(Natural{a} * Natural{b})), sigma(factor(Natural{a})) * sigma(factor(Natural{b})));
    ++checked;
  }
}

TEST(Sigma, OverflowPropagates) {
  EXPECT_THROW(sigma_of_square(Factorization::from_factors({{Natural{18446744073709551557ULL}, 2}})),
               ArithmeticOverflow);
}

TEST(Sigma, PrimeSquareIsOneModP) {
  for (std::uint32_t p : primes_up_to(100'000)) {
    const Natural np{p};
    ASSERT_EQ(gcd(np, sigma_of_square(factor(np))), Natural{1}) << p;
  }
}

TEST(Sigma, DeficiencyAliquotAbundancy) {
  EXPECT_EQ(deficiency(Natural{6}), 0);
  EXPECT_EQ(deficiency(Natural{5}), 4);
  EXPECT_EQ(deficiency(Natural{12}), -4);  // abundant: sigma(12) = 28
  EXPECT_EQ(aliquot(Natural{28}), Natural{28});
  EXPECT_EQ(aliquot(Natural{1}), Natural{0});
  EXPECT_EQ(abundancy(Natural{6}), Rational(2));
  EXPECT_EQ(abundancy(Natural{9}), Rational(13, 9));
}

TEST(EvenPerfect, Examples) {
  EXPECT_EQ(even_perfect(2), Natural{6});
  EXPECT_EQ(even_perfect(3), Natural{28});
  EXPECT_THROW(even_perfect(11), NotMersenneExponent);
  for (unsigned t : {5u, 7u, 13u, 17u, 19u, 31u, 61u}) {
    const Natural m = even_perfect(t);
    EXPECT_EQ(sigma(factor(m)), Natural{2} * m) << t;
  }
  EXPECT_THROW(even_perfect(1), NotMersenneExponent);
  EXPECT_THROW(even_perfect(4), NotMersenneExponent);
}

TEST(SpfTable, Examples) {
  const SpfTable small(10);
  EXPECT_EQ(small[9], 3u);
  EXPECT_EQ(small[7], 7u);
  const SpfTable hundred(100);
  EXPECT_EQ(hundred[99], 3u);
  EXPECT_THROW(small[11], DomainError);
  EXPECT_THROW(SpfTable(1), DomainError);
  EXPECT_THROW(SpfTable((std::uint64_t{1} << 31) + 1), DomainError);
}

TEST(SpfTable, MemoryBudgetIsACleanFailure) {
  try {
    SpfTable t(1'000'000, 1024);
    FAIL() << "expected MemoryBudgetExceeded";
  } catch (const MemoryBudgetExceeded& e) {
    EXPECT_EQ(e.requested(), 4'000'004u);
    EXPECT_EQ(e.available(), 1024u);
  }
}

TEST(SpfTable, InvariantsAndAgreementWithFactor) {
  const SpfTable table(1'000'000);
  for (std::uint64_t m = 2; m <= table.limit(); ++m) {
    const std::uint32_t p = table[m];
    ASSERT_EQ(m % p, 0u);
    ASSERT_TRUE(is_prime(u64{p}));
    ASSERT_EQ(factor_with_table(m, table), factor(Natural{m})) << m;
  }
}

TEST(Squarefree, Examples) {
  EXPECT_FALSE(is_squarefree(factor(Natural{11011})));
  EXPECT_TRUE(is_squarefree(factor(Natural{1})));
  EXPECT_TRUE(is_squarefree(factor(Natural{39})));
}
