#pragma once

// GCD quantities of an Eulerian-form input q^k n^2 and executable checks of
// the identities relating them.
//
// The identities are checked on abstract data: an odd n, an odd divisor i of
// n^2 standing for the index, and a q coprime to 2n^2. The roles of the two
// divisor sums are played by sigma(q^k) = 2n^2/i and sigma(n^2) = q^k i,
// which is exactly what perfection of q^k n^2 would force. Every identity
// below holds for all such data, not only for actual odd perfect numbers.

#include <array>
#include <string>
#include <vector>

#include "opn/factorization.hpp"
#include "opn/natural.hpp"

namespace opn {

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline bool all_passed(const std::vector<Verdict>& verdicts) {
  for (const auto& v : verdicts) {
    if (!v.passed) return false;
  }
  return true;
}

class InvalidTriple : public DomainError {
 public:
  using DomainError::DomainError;
};

class AbstractTriple {
 public:
  /// Throws InvalidTriple unless n is odd, i divides n^2, q >= 3 with
  /// gcd(q, 2n^2) = 1, and k >= 1.
  static AbstractTriple make(Natural n, Natural i, Natural q, unsigned k) {
    if (n.is_zero() || !n.is_odd()) throw InvalidTriple("n must be odd and positive");
    if (i.is_zero() || !divides(i, n * n)) throw InvalidTriple("i must divide n^2");
    if (q < Natural{3}) throw InvalidTriple("q must be at least 3");
    if (gcd(q, Natural{2} * n * n) != Natural{1}) throw InvalidTriple("q must be coprime to 2n^2");
    if (k == 0) throw InvalidTriple("k must be positive");
    AbstractTriple t;
    t.n_ = n;
    t.i_ = i;
    t.q_ = q;
    t.k_ = k;
    return t;
  }

  Natural n() const { return n_; }
  Natural i() const { return i_; }
  Natural q() const { return q_; }
  unsigned k() const { return k_; }

  Natural q_power() const { return pow(q_, k_); }
  /// Stand-in for sigma(q^k).
  Natural sigma_special() const { return Natural{2} * n_ * n_ / i_; }
  /// Stand-in for sigma(n^2).
  Natural sigma_square() const { return q_power() * i_; }

 private:
  AbstractTriple() = default;
  Natural n_{1};
  Natural i_{1};
  Natural q_{5};
  unsigned k_ = 1;
};

/// E = n, F = sigma(q^k)/2, K = gcd(E, F), G = gcd(sigma(q^k), sigma(n^2)),
/// H = gcd(n^2, sigma(n^2)), I = gcd(n, sigma(n^2)), J = H/I, and the index.
/// gcd_I is I = gcd(n, sigma(n^2)); the abundancy index is a separate function.
struct GcdProfile {
  Natural E;
  Natural F;
  Natural K;
  Natural G;
  Natural H;
  Natural gcd_I;
  Natural J;
  Natural index;
  friend bool operator==(const GcdProfile&, const GcdProfile&) = default;
};

class IdentityMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Direct gcds, cross-checked against the closed forms G = K^2/F,
/// I = E K / F and J = E / K. A mismatch is an implementation bug and throws
/// IdentityMismatch naming the identity.
inline GcdProfile gcd_profile(const AbstractTriple& t) {
  const Natural n = t.n();
  const Natural n2 = n * n;
  const Natural sig_special = t.sigma_special();
  const Natural sig_square = t.sigma_square();

  GcdProfile p;
  p.E = n;
  p.F = n2 / t.i();
  p.K = gcd(p.E, p.F);
  p.G = gcd(sig_special, sig_square);
  p.H = gcd(n2, sig_square);
  p.gcd_I = gcd(n, sig_square);
  p.J = exact_div(p.H, p.gcd_I, "J = H/I");
  p.index = t.i();

  auto require = [](bool ok, const char* what) {
    if (!ok) throw IdentityMismatch(std::string("closed form disagrees with direct gcd: ") + what);
  };
  require(divides(p.F, p.K * p.K) && p.K * p.K / p.F == p.G, "G = K^2/F");
  require(divides(p.F, p.E * p.K) && p.E * p.K / p.F == p.gcd_I, "I = E*K/F");
  require(divides(p.K, p.E) && p.E / p.K == p.J, "J = E/K");
  require(p.H == p.index, "H = i");
  return p;
}

/// G*H = I^2, G | I, I | H, H = G*J^2, J = I/G, J = H/I.
inline std::vector<Verdict> verify_core_lemmas(const GcdProfile& p) {
  auto quotient_is = [](Natural num, Natural den, Natural expected) {
    return !den.is_zero() && divides(den, num) && num / den == expected;
  };
  std::vector<Verdict> out;
  out.push_back({"G*H = I^2", p.G * p.H == p.gcd_I * p.gcd_I,
                 to_string(p.G) + "*" + to_string(p.H) + " vs " + to_string(p.gcd_I) + "^2"});
  out.push_back({"G | I", divides(p.G, p.gcd_I), to_string(p.G) + " | " + to_string(p.gcd_I)});
  out.push_back({"I | H", divides(p.gcd_I, p.H), to_string(p.gcd_I) + " | " + to_string(p.H)});
  out.push_back({"H = G*J^2", p.H == p.G * p.J * p.J,
                 to_string(p.H) + " vs " + to_string(p.G) + "*" + to_string(p.J) + "^2"});
  out.push_back({"J = I/G", quotient_is(p.gcd_I, p.G, p.J), "J = " + to_string(p.J)});
  out.push_back({"J = H/I", quotient_is(p.H, p.gcd_I, p.J), "J = " + to_string(p.J)});
  return out;
}

/// n / gcd(n^2/i, n) = i / gcd(n, i), both divisions exact.
inline Verdict verify_j_formula(const AbstractTriple& t) {
  const Natural n = t.n();
  const Natural i = t.i();
  const Natural lhs = exact_div(n, gcd(n * n / i, n));
  const Natural rhs = exact_div(i, gcd(n, i));
  return {"n/gcd(F,n) = i/gcd(n,i)", lhs == rhs, to_string(lhs) + " vs " + to_string(rhs)};
}

template <std::size_t N>
struct EquivalenceReport {
  std::array<bool, N> conditions{};
  Verdict verdict;
};

namespace detail {
template <std::size_t N>
EquivalenceReport<N> equivalence(std::array<bool, N> conditions, std::string name) {
  bool same = true;
  std::string bits;
  for (bool c : conditions) {
    same = same && (c == conditions[0]);
    bits += c ? '1' : '0';
  }
  return {conditions, {std::move(name), same, "conditions " + bits}};
}
}  // namespace detail

/// F | n, n | sigma(n^2), G = F, I = n: all four agree.
inline EquivalenceReport<4> equivalent_conditions_one(const AbstractTriple& t) {
  const GcdProfile p = gcd_profile(t);
  return detail::equivalence<4>({divides(p.F, p.E), divides(p.E, t.sigma_square()), p.G == p.F,
                                 p.gcd_I == p.E},
                                "F|n <=> n|sigma(n^2) <=> G=F <=> I=n");
}

/// J = 1, n | F, sigma(n^2) | q^k n: all three agree.
inline EquivalenceReport<3> equivalent_conditions_two(const AbstractTriple& t) {
  const GcdProfile p = gcd_profile(t);
  return detail::equivalence<3>({p.J == Natural{1}, divides(p.E, p.F),
                                 divides(t.sigma_square(), t.q_power() * p.E)},
                                "J=1 <=> n|F <=> sigma(n^2)|q^k n");
}

inline Verdict implication(std::string name, bool hypothesis, bool conclusion) {
  return {std::move(name), !hypothesis || conclusion, hypothesis ? (conclusion ? "holds" : "violated") : "vacuous"};
}

/// Squarefree results, in the form their proofs establish for abstract data:
///   H squarefree => J = 1;
///   F squarefree and J = 1 => F = n (so n is squarefree, and a
///   non-squarefree n would be a Steuerwald-type contradiction);
///   H squarefree and n not squarefree => F not squarefree.
inline std::vector<Verdict> squarefree_theorems(const AbstractTriple& t) {
  const GcdProfile p = gcd_profile(t);
  const bool h_sf = is_squarefree(factor(p.H));
  const bool f_sf = is_squarefree(factor(p.F));
  const bool n_sf = is_squarefree(factor(p.E));
  const bool j_one = p.J == Natural{1};
  std::vector<Verdict> out;
  out.push_back(implication("H squarefree => J = 1", h_sf, j_one));
  out.push_back(implication("F squarefree and J = 1 => F = n", f_sf && j_one, p.F == p.E));
  out.push_back(implication("F squarefree and J = 1 => n squarefree (no Steuerwald contradiction)",
                            f_sf && j_one, n_sf));
  out.push_back(implication("H squarefree and n not squarefree => F not squarefree", h_sf && !n_sf, !f_sf));
  return out;
}

/// K = 1 <=> F = 1, K != 1 => K >= 3, and for K >= 3 the bounds
/// 9/F <= G <= F, 3E/F <= I <= E, E/F <= J <= E/3 in cross-multiplied form.
inline std::vector<Verdict> k_bound_and_corollary(const AbstractTriple& t) {
  const GcdProfile p = gcd_profile(t);
  const Natural one{1};
  const Natural three{3};
  const bool big_k = p.K >= three;
  std::vector<Verdict> out;
  out.push_back({"K = 1 <=> F = 1", (p.K == one) == (p.F == one), "K = " + to_string(p.K) + ", F = " + to_string(p.F)});
  out.push_back(implication("K != 1 => K >= 3", p.K != one, big_k));
  out.push_back(implication("9 <= G*F", big_k, Natural{9} <= p.G * p.F));
  out.push_back(implication("G*F <= F^2", big_k, p.G * p.F <= p.F * p.F));
  out.push_back(implication("3E <= I*F", big_k, three * p.E <= p.gcd_I * p.F));
  out.push_back(implication("I*F <= E*F", big_k, p.gcd_I * p.F <= p.E * p.F));
  out.push_back(implication("E <= J*F", big_k, p.E <= p.J * p.F));
  out.push_back(implication("3J <= E", big_k, three * p.J <= p.E));
  return out;
}

/// G = H, the equality left open for odd perfect numbers. Reported, never asserted.
inline bool g_equals_h(const GcdProfile& p) { return p.G == p.H; }

}  // namespace opn
