#pragma once

// Eulerian candidates q^k n^2, genuine or spoof, and the index chain.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "opn/factorization.hpp"
#include "opn/identity.hpp"
#include "opn/multiplicative.hpp"
#include "opn/natural.hpp"

namespace opn {

/// Unvalidated candidate data. With quasi set, sigma of the special prime
/// power is the geometric sum (q^(k+1) - 1)/(q - 1) even for composite q;
/// every factor of n always uses the true sigma. Strict mode additionally
/// demands q prime and q = k = 1 (mod 4).
struct CandidateSpec {
  Factorization n_factors;
  Natural q{0};
  unsigned k = 1;
  bool quasi = false;
  bool strict = false;
};

/// sigma or quasi-sigma of q^k, per spec.quasi.
inline Natural special_sigma(const CandidateSpec& spec) {
  if (spec.quasi) return geometric_sigma(spec.q, spec.k);
  if (spec.q.is_zero()) throw DomainError("q must be positive");
  return sigma(factor(spec.q).power(spec.k));
}

struct SpoofReport {
  std::vector<Verdict> checks;
  bool passed() const { return all_passed(checks); }
};

/// Every violated condition is reported as its own failing verdict.
inline SpoofReport spoof_check(const CandidateSpec& spec) {
  SpoofReport r;
  const Natural n = spec.n_factors.value();
  r.checks.push_back({"n odd", n.is_odd(), "n = " + to_string(n)});
  r.checks.push_back({"q >= 3", spec.q >= Natural{3}, "q = " + to_string(spec.q)});
  r.checks.push_back({"gcd(q, n) = 1", gcd(spec.q, n) == Natural{1}, "gcd = " + to_string(gcd(spec.q, n))});
  r.checks.push_back({"k >= 1", spec.k >= 1, "k = " + std::to_string(spec.k)});
  if (spec.q >= Natural{2} && spec.k >= 1) {
    const Natural qk = pow(spec.q, spec.k);
    const Natural lhs = special_sigma(spec) * sigma_of_square(spec.n_factors);
    const Natural rhs = Natural{2} * qk * n * n;
    r.checks.push_back({"perfection", lhs == rhs,
                        (spec.quasi ? "quasi-sigma(q^k)*sigma(n^2) = " : "sigma(q^k)*sigma(n^2) = ") +
                            to_string(lhs) + ", 2*q^k*n^2 = " + to_string(rhs)});
  } else {
    r.checks.push_back({"perfection", false, "q or k out of range"});
  }
  if (spec.strict) {
    const bool q_prime = spec.q.fits_u64() && is_prime(spec.q);
    std::string q_detail = to_string(spec.q) + " is prime";
    if (!q_prime) {
      q_detail = spec.q.fits_u64() && !spec.q.is_zero() ? to_string(spec.q) + " = " + to_string(factor(spec.q))
                                                         : to_string(spec.q) + " is not a 64-bit prime";
    }
    r.checks.push_back({"q prime", q_prime, q_detail});
    r.checks.push_back({"q = 1 (mod 4)", spec.q % Natural{4} == Natural{1}, "q mod 4 = " + to_string(spec.q % Natural{4})});
    r.checks.push_back({"k = 1 (mod 4)", spec.k % 4 == 1, "k mod 4 = " + std::to_string(spec.k % 4)});
  }
  return r;
}

class InvalidCandidate : public DomainError {
 public:
  InvalidCandidate(const std::string& what, SpoofReport report)
      : DomainError(what), report_(std::move(report)) {}
  const SpoofReport& report() const { return report_; }

 private:
  SpoofReport report_;
};

/// A candidate that has passed spoof_check, perfection included.
class EulerianCandidate {
 public:
  explicit EulerianCandidate(CandidateSpec spec) : spec_(std::move(spec)) {
    SpoofReport report = spoof_check(spec_);
    if (!report.passed()) {
      std::string failed;
      for (const auto& v : report.checks) {
        if (!v.passed) failed += (failed.empty() ? "" : ", ") + v.name;
      }
      throw InvalidCandidate("candidate rejected: " + failed, std::move(report));
    }
  }

  const CandidateSpec& spec() const { return spec_; }
  Natural n() const { return spec_.n_factors.value(); }
  Natural q() const { return spec_.q; }
  unsigned k() const { return spec_.k; }
  bool quasi() const { return spec_.quasi; }

  /// The abstract data this candidate induces, with i = sigma(n^2)/q^k.
  AbstractTriple triple() const {
    return AbstractTriple::make(n(), exact_div(sigma_of_square(spec_.n_factors), pow(q(), k())), q(), k());
  }

 private:
  CandidateSpec spec_;
};

struct ChainMember {
  std::string expression;
  std::optional<Integer> value;  // empty when the quotient is not exact
  std::string detail;
};

struct IndexChain {
  std::array<ChainMember, 6> members;
  std::optional<Natural> index;
  Verdict verdict;
};

/// sigma(n^2)/q^k, 2n^2/sigma(q^k), D(n^2)/s(q^k), 2s(n^2)/D(q^k),
/// q sigma(n^2) - 2(q-1) n^2 and gcd(n^2, sigma(n^2)); the quasi rule is
/// applied to q^k.
inline IndexChain index_chain(const EulerianCandidate& c) {
  const Natural n = c.n();
  const Natural n2 = n * n;
  const Natural q = c.q();
  const Natural qk = pow(q, c.k());
  const Natural sig_n2 = sigma_of_square(c.spec().n_factors);
  const Natural sig_qk = special_sigma(c.spec());

  const Integer d_n2 = checked_sub(to_integer(Natural{2} * n2), to_integer(sig_n2));
  const Integer s_qk = checked_sub(to_integer(sig_qk), to_integer(qk));
  const Integer s_n2 = checked_sub(to_integer(sig_n2), to_integer(n2));
  const Integer d_qk = checked_sub(to_integer(Natural{2} * qk), to_integer(sig_qk));

  auto quotient = [](std::string expr, Integer num, Integer den) -> ChainMember {
    if (den == 0 || num % den != 0) {
      return {std::move(expr), std::nullopt, "non-exact: " + to_string(num) + " / " + to_string(den)};
    }
    return {std::move(expr), num / den, to_string(num) + " / " + to_string(den)};
  };

  IndexChain chain;
  chain.members[0] = quotient("sigma(n^2)/q^k", to_integer(sig_n2), to_integer(qk));
  chain.members[1] = quotient("2n^2/sigma(q^k)", to_integer(Natural{2} * n2), to_integer(sig_qk));
  chain.members[2] = quotient("D(n^2)/s(q^k)", d_n2, s_qk);
  chain.members[3] = quotient("2s(n^2)/D(q^k)", checked_mul(2, s_n2), d_qk);
  const Integer linear =
      checked_sub(checked_mul(to_integer(q), to_integer(sig_n2)),
                  checked_mul(checked_mul(2, checked_sub(to_integer(q), 1)), to_integer(n2)));
  chain.members[4] = {"q*sigma(n^2) - 2(q-1)n^2", linear, "direct"};
  chain.members[5] = {"gcd(n^2, sigma(n^2))", to_integer(gcd(n2, sig_n2)), "direct"};

  bool agree = chain.members[0].value.has_value();
  std::string detail;
  for (const auto& m : chain.members) {
    agree = agree && m.value.has_value() && *m.value == *chain.members[0].value;
    detail += (detail.empty() ? "" : ", ") + m.expression + "=" + (m.value ? to_string(*m.value) : m.detail);
  }
  if (agree && *chain.members[0].value > 0) {
    chain.index = Natural::from_u128(static_cast<u128>(*chain.members[0].value));
  }
  chain.verdict = {"index chain agrees", agree, detail};
  return chain;
}

}  // namespace opn
