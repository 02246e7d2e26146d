#include <gtest/gtest.h>

#include "opn/candidate.hpp"
#include "opn/experiments.hpp"

using namespace opn;

namespace {

CandidateSpec spec(u64 n, u64 q, unsigned k, bool quasi, bool strict) {
  return {factor(Natural{n}), Natural{q}, k, quasi, strict};
}

const Verdict& find(const SpoofReport& r, const std::string& name) {
  for (const auto& v : r.checks) {
    if (v.name == name) return v;
  }
  throw std::runtime_error("no verdict " + name);
}

}  // namespace

TEST(Descartes, Perfection) {
  const EulerianCandidate c = descartes_candidate();
  EXPECT_EQ(c.n(), Natural{3003});
  EXPECT_EQ(c.q(), Natural{22021});
  EXPECT_TRUE(c.quasi());
  EXPECT_EQ(special_sigma(c.spec()) * sigma_of_square(c.spec().n_factors), Natural{22022} * Natural{18035199});
  EXPECT_EQ(Natural{22022} * Natural{18035199}, Natural{2} * Natural{22021} * Natural{9018009});
}

TEST(Descartes, StrictModeFailsOnlyPrimality) {
  CandidateSpec s = descartes_candidate().spec();
  s.strict = true;
  const SpoofReport r = spoof_check(s);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(find(r, "perfection").passed);
  EXPECT_FALSE(find(r, "q prime").passed);
  EXPECT_EQ(find(r, "q prime").detail, "22021 = 19^2*61");
  EXPECT_TRUE(find(r, "q = 1 (mod 4)").passed);
  EXPECT_TRUE(find(r, "k = 1 (mod 4)").passed);
  EXPECT_THROW(EulerianCandidate{s}, InvalidCandidate);
}

TEST(Descartes, InducedTriple) {
  const AbstractTriple t = descartes_candidate().triple();
  EXPECT_EQ(t.i(), Natural{819});
  EXPECT_EQ(gcd_profile(t).G, Natural{91});
}

TEST(IndexChain, DescartesAllSixAgree) {
  const IndexChain chain = index_chain(descartes_candidate());
  EXPECT_TRUE(chain.verdict.passed) << chain.verdict.detail;
  ASSERT_TRUE(chain.index.has_value());
  EXPECT_EQ(*chain.index, Natural{819});
  for (const auto& m : chain.members) {
    ASSERT_TRUE(m.value.has_value()) << m.expression;
    EXPECT_EQ(*m.value, 819) << m.expression;
  }
}

TEST(SpoofCheck, PerfectionFailures) {
  EXPECT_FALSE(find(spoof_check(spec(3, 5, 1, false, true)), "perfection").passed);  // 6*13 != 2*45
  EXPECT_THROW(EulerianCandidate(spec(3, 5, 1, false, true)), InvalidCandidate);
  EXPECT_FALSE(find(spoof_check(spec(1, 5, 1, false, false)), "perfection").passed);  // 6 != 10

  CandidateSpec d = descartes_candidate().spec();
  d.quasi = false;  // sigma(22021) = 381 * 62 = 23622
  const SpoofReport r = spoof_check(d);
  EXPECT_FALSE(find(r, "perfection").passed);
  EXPECT_THROW(EulerianCandidate{d}, InvalidCandidate);
  try {
    EulerianCandidate{d};
  } catch (const InvalidCandidate& e) {
    EXPECT_FALSE(e.report().passed());
  }
}

TEST(SpoofCheck, StrictCongruences) {
  const SpoofReport r = spoof_check(spec(1, 3, 1, false, true));
  EXPECT_FALSE(find(r, "q = 1 (mod 4)").passed);
  EXPECT_TRUE(find(r, "q prime").passed);
  const SpoofReport r2 = spoof_check(spec(1, 5, 3, false, true));
  EXPECT_FALSE(find(r2, "k = 1 (mod 4)").passed);
}

TEST(SpoofCheck, StructuralViolationsReportedSeparately) {
  const SpoofReport r = spoof_check(spec(6, 3, 1, false, false));
  EXPECT_FALSE(find(r, "n odd").passed);
  EXPECT_FALSE(find(r, "gcd(q, n) = 1").passed);
  EXPECT_TRUE(find(r, "q >= 3").passed);
}
