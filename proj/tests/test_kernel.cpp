#include <gtest/gtest.h>

#include <sstream>

#include "exemplar/error.hpp"
#include "exemplar/kernel.hpp"
#include "exemplar/theorem_store.hpp"

using namespace exemplar;

namespace {

Term nat(const char* n) { return Term::var(n, Sort::Nat); }

Thm inferT(Rule r, std::initializer_list<Thm> ps = {}, std::initializer_list<Term> as = {}) {
  std::vector<Thm> p(ps);
  std::vector<Term> a(as);
  return infer(r, p, a);
}

Thm spec(const Thm& th, const Term& t) { return inferT(Rule::ForallElim, {th}, {t}); }

}  // namespace

TEST(Kernel, AssumeAndDischarge) {
  const Term p = parseTerm("p");
  const Thm a = inferT(Rule::Assume, {}, {p});
  ASSERT_EQ(a.hyps().size(), 1u);
  EXPECT_TRUE(alphaEqual(a.concl(), p));
  const Thm d = inferT(Rule::ImpIntro, {a}, {p});
  EXPECT_TRUE(d.hyps().empty());
  EXPECT_EQ(render(d.concl()), "p ==> p");
}

TEST(Kernel, RuleMismatch) {
  const Thm a = inferT(Rule::Assume, {}, {parseTerm("p")});
  try {
    inferT(Rule::ConjElimL, {a});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RuleMismatch);
  }
  EXPECT_THROW(inferT(Rule::Taut, {}, {parseTerm("p ==> q")}), Error);
  EXPECT_THROW(inferT(Rule::NatRing, {}, {parseTerm("x + 1", Sort::Nat), parseTerm("x", Sort::Nat)}), Error);
  EXPECT_THROW(infer(Rule::StoreAxiom), Error);
}

// n + 0 = n by hand: base from ADD_ZERO, step from ADD_SUC and congruence.
TEST(Kernel, InductionMatchesHandProof) {
  const Term n = nat("n");
  const Term zero = Term::zero();
  const Thm base = spec(infer(Rule::AddZero), zero);
  EXPECT_EQ(render(base.concl()), "0 + 0 = 0");

  const Term ih = parseTerm("n + 0 = n");
  const Thm ihThm = inferT(Rule::Assume, {}, {ih});
  const Thm addSuc = spec(spec(infer(Rule::AddSuc), n), zero);
  const Thm cong = inferT(Rule::Congruence, {ihThm}, {Term::suc(Term::add(n, zero))});
  const Thm stepBody = inferT(Rule::Trans, {addSuc, cong});
  const Thm step = inferT(Rule::ForallIntro, {inferT(Rule::ImpIntro, {stepBody}, {ih})}, {n});
  EXPECT_EQ(render(step.concl()), "!n. n + 0 = n ==> SUC n + 0 = SUC n");

  const Thm ind = inferT(Rule::NatInduction, {base, step});
  EXPECT_TRUE(ind.hyps().empty());
  EXPECT_TRUE(alphaEqual(ind.concl(), parseTerm("!n. n + 0 = n")));
  EXPECT_TRUE(replayMatches(ind));
}

TEST(Kernel, ForallIntroChecksHyps) {
  const Thm a = inferT(Rule::Assume, {}, {parseTerm("x = 0")});
  EXPECT_THROW(inferT(Rule::ForallIntro, {a}, {nat("x")}), Error);
}

TEST(Kernel, DecisionRules) {
  const Thm t = inferT(Rule::Taut, {}, {parseTerm("p /\\ q ==> q /\\ p")});
  EXPECT_TRUE(t.hyps().empty());
  const Thm r = inferT(Rule::NatRing, {}, {parseTerm("(x + 1) * (x + 1)", Sort::Nat),
                                           parseTerm("x * x + 2 * x + 1", Sort::Nat)});
  EXPECT_EQ(render(r.concl()), "(x + 1) * (x + 1) = x * x + 2 * x + 1");
  const Thm e = inferT(Rule::NatEval, {}, {parseTerm("3 < 2")});
  EXPECT_EQ(render(e.concl()), "3 < 2 <=> F");
}

TEST(Kernel, ExistsElimNeedsFreshWitness) {
  const Thm ex = inferT(Rule::Assume, {}, {parseTerm("?k. x + k = y")});
  const Thm body = inferT(Rule::Assume, {}, {parseTerm("x + k = y")});
  const Thm le = inferT(Rule::Taut, {}, {parseTerm("T")});
  const Thm ok = inferT(Rule::ExistsElim, {ex, le}, {nat("k")});
  EXPECT_EQ(ok.hyps().size(), 1u);
  EXPECT_THROW(inferT(Rule::ExistsElim, {ex, inferT(Rule::ImpIntro, {body}, {parseTerm("q")})}, {nat("k")}),
               Error);
}

TEST(TheoremStore, BundledLoadsAndCertifies) {
  const TheoremStore store = TheoremStore::bundled();
  for (const char* name : {"ADD_COMM", "ADD_ASSOC", "MULT_CLAUSES", "LE_LT", "NOT_LESS_EQUAL", "sum_def",
                           "LEFT_ADD_DISTRIB", "CONJ_COMM", "ADD_SUC", "LE_DEF"}) {
    ASSERT_TRUE(store.contains(name)) << name;
    EXPECT_TRUE(replayMatches(store.get(name))) << name;
  }
  EXPECT_EQ(store.provenance("ADD_COMM"), Provenance::Ring);
  EXPECT_EQ(store.provenance("CONJ_COMM"), Provenance::Tautology);
  EXPECT_EQ(store.provenance("sum_def"), Provenance::KernelAxiom);
  EXPECT_FALSE(store.find("NO_SUCH_THM"));
  try {
    store.get("NO_SUCH_THM");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownTheorem);
  }
}

TEST(TheoremStore, ParseReportsLine) {
  std::istringstream in("# c\nA : p ==> p\nB p ==> q\n");
  try {
    TheoremStore::parse(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FormatError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}
