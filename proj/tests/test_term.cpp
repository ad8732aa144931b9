#include <gtest/gtest.h>

#include <random>

#include "exemplar/error.hpp"
#include "exemplar/term.hpp"

using namespace exemplar;

namespace {

Term nat(const char* n) { return Term::var(n, Sort::Nat); }

}  // namespace

TEST(ParseTerm, Literals) {
  EXPECT_TRUE(alphaEqual(parseTerm("0 = 0"), Term::eq(Term::zero(), Term::zero())));
  const Term n = nat("n");
  EXPECT_TRUE(alphaEqual(parseTerm("!n. n + 0 = n"),
                         Term::forall("n", Term::eq(Term::add(n, Term::zero()), n))));
}

TEST(ParseTerm, NumeralDesugars) {
  const Term two = parseTerm("2", Sort::Nat);
  const Term hand = Term::suc(Term::suc(Term::zero()));
  ASSERT_EQ(two.sym(), Sym::Suc);
  ASSERT_EQ(two.arg(0).sym(), Sym::Suc);
  ASSERT_EQ(two.arg(0).arg(0).sym(), Sym::Zero);
  EXPECT_TRUE(alphaEqual(two, hand));
  EXPECT_EQ(render(hand), "2");
}

TEST(ParseTerm, Precedence) {
  EXPECT_TRUE(alphaEqual(parseTerm("~p /\\ q \\/ r ==> s <=> t"),
                         parseTerm("((((~p) /\\ q) \\/ r) ==> s) <=> t")));
  EXPECT_TRUE(alphaEqual(parseTerm("a ==> b ==> c"), parseTerm("a ==> (b ==> c)")));
  EXPECT_TRUE(alphaEqual(parseTerm("x + y * z = 1", Sort::Bool), parseTerm("x + (y * z) = 1")));
  EXPECT_TRUE(alphaEqual(parseTerm("a <> b"), parseTerm("~(a = b)")));
  EXPECT_TRUE(alphaEqual(parseTerm("a > b"), parseTerm("b < a")));
}

TEST(ParseTerm, Errors) {
  try {
    parseTerm("n +");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Syntax);
  }
  try {
    parseTerm("p /\\ p + 1 = 2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Sort);
  }
}

TEST(Alpha, BoundNamesIrrelevant) {
  EXPECT_TRUE(alphaEqual(parseTerm("!x. x = x"), parseTerm("!y. y = y")));
  EXPECT_FALSE(alphaEqual(parseTerm("!x. x = y"), parseTerm("!y. y = y")));
  EXPECT_EQ(compareTerms(parseTerm("?a. a < b"), parseTerm("?c. c < b")), 0);
}

TEST(Substitute, AvoidsCapture) {
  const Term t = parseTerm("!y. x < y");
  const Term r = substitute(t, nat("x"), nat("y"));
  ASSERT_TRUE(r.is(Sym::Forall));
  EXPECT_NE(r.name(), "y");
  EXPECT_TRUE(occursFree(nat("y"), r));
}

TEST(Match, Examples) {
  auto m = matchTerm(parseTerm("x + 0", Sort::Nat), parseTerm("SUC 0 + 0", Sort::Nat));
  ASSERT_TRUE(m);
  ASSERT_EQ(m->size(), 1u);
  EXPECT_EQ(render(m->front().second), "1");

  EXPECT_FALSE(matchTerm(parseTerm("x + x", Sort::Nat), parseTerm("1 + 2", Sort::Nat)));

  const Term pat = parseTerm("a = b");
  const Term target = parseTerm("n * 1 = n");
  auto s = matchTerm(pat, target);
  ASSERT_TRUE(s);
  EXPECT_TRUE(alphaEqual(substitute(pat, *s), target));
}

TEST(Match, FixedVariablesDoNotMatch) {
  const Term x = nat("x");
  const Term fixed[] = {x};
  EXPECT_FALSE(matchTerm(parseTerm("x + 0", Sort::Nat), parseTerm("y + 0", Sort::Nat), fixed));
  EXPECT_TRUE(matchTerm(parseTerm("x + 0", Sort::Nat), parseTerm("x + 0", Sort::Nat), fixed));
}

namespace {

class TermFuzzer {
 public:
  explicit TermFuzzer(unsigned seed) : rng_(seed) {}

  Term nat(int depth) {
    const int pick = pick_(depth <= 0 ? 2 : 7);
    switch (pick) {
      case 0: return Term::var(std::string(1, "xyz"[pick_(3)]), Sort::Nat);
      case 1: return Term::numeral(pick_(4));
      case 2: return Term::suc(nat(depth - 1));
      case 3: return Term::add(nat(depth - 1), nat(depth - 1));
      case 4: return Term::mul(nat(depth - 1), nat(depth - 1));
      case 5: return Term::sum(nat(depth - 1));
      default: return Term::numeral(pick_(12));
    }
  }

  Term prop(int depth) {
    const int pick = pick_(depth <= 0 ? 5 : 13);
    switch (pick) {
      case 0: return Term::var(std::string(1, "pq"[pick_(2)]), Sort::Bool);
      case 1: return Term::eq(nat(1), nat(1));
      case 2: return Term::lt(nat(1), nat(1));
      case 3: return Term::le(nat(1), nat(1));
      case 4: return pick_(2) ? Term::truth() : Term::falsity();
      case 5: return Term::neg(prop(depth - 1));
      case 6: return Term::conj(prop(depth - 1), prop(depth - 1));
      case 7: return Term::disj(prop(depth - 1), prop(depth - 1));
      case 8: return Term::imp(prop(depth - 1), prop(depth - 1));
      case 9: return Term::iff(prop(depth - 1), prop(depth - 1));
      case 10: return Term::forall(std::string(1, "xyn"[pick_(3)]), prop(depth - 1));
      case 11: return Term::exists(std::string(1, "xym"[pick_(3)]), prop(depth - 1));
      default: return Term::eq(nat(depth), nat(depth - 1));
    }
  }

 private:
  int pick_(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::mt19937 rng_;
};

}  // namespace

TEST(Render, RoundTripFuzz) {
  TermFuzzer fuzz(7);
  for (int i = 0; i < 3000; ++i) {
    const Term t = fuzz.prop(4);
    const std::string text = render(t);
    Term back;
    ASSERT_NO_THROW(back = parseTerm(text)) << text;
    EXPECT_EQ(render(back), text);
    EXPECT_TRUE(alphaEqual(back, t)) << text;
  }
}

TEST(Match, SubstitutionReproducesTarget) {
  TermFuzzer fuzz(11);
  int matched = 0;
  for (int i = 0; i < 2000; ++i) {
    const Term pattern = fuzz.prop(2);
    const Term target = fuzz.prop(2);
    if (auto s = matchTerm(pattern, target)) {
      ++matched;
      EXPECT_TRUE(alphaEqual(substitute(pattern, *s), target)) << render(pattern) << " / " << render(target);
    }
    Substitution inst;
    for (const Term& v : freeVars(pattern))
      inst.emplace_back(v, v.sort() == Sort::Nat ? fuzz.nat(1) : fuzz.prop(0));
    const Term instance = substitute(pattern, inst);
    auto back = matchTerm(pattern, instance);
    ASSERT_TRUE(back) << render(pattern) << " / " << render(instance);
    EXPECT_TRUE(alphaEqual(substitute(pattern, *back), instance));
  }
  EXPECT_GT(matched, 0);
}
