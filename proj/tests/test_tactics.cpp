#include <gtest/gtest.h>

#include "exemplar/error.hpp"
#include "exemplar/registry.hpp"
#include "exemplar/tactics.hpp"
#include "exemplar/theorem_store.hpp"

using namespace exemplar;

namespace {

class Tactics : public ::testing::Test {
 protected:
  void SetUp() override { setValidation(Validation::Eager); }
  void TearDown() override { setValidation(Validation::Lazy); }

  const TheoremStore& store = storeInstance();
  const Registry& reg = registryInstance();

  static const TheoremStore& storeInstance() {
    static const TheoremStore s = TheoremStore::bundled();
    return s;
  }
  static const Registry& registryInstance() {
    static const Registry r = builtinRegistry(storeInstance());
    return r;
  }

  Tactic tac(const std::string& name) const { return evalTacticExpr(TacticExpr::lookup(name, types::TAC()), reg, store).tactic(); }

  Tactic withThms(const std::string& name, std::vector<std::string> thms) const {
    std::vector<TacticExpr> items;
    for (auto& t : thms) items.push_back(TacticExpr::thmRef(t));
    auto e = TacticExpr::apply(TacticExpr::lookup(name, types::THMLIST_TAC()), TacticExpr::thmList(items));
    return evalTacticExpr(e, reg, store).tactic();
  }

  Tactic withQuot(const std::string& name, const std::string& q) const {
    auto e = TacticExpr::apply(TacticExpr::lookup(name, types::QUOT_TAC()), TacticExpr::quot(q));
    return evalTacticExpr(e, reg, store).tactic();
  }

  static Goal goal(const std::string& concl, std::vector<std::string> asl = {}) {
    Goal g{{}, parseTerm(concl)};
    for (auto& a : asl) g.asl.push_back(parseTerm(a));
    return g;
  }

  static void expectClosed(const Tactic& t, const Goal& g) {
    TacticResult r = applyTactic(t, g);
    ASSERT_TRUE(r.subgoals.empty()) << render(r.subgoals.front());
    Thm th = r.just({});
    EXPECT_TRUE(achieves(th, g));
    EXPECT_TRUE(replayMatches(th));
  }
};

}  // namespace

TEST_F(Tactics, RegistryCoversRequiredNamesAndSignatures) {
  for (const char* name : {"gen_tac", "all_tac", "strip_tac", "rpt", "conj_tac", "disj1_tac", "disj2_tac", "EQ_TAC",
                           "CCONTR_TAC", "NO_TAC", "fs", "rw", "simp", "metis_tac", "assume_tac", "irule",
                           "imp_res_tac", "first_x_assum", "qpat_x_assum", "qspec_then", "qspecl_then", "Induct_on",
                           "Cases_on", "pop_assum"})
    EXPECT_TRUE(reg.contains(name)) << name;
  EXPECT_GE(reg.entries().size(), 20u);
  for (const TacticType* t : {&types::TAC(), &types::THM_TAC(), &types::THMLIST_TAC(), &types::TAC_TAC(),
                              &types::QUOT_TAC(), &types::THMTAC_TAC(), &types::TAC_TAC_TAC(),
                              &types::QUOT_THMTAC_THM_TAC(), &types::QUOTLIST_THMTAC_THM_TAC()})
    EXPECT_FALSE(reg.namesOfType(*t).empty()) << t->str();
  EXPECT_EQ(reg.find("gen_tac")->type, types::TAC());
  EXPECT_EQ(reg.find("fs")->type, types::THMLIST_TAC());
  EXPECT_EQ(reg.find("frobnicate"), nullptr);
}

TEST_F(Tactics, StripTacIntroducesAssumption) {
  TacticResult r = applyTactic(tac("strip_tac"), goal("p ==> q"));
  ASSERT_EQ(r.subgoals.size(), 1u);
  ASSERT_EQ(r.subgoals[0].asl.size(), 1u);
  EXPECT_EQ(render(r.subgoals[0].asl[0]), "p");
  EXPECT_EQ(render(r.subgoals[0].concl), "q");
}

TEST_F(Tactics, NoTacFails) {
  try {
    applyTactic(tac("NO_TAC"), goal("T"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TacticFails);
  }
}

TEST_F(Tactics, InductOnMatchesHandInductionInstance) {
  const Goal g = goal("!n. n + 0 = n");
  TacticResult r = applyTactic(withQuot("Induct_on", "n"), g);
  ASSERT_EQ(r.subgoals.size(), 2u);
  EXPECT_TRUE(alphaEqualGoals(r.subgoals[0], goal("0 + 0 = 0")));
  EXPECT_TRUE(alphaEqualGoals(r.subgoals[1], goal("SUC n + 0 = SUC n", {"n + 0 = n"})));

  // The base and step obligations are exactly the premises NAT_INDUCTION needs.
  const Thm base = applyTactic(tac("DECIDE_TAC"), r.subgoals[0]).just({});
  const Thm step = applyTactic(withThms("fs", {}), r.subgoals[1]).just({});
  const Thm th = r.just({base, step});
  EXPECT_TRUE(alphaEqual(th.concl(), g.concl));
  EXPECT_TRUE(th.hyps().empty());
  EXPECT_TRUE(replayMatches(th));
}

TEST_F(Tactics, FsClosesTutorialSteps) {
  expectClosed(withThms("fs", {"sum_def"}), goal("2 * sum 0 = 0 * (0 + 1)"));
  expectClosed(withThms("fs", {"sum_def", "LEFT_ADD_DISTRIB"}),
               goal("2 * sum (SUC n) = SUC n * (SUC n + 1)", {"2 * sum n = n * (n + 1)"}));
}

TEST_F(Tactics, GsymReversesOrientation) {
  const Thm assoc = store.get("ADD_ASSOC");
  const Thm rev = gsymThm(assoc);
  EXPECT_TRUE(alphaEqual(rev.concl().arg(0), assoc.concl().arg(1)));
  EXPECT_TRUE(alphaEqual(rev.concl().arg(1), assoc.concl().arg(0)));

  auto rewritten = [&](const TacticExpr& thm) {
    auto e = TacticExpr::apply(TacticExpr::lookup("rewrite_tac", types::THMLIST_TAC()), TacticExpr::thmList({thm}));
    TacticResult r = applyTactic(evalTacticExpr(e, reg, store).tactic(), goal("a + (b + c) = (a + b) + c"));
    return r;
  };
  // Forward orientation rewrites the left side into the right side and closes.
  EXPECT_TRUE(rewritten(TacticExpr::thmRef("ADD_ASSOC")).subgoals.empty());
  EXPECT_TRUE(rewritten(TacticExpr::gsym(TacticExpr::thmRef("ADD_ASSOC"))).subgoals.empty());

  auto once = [&](const TacticExpr& thm) {
    auto e = TacticExpr::apply(TacticExpr::lookup("rewrite_tac", types::THMLIST_TAC()), TacticExpr::thmList({thm}));
    TacticResult r = applyTactic(evalTacticExpr(e, reg, store).tactic(), goal("x = a + (b + c)"));
    return render(r.subgoals.at(0).concl);
  };
  EXPECT_EQ(once(TacticExpr::thmRef("ADD_ASSOC")), "x = a + b + c");
  auto flipped = TacticExpr::gsym(TacticExpr::thmRef("ADD_ASSOC"));
  auto e = TacticExpr::apply(TacticExpr::lookup("rewrite_tac", types::THMLIST_TAC()), TacticExpr::thmList({flipped}));
  TacticResult r = applyTactic(evalTacticExpr(e, reg, store).tactic(), goal("x = (a + b) + c"));
  EXPECT_EQ(render(r.subgoals.at(0).concl), "x = a + (b + c)");
}

TEST_F(Tactics, UnknownTheoremAtExecution) {
  auto e = TacticExpr::apply(TacticExpr::lookup("fs", types::THMLIST_TAC()),
                             TacticExpr::thmList({TacticExpr::thmRef("NO_SUCH_THM")}));
  try {
    evalTacticExpr(e, reg, store);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::UnknownTheorem);
  }
}

TEST_F(Tactics, OpaqueEntriesRefuseExecution) {
  Registry r = reg;
  r.add("MY_SOLVER", types::TAC(), std::nullopt);
  try {
    evalTacticExpr(TacticExpr::lookup("MY_SOLVER", types::TAC()), r, store);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::OpaqueTactic);
  }
  EXPECT_THROW(r.add("fs", types::THMLIST_TAC(), std::nullopt), Error);
}

TEST_F(Tactics, PropositionalTactics) {
  expectClosed(tacticals::then(tacticals::repeat(tac("strip_tac")), withThms("fs", {})), goal("p /\\ q ==> q /\\ p"));
  expectClosed(withThms("metis_tac", {}), goal("(p ==> q) /\\ (q ==> r) ==> p ==> r"));
  expectClosed(tacticals::then(tac("EQ_TAC"), tacticals::then(tac("strip_tac"), withThms("fs", {}))), goal("p <=> p"));
  TacticResult r = applyTactic(tac("conj_tac"), goal("p /\\ q"));
  EXPECT_EQ(r.subgoals.size(), 2u);
  r = applyTactic(tac("CCONTR_TAC"), goal("p"));
  ASSERT_EQ(r.subgoals.size(), 1u);
  EXPECT_EQ(render(r.subgoals[0].concl), "F");
}

TEST_F(Tactics, MetisBackchainsThroughLemmas) {
  expectClosed(withThms("metis_tac", {"LESS_TRANS"}), goal("a < b /\\ b < c ==> a < c"));
  expectClosed(withThms("metis_tac", {"LESS_IMP_LESS_OR_EQ", "LESS_TRANS"}), goal("a < b ==> b < c ==> a <= c"));
  EXPECT_THROW(applyTactic(withThms("metis_tac", {}), goal("a < b")), Error);
}

TEST_F(Tactics, DecideTacClosesArithmetic) {
  expectClosed(tac("DECIDE_TAC"), goal("n < n + 1"));
  expectClosed(tac("DECIDE_TAC"), goal("a <= b ==> a < b + 1"));
  expectClosed(tac("DECIDE_TAC"), goal("2 + 3 = 5"));
  EXPECT_THROW(applyTactic(tac("DECIDE_TAC"), goal("a < b")), Error);
}

TEST_F(Tactics, TheoremTactics) {
  auto thmTac = [&](const std::string& name, const std::string& thm) {
    auto e = TacticExpr::apply(TacticExpr::lookup(name, types::THM_TAC()), TacticExpr::thmRef(thm));
    return evalTacticExpr(e, reg, store).tactic();
  };
  TacticResult r = applyTactic(thmTac("assume_tac", "LESS_REFL"), goal("p"));
  ASSERT_EQ(r.subgoals.size(), 1u);
  EXPECT_EQ(r.subgoals[0].asl.size(), 1u);

  r = applyTactic(thmTac("irule", "LESS_IMP_LESS_OR_EQ"), goal("a <= b"));
  ASSERT_EQ(r.subgoals.size(), 1u);
  EXPECT_EQ(render(r.subgoals[0].concl), "a < b");

  auto popMp = evalTacticExpr(TacticExpr::apply(TacticExpr::lookup("pop_assum", types::THMTAC_TAC()),
                                                TacticExpr::lookup("mp_tac", types::THM_TAC())),
                              reg, store)
                   .tactic();
  r = applyTactic(popMp, goal("q", {"p"}));
  ASSERT_EQ(r.subgoals.size(), 1u);
  EXPECT_EQ(render(r.subgoals[0].concl), "p ==> q");

  auto qspec = TacticExpr::apply(
      TacticExpr::apply(TacticExpr::apply(TacticExpr::lookup("qspec_then", types::QUOT_THMTAC_THM_TAC()),
                                          TacticExpr::quot("b")),
                        TacticExpr::lookup("assume_tac", types::THM_TAC())),
      TacticExpr::thmRef("NUM_CASES"));
  r = applyTactic(evalTacticExpr(qspec, reg, store).tactic(), goal("T"));
  ASSERT_EQ(r.subgoals.size(), 1u);
  EXPECT_EQ(render(r.subgoals[0].asl.at(0)), "b = 0 \\/ (?m. b = SUC m)");
}

TEST_F(Tactics, CasesOnAndWitness) {
  TacticResult r = applyTactic(withQuot("Cases_on", "n"), goal("n = 0 \\/ 0 < n"));
  ASSERT_EQ(r.subgoals.size(), 2u);
  for (const Goal& g : r.subgoals) EXPECT_TRUE(applyTactic(withThms("fs", {}), g).subgoals.empty()) << render(g);
  expectClosed(tacticals::then(withQuot("qexists_tac", "3"), withThms("fs", {})), goal("?k. k + 2 = 5"));
}

TEST_F(Tactics, ByAndSufficesBy) {
  auto expr = TacticExpr::infix(InfixOp::By, TacticExpr::quot("q"),
                                TacticExpr::apply(TacticExpr::lookup("fs", types::THMLIST_TAC()), TacticExpr::thmList({})));
  TacticResult r = applyTactic(evalTacticExpr(expr, reg, store).tactic(), goal("r", {"p", "p ==> q"}));
  ASSERT_EQ(r.subgoals.size(), 1u);
  EXPECT_EQ(render(r.subgoals[0].asl.back()), "q");
  EXPECT_THROW(applyTactic(evalTacticExpr(expr, reg, store).tactic(), goal("r")), Error);

  auto suff = TacticExpr::infix(InfixOp::SufficesBy, TacticExpr::quot("p /\\ q"),
                                TacticExpr::apply(TacticExpr::lookup("fs", types::THMLIST_TAC()), TacticExpr::thmList({})));
  r = applyTactic(evalTacticExpr(suff, reg, store).tactic(), goal("q"));
  ASSERT_EQ(r.subgoals.size(), 1u);
  EXPECT_EQ(render(r.subgoals[0].concl), "p /\\ q");
}

TEST_F(Tactics, ThenLtFocusesFirstSubgoal) {
  auto e = TacticExpr::infix(InfixOp::ThenLt, TacticExpr::lookup("conj_tac", types::TAC()),
                             TacticExpr::apply(TacticExpr::lookup("fs", types::THMLIST_TAC()), TacticExpr::thmList({})));
  TacticResult r = applyTactic(evalTacticExpr(e, reg, store).tactic(), goal("T /\\ p"));
  ASSERT_EQ(r.subgoals.size(), 1u);
  EXPECT_EQ(render(r.subgoals[0].concl), "p");
}

TEST_F(Tactics, RewriteLoopIsBounded) {
  EXPECT_THROW(applyTactic(withThms("rewrite_tac", {"ADD1"}), goal("SUC a = b")), Error);
}

TEST_F(Tactics, StripKeepsWitnessFreshAgainstPendingConjuncts) {
  const Goal g = goal("~((?y. T) /\\ (y = 0 \\/ F))");
  TacticResult r;
  EXPECT_NO_THROW(r = applyTactic(tacticals::repeat(tactics::stripTac()), g));
  EXPECT_EQ(r.subgoals.size(), 1u);
}

TEST_F(Tactics, RepeatStopsWithoutProgress) {
  const Goal g = goal("p ==> q");
  TacticResult r = applyTactic(tacticals::repeat(tacticals::repeat(tacticals::repeat(tacticals::allTac()))), g);
  ASSERT_EQ(r.subgoals.size(), 1u);
  EXPECT_TRUE(alphaEqual(r.subgoals[0].concl, g.concl));
}
