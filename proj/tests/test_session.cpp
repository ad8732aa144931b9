#include <gtest/gtest.h>

#include "exemplar/error.hpp"
#include "exemplar/kernel.hpp"
#include "exemplar/library.hpp"
#include "exemplar/parser.hpp"
#include "exemplar/session.hpp"

using namespace exemplar;

namespace {

Errc codeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::Syntax;
}

Library tutorial() { return readLibrary(EXEMPLAR_DATA_DIR "/tutorial_library.json"); }

Session tutorialSession() {
  Session s = Session::standard();
  const LoadReport r = loadLibraries(s, {tutorial()});
  EXPECT_TRUE(r.skipped.empty());
  return s;
}

// Replays an exported script from the root goal under the core grammar only.
std::vector<Goal> replay(const std::string& goal, const std::string& script) {
  Session s = Session::standard();
  s.startProof(goal);
  if (!script.empty()) {
    const TacticExpr e = parseTactic(s.grammar(), script);
    const TacticResult r = applyTactic(evalTacticExpr(e, s.registry(), s.store()).tactic(), Goal{{}, parseTerm(goal)});
    return r.subgoals;
  }
  return {Goal{{}, parseTerm(goal)}};
}

bool sameGoals(const std::vector<Goal>& a, const std::vector<Goal>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!alphaEqualGoals(a[i], b[i])) return false;
  return true;
}

const char* kLeTrans = "!a b c. a <= b /\\ b <= c ==> a <= c /\\ (c + 0 = 0 + c \\/ F)";
const char* kLeTransSteps[] = {"introduce assumptions.",
                               "we show 'a <= c' using (follows from [LESS_EQ_TRANS]).",
                               "trivial.",
                               "left.",
                               "rewrite with [ADD_0].",
                               "simplify."};

}  // namespace

TEST(SplitSentences, Examples) {
  EXPECT_EQ(splitSentences("case split. simplify with [REAL_LE_LT]."),
            (std::vector<std::string>{"case split", "simplify with [REAL_LE_LT]"}));
  EXPECT_EQ(splitSentences("we show 'x = 1.0'."), (std::vector<std::string>{"we show 'x = 1.0'"}));
  EXPECT_TRUE(splitSentences("").empty());
  EXPECT_TRUE(splitSentences(" . .\n").empty());
  EXPECT_EQ(splitSentences("a (b. c). [d. e] f"), (std::vector<std::string>{"a (b. c)", "[d. e] f"}));
  EXPECT_EQ(codeOf([] { splitSentences("we show 'p. q"); }), Errc::UnbalancedQuotation);
}

TEST(Session, StartProof) {
  Session s = Session::standard();
  s.startProof("!n. n + 0 = n");
  ASSERT_TRUE(s.tree());
  EXPECT_EQ(s.tree()->openCount(), 1u);
  EXPECT_TRUE(s.transcript().empty());
  EXPECT_EQ(codeOf([&] { s.startProof("p ==> p"); }), Errc::SessionBusy);
  Session t = Session::standard();
  EXPECT_EQ(codeOf([&] { t.startProof("n +"); }), Errc::Syntax);
  EXPECT_EQ(codeOf([&] { t.nltac("simplify."); }), Errc::NoProof);
}

TEST(Session, NltacClosesWithLibrary) {
  Session s = tutorialSession();
  s.startProof("p /\\ q ==> q /\\ p");
  s.nltac("introduce assumptions. simplify. simplify.");
  EXPECT_TRUE(s.tree()->closed());
  const Thm th = s.qed("swap");
  EXPECT_TRUE(th.hyps().empty());
  EXPECT_TRUE(alphaEqual(th.concl(), parseTerm("p /\\ q ==> q /\\ p")));
  EXPECT_TRUE(replayMatches(th));
  EXPECT_TRUE(s.store().contains("swap"));
}

TEST(Session, Errors) {
  Session s = tutorialSession();
  s.startProof("p ==> p");
  try {
    s.nltac("frobnicate the goal.");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotUnderstood);
    ASSERT_FALSE(e.details().empty());
    EXPECT_EQ(e.details()[0], "frobnicate the goal");
  }
  EXPECT_EQ(codeOf([&] { s.nltac("split the goal."); }), Errc::TacticFails);
  EXPECT_EQ(codeOf([&] { s.nltac("Goal 'q'."); }), Errc::NoSuchSubgoal);
  EXPECT_EQ(codeOf([&] { s.qed(); }), Errc::ProofIncomplete);
  EXPECT_EQ(codeOf([&] { s.nltac("introduce assumptions. simplify. simplify."); }), Errc::ProofAlreadyComplete);
  // The failed call left no trace.
  EXPECT_TRUE(s.transcript().empty());
  EXPECT_EQ(s.tree()->openCount(), 1u);
}

TEST(Session, GoalNavigation) {
  Session s = tutorialSession();
  s.startProof("!n. 2 * sum n = n * (n + 1)");
  s.nltac("induction on 'n'.");
  ASSERT_EQ(s.tree()->openCount(), 2u);
  s.nltac("Next Goal.");
  EXPECT_EQ(s.tree()->focus(), 1u);
  s.nltac("Next Goal.");
  EXPECT_EQ(s.tree()->focus(), 0u);
  s.nltac("Goal '2 * sum (SUC n) = SUC n * (SUC n + 1)'. rewrite with [sum_def]. simplify with [LEFT_ADD_DISTRIB]. End.");
  ASSERT_EQ(s.tree()->openCount(), 1u);
  EXPECT_EQ(s.tree()->focus(), 0u);
  EXPECT_TRUE(alphaEqual(s.tree()->openGoals()[0].concl, parseTerm("2 * sum 0 = 0 * (0 + 1)")));
  s.nltac("simplify with [sum_def].");
  EXPECT_TRUE(s.tree()->closed());
  // Out of order navigation still exports a replayable script.
  const std::string script = s.exportScript();
  EXPECT_TRUE(replay("!n. 2 * sum n = n * (n + 1)", script).empty()) << script;
  EXPECT_TRUE(replayMatches(s.qed("closed_form_sum")));
}

TEST(Session, NlexplainFragments) {
  Session s = tutorialSession();
  s.startProof("p ==> p");
  const Explained e = s.nlexplain("introduce assumptions.");
  EXPECT_EQ(e.fragment, "rpt strip_tac");
  EXPECT_NE(e.goal.find("p"), std::string::npos);
  EXPECT_EQ(codeOf([&] { s.nlexplain("Next Goal."); }), Errc::DirectiveNotSupported);
  EXPECT_EQ(codeOf([&] { s.nlexplain("End"); }), Errc::DirectiveNotSupported);

  Session t = tutorialSession();
  t.startProof("p /\\ q ==> q");
  t.nlexplain("introduce assumptions");
  const Explained w = t.nlexplain("we show 'p' using (simplify).");
  EXPECT_EQ(w.fragment, "` p ` by ( fs [ ] )");
  EXPECT_EQ(t.exportScript(), "rpt strip_tac \\\\ ` p ` by ( fs [ ] )");
  EXPECT_TRUE(sameGoals(replay("p /\\ q ==> q", t.exportScript()), t.tree()->openGoals()));
}

TEST(Session, NlexplainRoundTrip) {
  Session s = tutorialSession();
  s.startProof(kLeTrans);
  for (const char* step : kLeTransSteps) {
    s.nlexplain(step);
    EXPECT_TRUE(sameGoals(replay(kLeTrans, s.exportScript()), s.tree()->openGoals())) << step;
  }
  EXPECT_TRUE(s.tree()->closed());
  EXPECT_EQ(s.transcript().size(), 6u);
  EXPECT_EQ(s.exportScript(),
            "rpt strip_tac \\\\ ` a <= c ` by ( metis_tac [ LESS_EQ_TRANS ] ) \\\\ metis_tac [ ] \\\\ disj1_tac "
            "\\\\ rewrite_tac [ ADD_0 ] \\\\ fs [ ]");
  EXPECT_TRUE(replayMatches(s.qed()));
}

TEST(Session, BatchEqualsStepwise) {
  Session a = tutorialSession();
  Session b = tutorialSession();
  a.startProof(kLeTrans);
  b.startProof(kLeTrans);
  std::string all;
  for (const char* step : kLeTransSteps) {
    all += std::string(step) + " ";
    b.nltac(step);
  }
  a.nltac(all);
  EXPECT_EQ(a.transcript(), b.transcript());
  EXPECT_EQ(a.renderGoals(), b.renderGoals());
  EXPECT_EQ(a.historySize(), b.historySize());
}

TEST(Session, Undo) {
  Session s = tutorialSession();
  EXPECT_EQ(codeOf([&] { s.undo(); }), Errc::NothingToUndo);
  s.startProof(kLeTrans);
  const std::string before = s.renderGoals();
  const auto version = s.grammar().version();
  s.nltac("introduce assumptions.");
  EXPECT_EQ(s.transcript().size(), 1u);
  s.undo();
  EXPECT_EQ(s.renderGoals(), before);
  EXPECT_EQ(s.grammar().version(), version);
  EXPECT_TRUE(s.transcript().empty());
  EXPECT_EQ(codeOf([&] { s.undo(); }), Errc::NothingToUndo);

  s.nltac("introduce assumptions. Next Goal.");
  EXPECT_EQ(s.historySize(), 2u);
  s.undo();
  EXPECT_EQ(s.transcript(), (std::vector<std::string>{"rpt strip_tac"}));
}

TEST(Session, DefThenUndo) {
  Session s = Session::standard();
  s.startProof("p ==> p");
  const DefResult r = s.define("finish it off", "rpt strip_tac THEN fs [ ]");
  EXPECT_EQ(r.rulesAdded(), 1);
  EXPECT_EQ(s.learnedDefs().size(), 1u);
  s.undo();
  EXPECT_TRUE(s.learnedDefs().empty());
  EXPECT_EQ(codeOf([&] { s.nltac("finish it off."); }), Errc::NotUnderstood);
  s.define("finish it off", "rpt strip_tac THEN fs [ ]");
  s.nltac("finish it off.");
  EXPECT_TRUE(s.tree()->closed());
  EXPECT_EQ(s.exportScript(), "rpt strip_tac THEN fs [ ]");
}

TEST(Session, CustomTactics) {
  Session s = Session::standard();
  s.addCustom("NAT_ASM_ARITH_TAC", CustomKind::Tactic);
  s.addCustom("MY_OPAQUE_TAC", CustomKind::Tactic);
  EXPECT_EQ(codeOf([&] { s.addCustom("MY_OPAQUE_TAC", CustomKind::Tactic); }), Errc::DuplicateCustom);
  s.startProof("!x. x < x + 1");
  EXPECT_EQ(codeOf([&] { s.nltac("MY_OPAQUE_TAC."); }), Errc::OpaqueTactic);
  s.nltac("NAT_ASM_ARITH_TAC.");
  EXPECT_TRUE(s.tree()->closed());
}

TEST(Session, QedOnTrivialGoal) {
  Session s = Session::standard();
  s.startProof("p ==> p");
  s.nltac("strip_tac THEN fs [ ]");
  const Thm th = s.qed();
  EXPECT_TRUE(th.hyps().empty());
  EXPECT_EQ(render(th.concl()), "p ==> p");
  EXPECT_EQ(s.exportScript(), "strip_tac THEN fs [ ]");
}
