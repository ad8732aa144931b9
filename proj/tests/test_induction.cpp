#include <gtest/gtest.h>

#include "exemplar/error.hpp"
#include "exemplar/induction.hpp"
#include "exemplar/parser.hpp"
#include "exemplar/theorem_store.hpp"
#include "expr_gen.hpp"

using namespace exemplar;

namespace {

const TheoremStore& store() {
  static const TheoremStore s = TheoremStore::bundled();
  return s;
}

const Registry& registry() {
  static const Registry r = builtinRegistry(store());
  return r;
}

const Grammar& core() {
  static const Grammar g = coreGrammar(registry());
  return g;
}

TacticExpr parse(const Grammar& g, const std::string& s) { return parseTactic(g, s); }

Errc errorOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::IoError;
}

}  // namespace

TEST(Def, SimplifyWithTheorem) {
  DefResult r = def(core(), "simplify with ADD_ASSOC", "fs [ADD_ASSOC]");
  EXPECT_EQ(r.rulesAdded(), 2);
  ASSERT_TRUE(r.generalizedRule);
  EXPECT_EQ(r.generalizedRule->str(), "TACTIC -> simplify with THM :: \\x0. fs [ x0 ] :: induced");
  EXPECT_EQ(r.literalRule->str(), "TACTIC -> simplify with ADD_ASSOC :: fs [ ADD_ASSOC ] :: induced");
  EXPECT_EQ(parse(r.grammar, "simplify with ADD_COMM"), parse(core(), "fs [ADD_COMM]"));
  EXPECT_EQ(parse(r.grammar, "simplify with ADD_ASSOC"), parse(core(), "fs [ADD_ASSOC]"));
}

TEST(Def, SimplifyWithList) {
  DefResult r = def(core(), "simplify with [LE_LT]", "fs [LE_LT]");
  ASSERT_TRUE(r.generalizedRule);
  EXPECT_EQ(r.generalizedRule->rhs.back().cat, Category::ThmList);
  const TacticExpr e = parse(r.grammar, "simplify with [ADD_COMM, ADD_ASSOC]");
  EXPECT_EQ(e, parse(core(), "fs [ADD_COMM, ADD_ASSOC]"));
  EXPECT_EQ(e.child(1).children().size(), 2u);
}

TEST(Def, LiteralOnlyWithoutCorrespondences) {
  DefResult r = def(core(), "introduce assumptions", "rpt strip_tac");
  EXPECT_EQ(r.rulesAdded(), 1);
  EXPECT_FALSE(r.generalizedRule);
  EXPECT_EQ(parse(r.grammar, "introduce assumptions"), parse(core(), "rpt strip_tac"));
}

TEST(Def, Errors) {
  EXPECT_EQ(errorOf([] { def(core(), "case split", "qwzx_tac"); }), Errc::DefinitionUnparsable);
  DefResult r = def(core(), "introduce assumptions", "rpt strip_tac");
  EXPECT_EQ(errorOf([&] { def(r.grammar, "introduce assumptions", "gen_tac"); }), Errc::AlreadyDefined);
  DefResult same = def(r.grammar, "introduce assumptions", "rpt strip_tac");
  EXPECT_EQ(same.rulesAdded(), 0);
  EXPECT_EQ(same.grammar.version(), r.grammar.version());
  EXPECT_EQ(errorOf([] { def(core(), "", "gen_tac"); }), Errc::DefinitionUnparsable);
}

TEST(Def, AmbiguityGateRollsBack) {
  const Grammar g = core().addRule({Category::Tactic, kAtomLevel, {Symbol::word("WITNESS_THM"), Symbol::word("zap")},
                                    LogicalForm::templ({}, parse(core(), "gen_tac")), RuleSource::Induced, {}});
  const std::string before = g.dump();
  EXPECT_EQ(errorOf([&] { def(g, "ADD_COMM zap", "fs [ ADD_COMM ]"); }), Errc::WouldBeAmbiguous);
  EXPECT_EQ(g.dump(), before);
}

TEST(Def, Compositionality) {
  CustomResult c = addCustom(core(), registry(), "NAT_ASM_ARITH_TAC", CustomKind::Tactic,
                             knownCustom("NAT_ASM_ARITH_TAC", types::TAC(), store()));
  DefResult prove = def(c.grammar, "prove with [ ADD_ASSOC ]",
                        "all_tac THEN ( fs [ ADD_ASSOC ] THEN NO_TAC ) ORELSE ( rw [ ADD_ASSOC ] THEN NO_TAC ) ORELSE "
                        "NAT_ASM_ARITH_TAC ORELSE metis_tac [ ADD_ASSOC ]");
  EXPECT_EQ(prove.rulesAdded(), 2);
  DefResult from = def(prove.grammar, "'T' from [ CONJ_COMM ]", "'T' by ( prove with [ CONJ_COMM ] )");
  EXPECT_EQ(from.rulesAdded(), 2);
  ASSERT_TRUE(from.generalizedRule);
  EXPECT_EQ(from.generalizedRule->rhs.size(), 3u);

  const TacticExpr e = parse(from.grammar, "'a + b = b + a' from [ ADD_COMM ]");
  EXPECT_EQ(e.kind(), TacticExpr::Kind::Infix);
  EXPECT_EQ(e.op(), InfixOp::By);
  EXPECT_EQ(renderExpr(e).substr(0, 20), "` a + b = b + a ` by");
}

TEST(Def, GeneralizationSubstitution) {
  DefResult r = def(core(), "simplify with ADD_ASSOC", "fs [ADD_ASSOC]");
  DefResult l = def(r.grammar, "use [ LE_LT ] and finish", "fs [ LE_LT ] THEN NO_TAC");
  testgen::ExprGen gen(registry(), 3);
  for (int i = 0; i < 200; ++i) {
    const TacticExpr thm = gen.thm(2);
    EXPECT_EQ(parse(r.grammar, "simplify with " + renderExpr(thm)),
              TacticExpr::apply(TacticExpr::lookup("fs", types::THMLIST_TAC()), TacticExpr::thmList({thm})));
    const TacticExpr list = gen.thmList(2);
    EXPECT_EQ(parse(l.grammar, "use " + renderExpr(list) + " and finish"),
              TacticExpr::infix(InfixOp::Then,
                                TacticExpr::apply(TacticExpr::lookup("fs", types::THMLIST_TAC()), list),
                                TacticExpr::lookup("NO_TAC", types::TAC())));
  }
}

TEST(Def, TacticArguments) {
  DefResult r = def(core(), "try gen_tac", "TRY gen_tac");
  ASSERT_TRUE(r.generalizedRule);
  EXPECT_EQ(parse(r.grammar, "try fs [ ADD_COMM ]"), parse(core(), "TRY ( fs [ ADD_COMM ] )"));
  EXPECT_EQ(parse(r.grammar, "try gen_tac THEN strip_tac"), parse(core(), "TRY gen_tac THEN strip_tac"));

  DefResult t = def(r.grammar, "strip_tac twice", "strip_tac THEN strip_tac");
  ASSERT_TRUE(t.generalizedRule);
  EXPECT_EQ(parse(t.grammar, "rpt gen_tac twice"), parse(core(), "rpt gen_tac THEN rpt gen_tac"));
  EXPECT_EQ(parseAll(t.grammar, tokenize("try gen_tac twice")).size(), 1u);
}

TEST(Custom, TerminalsAndOpaque) {
  CustomResult c = addCustom(core(), registry(), "REAL_ASM_ARITH_TAC", CustomKind::Tactic,
                             knownCustom("NAT_ASM_ARITH_TAC", types::TAC(), store()));
  EXPECT_EQ(parse(c.grammar, "REAL_ASM_ARITH_TAC"), TacticExpr::lookup("REAL_ASM_ARITH_TAC", types::TAC()));
  EXPECT_EQ(errorOf([&] { addCustom(c.grammar, c.registry, "REAL_ASM_ARITH_TAC", CustomKind::Tactic, std::nullopt); }),
            Errc::DuplicateCustom);
  EXPECT_EQ(errorOf([&] { addCustom(core(), registry(), "fs", CustomKind::ThmListTactic, std::nullopt); }),
            Errc::DuplicateCustom);

  CustomResult o = addCustom(core(), registry(), "MY_SOLVER", CustomKind::Tactic, std::nullopt);
  const TacticExpr e = parse(o.grammar, "MY_SOLVER");
  EXPECT_EQ(errorOf([&] { evalTacticExpr(e, o.registry, store()); }), Errc::OpaqueTactic);

  CustomResult t = addCustom(core(), registry(), "MY_RULE", CustomKind::ThmTactic, std::nullopt);
  EXPECT_EQ(parse(t.grammar, "MY_RULE ADD_COMM").kind(), TacticExpr::Kind::Apply);
  DefResult d = def(t.grammar, "apply MY_RULE to ADD_COMM", "MY_RULE ADD_COMM");
  EXPECT_EQ(parse(d.grammar, "apply MY_RULE to LE_LT"), parse(t.grammar, "MY_RULE LE_LT"));
}
