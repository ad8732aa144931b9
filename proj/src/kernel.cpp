#include "exemplar/kernel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "exemplar/arith.hpp"
#include "exemplar/error.hpp"

namespace exemplar {

std::string_view ruleName(Rule rule) {
  switch (rule) {
    case Rule::Assume: return "ASSUME";
    case Rule::ImpIntro: return "IMP_INTRO";
    case Rule::ImpElim: return "IMP_ELIM";
    case Rule::ConjIntro: return "CONJ_INTRO";
    case Rule::ConjElimL: return "CONJ_ELIM_L";
    case Rule::ConjElimR: return "CONJ_ELIM_R";
    case Rule::DisjIntroL: return "DISJ_INTRO_L";
    case Rule::DisjIntroR: return "DISJ_INTRO_R";
    case Rule::DisjCases: return "DISJ_CASES";
    case Rule::NotIntro: return "NOT_INTRO";
    case Rule::NotElim: return "NOT_ELIM";
    case Rule::Contradiction: return "CONTRADICTION";
    case Rule::CaseBool: return "CASE_BOOL";
    case Rule::Truth: return "TRUTH";
    case Rule::IffIntro: return "IFF_INTRO";
    case Rule::IffElimL: return "IFF_ELIM_L";
    case Rule::IffElimR: return "IFF_ELIM_R";
    case Rule::Refl: return "REFL";
    case Rule::Symm: return "SYM";
    case Rule::Trans: return "TRANS";
    case Rule::Congruence: return "CONGRUENCE";
    case Rule::Subst: return "SUBST";
    case Rule::ForallIntro: return "FORALL_INTRO";
    case Rule::ForallElim: return "FORALL_ELIM";
    case Rule::ExistsIntro: return "EXISTS_INTRO";
    case Rule::ExistsElim: return "EXISTS_ELIM";
    case Rule::NatInduction: return "NAT_INDUCTION";
    case Rule::Inst: return "INST";
    case Rule::SucInj: return "SUC_INJ";
    case Rule::SucNonzero: return "SUC_NONZERO";
    case Rule::AddZero: return "ADD_ZERO";
    case Rule::AddSuc: return "ADD_SUC";
    case Rule::MulZero: return "MUL_ZERO";
    case Rule::MulSuc: return "MUL_SUC";
    case Rule::SumZero: return "SUM_ZERO";
    case Rule::SumSuc: return "SUM_SUC";
    case Rule::LeDef: return "LE_DEF";
    case Rule::LtDef: return "LT_DEF";
    case Rule::Taut: return "TAUT";
    case Rule::NatRing: return "NAT_RING";
    case Rule::NatEval: return "NAT_EVAL";
    case Rule::StoreAxiom: return "STORE_AXIOM";
  }
  return "?";
}

namespace {

using Hyps = std::vector<Term>;

Hyps normalizeHyps(Hyps hyps) {
  std::sort(hyps.begin(), hyps.end(), TermLess{});
  hyps.erase(std::unique(hyps.begin(), hyps.end(),
                         [](const Term& a, const Term& b) { return alphaEqual(a, b); }),
             hyps.end());
  return hyps;
}

Hyps unite(const Hyps& a, const Hyps& b) {
  Hyps out = a;
  out.insert(out.end(), b.begin(), b.end());
  return normalizeHyps(std::move(out));
}

Hyps removeHyp(const Hyps& hyps, const Term& t) {
  Hyps out;
  for (const Term& h : hyps)
    if (!alphaEqual(h, t)) out.push_back(h);
  return out;
}

[[noreturn]] void mismatch(Rule rule, const std::string& why) {
  fail(Errc::RuleMismatch, std::string(ruleName(rule)) + ": " + why);
}

void requireCounts(Rule rule, std::span<const Thm> premises, std::size_t nPremises,
                   std::span<const Term> args, std::size_t nArgs) {
  if (premises.size() != nPremises)
    mismatch(rule, "expects " + std::to_string(nPremises) + " premises");
  if (args.size() != nArgs) mismatch(rule, "expects " + std::to_string(nArgs) + " arguments");
  for (const Term& a : args)
    if (!a) mismatch(rule, "null argument");
}

void requireBool(Rule rule, const Term& t) {
  if (t.sort() != Sort::Bool) mismatch(rule, "expected a proposition: " + render(t));
}

// Splits an equation-like conclusion into its sides.
std::pair<Term, Term> sides(Rule rule, const Term& t) {
  if (!t.isEquation()) mismatch(rule, "not an equation: " + render(t));
  return {t.arg(0), t.arg(1)};
}

bool varFreeInHyps(const Term& var, const Hyps& hyps) {
  for (const Term& h : hyps)
    if (occursFree(var, h)) return true;
  return false;
}

// --- propositional tautology check -----------------------------------------

bool isConnective(const Term& t) {
  switch (t.sym()) {
    case Sym::Not:
    case Sym::And:
    case Sym::Or:
    case Sym::Imp:
    case Sym::Iff:
    case Sym::True:
    case Sym::False: return true;
    default: return false;
  }
}

void collectAtoms(const Term& t, std::vector<Term>& atoms) {
  if (isConnective(t)) {
    for (const Term& c : t.args()) collectAtoms(c, atoms);
    return;
  }
  for (const Term& a : atoms)
    if (alphaEqual(a, t)) return;
  atoms.push_back(t);
}

bool evalProp(const Term& t, const std::vector<Term>& atoms, std::uint32_t valuation) {
  switch (t.sym()) {
    case Sym::True: return true;
    case Sym::False: return false;
    case Sym::Not: return !evalProp(t.arg(0), atoms, valuation);
    case Sym::And: return evalProp(t.arg(0), atoms, valuation) && evalProp(t.arg(1), atoms, valuation);
    case Sym::Or: return evalProp(t.arg(0), atoms, valuation) || evalProp(t.arg(1), atoms, valuation);
    case Sym::Imp: return !evalProp(t.arg(0), atoms, valuation) || evalProp(t.arg(1), atoms, valuation);
    case Sym::Iff: return evalProp(t.arg(0), atoms, valuation) == evalProp(t.arg(1), atoms, valuation);
    default: break;
  }
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (alphaEqual(atoms[i], t)) return (valuation >> i) & 1U;
  return false;
}

constexpr std::size_t kMaxTautAtoms = 16;

bool isTautology(const Term& t) {
  std::vector<Term> atoms;
  collectAtoms(t, atoms);
  if (atoms.size() > kMaxTautAtoms) return false;
  const std::uint32_t limit = 1U << atoms.size();
  for (std::uint32_t v = 0; v < limit; ++v)
    if (!evalProp(t, atoms, v)) return false;
  return true;
}

Term natVar(const char* name) { return Term::var(name, Sort::Nat); }

Term peanoAxiom(Rule rule) {
  const Term m = natVar("m"), n = natVar("n"), k = natVar("k");
  switch (rule) {
    case Rule::SucInj:
      return Term::forall("m", Term::forall("n", Term::imp(Term::eq(Term::suc(m), Term::suc(n)),
                                                           Term::eq(m, n))));
    case Rule::SucNonzero: return Term::forall("n", Term::neg(Term::eq(Term::suc(n), Term::zero())));
    case Rule::AddZero: return Term::forall("n", Term::eq(Term::add(Term::zero(), n), n));
    case Rule::AddSuc:
      return Term::forall("m", Term::forall("n", Term::eq(Term::add(Term::suc(m), n),
                                                          Term::suc(Term::add(m, n)))));
    case Rule::MulZero: return Term::forall("n", Term::eq(Term::mul(Term::zero(), n), Term::zero()));
    case Rule::MulSuc:
      return Term::forall("m", Term::forall("n", Term::eq(Term::mul(Term::suc(m), n),
                                                          Term::add(Term::mul(m, n), n))));
    case Rule::SumZero: return Term::eq(Term::sum(Term::zero()), Term::zero());
    case Rule::SumSuc:
      return Term::forall("n", Term::eq(Term::sum(Term::suc(n)), Term::add(Term::sum(n), Term::suc(n))));
    case Rule::LeDef:
      return Term::forall(
          "m", Term::forall("n", Term::iff(Term::le(m, n), Term::exists("k", Term::eq(Term::add(m, k), n)))));
    case Rule::LtDef:
      return Term::forall("m", Term::forall("n", Term::iff(Term::lt(m, n), Term::le(Term::suc(m), n))));
    default: break;
  }
  mismatch(rule, "not an axiom");
}

}  // namespace

Thm::Thm(std::vector<Term> hyps, Term concl, std::shared_ptr<const Certificate> derivation)
    : hyps_(normalizeHyps(std::move(hyps))), concl_(std::move(concl)), certificate_(std::move(derivation)) {}

Thm Kernel::admit(const std::string& name, const Term& formula) {
  if (!formula || formula.sort() != Sort::Bool) fail(Errc::RuleMismatch, "axiom " + name + " is not a proposition");
  return Thm({}, formula,
             std::make_shared<const Certificate>(Certificate{Rule::StoreAxiom, {}, {formula}, name}));
}

Thm Kernel::infer(Rule rule, std::span<const Thm> premises, std::span<const Term> args) {
  Hyps hyps;
  Term concl;
  const auto prem = [&](std::size_t i) -> const Thm& { return premises[i]; };

  switch (rule) {
    case Rule::Assume: {
      requireCounts(rule, premises, 0, args, 1);
      requireBool(rule, args[0]);
      hyps = {args[0]};
      concl = args[0];
      break;
    }
    case Rule::ImpIntro: {
      requireCounts(rule, premises, 1, args, 1);
      requireBool(rule, args[0]);
      hyps = removeHyp(prem(0).hyps(), args[0]);
      concl = Term::imp(args[0], prem(0).concl());
      break;
    }
    case Rule::ImpElim: {
      requireCounts(rule, premises, 2, args, 0);
      const Term& imp = prem(0).concl();
      if (!imp.is(Sym::Imp)) mismatch(rule, "first premise is not an implication");
      if (!alphaEqual(imp.arg(0), prem(1).concl())) mismatch(rule, "antecedent does not match");
      hyps = unite(prem(0).hyps(), prem(1).hyps());
      concl = imp.arg(1);
      break;
    }
    case Rule::ConjIntro: {
      requireCounts(rule, premises, 2, args, 0);
      hyps = unite(prem(0).hyps(), prem(1).hyps());
      concl = Term::conj(prem(0).concl(), prem(1).concl());
      break;
    }
    case Rule::ConjElimL:
    case Rule::ConjElimR: {
      requireCounts(rule, premises, 1, args, 0);
      if (!prem(0).concl().is(Sym::And)) mismatch(rule, "premise is not a conjunction");
      hyps = prem(0).hyps();
      concl = prem(0).concl().arg(rule == Rule::ConjElimL ? 0 : 1);
      break;
    }
    case Rule::DisjIntroL:
    case Rule::DisjIntroR: {
      requireCounts(rule, premises, 1, args, 1);
      requireBool(rule, args[0]);
      hyps = prem(0).hyps();
      concl = rule == Rule::DisjIntroL ? Term::disj(prem(0).concl(), args[0])
                                       : Term::disj(args[0], prem(0).concl());
      break;
    }
    case Rule::DisjCases: {
      requireCounts(rule, premises, 3, args, 0);
      const Term& d = prem(0).concl();
      if (!d.is(Sym::Or)) mismatch(rule, "first premise is not a disjunction");
      if (!alphaEqual(prem(1).concl(), prem(2).concl())) mismatch(rule, "case conclusions differ");
      hyps = unite(prem(0).hyps(), unite(removeHyp(prem(1).hyps(), d.arg(0)),
                                         removeHyp(prem(2).hyps(), d.arg(1))));
      concl = prem(1).concl();
      break;
    }
    case Rule::NotIntro: {
      requireCounts(rule, premises, 1, args, 0);
      const Term& c = prem(0).concl();
      if (!c.is(Sym::Imp) || !c.arg(1).is(Sym::False)) mismatch(rule, "premise is not p ==> F");
      hyps = prem(0).hyps();
      concl = Term::neg(c.arg(0));
      break;
    }
    case Rule::NotElim: {
      requireCounts(rule, premises, 1, args, 0);
      if (!prem(0).concl().is(Sym::Not)) mismatch(rule, "premise is not a negation");
      hyps = prem(0).hyps();
      concl = Term::imp(prem(0).concl().arg(0), Term::falsity());
      break;
    }
    case Rule::Contradiction: {
      requireCounts(rule, premises, 1, args, 1);
      requireBool(rule, args[0]);
      if (!prem(0).concl().is(Sym::False)) mismatch(rule, "premise is not F");
      hyps = prem(0).hyps();
      concl = args[0];
      break;
    }
    case Rule::CaseBool: {
      requireCounts(rule, premises, 0, args, 1);
      requireBool(rule, args[0]);
      concl = Term::disj(args[0], Term::neg(args[0]));
      break;
    }
    case Rule::Truth: {
      requireCounts(rule, premises, 0, args, 0);
      concl = Term::truth();
      break;
    }
    case Rule::IffIntro: {
      requireCounts(rule, premises, 2, args, 0);
      const Term& a = prem(0).concl();
      const Term& b = prem(1).concl();
      if (!a.is(Sym::Imp) || !b.is(Sym::Imp) || !alphaEqual(a.arg(0), b.arg(1)) ||
          !alphaEqual(a.arg(1), b.arg(0)))
        mismatch(rule, "premises are not p ==> q and q ==> p");
      hyps = unite(prem(0).hyps(), prem(1).hyps());
      concl = Term::iff(a.arg(0), a.arg(1));
      break;
    }
    case Rule::IffElimL:
    case Rule::IffElimR: {
      requireCounts(rule, premises, 1, args, 0);
      const Term& c = prem(0).concl();
      if (!c.is(Sym::Iff)) mismatch(rule, "premise is not an equivalence");
      hyps = prem(0).hyps();
      concl = rule == Rule::IffElimL ? Term::imp(c.arg(0), c.arg(1)) : Term::imp(c.arg(1), c.arg(0));
      break;
    }
    case Rule::Refl: {
      requireCounts(rule, premises, 0, args, 1);
      concl = mkEquation(args[0], args[0]);
      break;
    }
    case Rule::Symm: {
      requireCounts(rule, premises, 1, args, 0);
      auto [l, r] = sides(rule, prem(0).concl());
      hyps = prem(0).hyps();
      concl = mkEquation(r, l);
      break;
    }
    case Rule::Trans: {
      requireCounts(rule, premises, 2, args, 0);
      auto [a, b] = sides(rule, prem(0).concl());
      auto [b2, c] = sides(rule, prem(1).concl());
      if (!alphaEqual(b, b2)) mismatch(rule, "middle terms differ");
      hyps = unite(prem(0).hyps(), prem(1).hyps());
      concl = mkEquation(a, c);
      break;
    }
    case Rule::Congruence: {
      if (args.size() != 1 || !args[0]) mismatch(rule, "expects the term as argument");
      const Term& t = args[0];
      if (t.isVar() || t.args().empty()) mismatch(rule, "term has no children");
      if (premises.size() != t.args().size()) mismatch(rule, "one premise per child expected");
      std::vector<Term> newArgs;
      for (std::size_t i = 0; i < premises.size(); ++i) {
        auto [l, r] = sides(rule, prem(i).concl());
        if (!alphaEqual(l, t.arg(i))) mismatch(rule, "premise " + std::to_string(i + 1) + " does not rewrite the child");
        if (l.sort() != r.sort()) mismatch(rule, "sort mismatch");
        if (t.isQuantifier() && varFreeInHyps(Term::var(t.name(), Sort::Nat), prem(i).hyps()))
          mismatch(rule, "bound variable free in hypotheses");
        hyps = unite(hyps, prem(i).hyps());
        newArgs.push_back(r);
      }
      concl = mkEquation(t, Term::make(t.sym(), std::move(newArgs), t.name()));
      break;
    }
    case Rule::Subst: {
      requireCounts(rule, premises, 2, args, 2);
      const Term& tmpl = args[0];
      const Term& x = args[1];
      if (!x.isVar()) mismatch(rule, "second argument is not a variable");
      auto [l, r] = sides(rule, prem(0).concl());
      if (l.sort() != x.sort()) mismatch(rule, "variable sort differs from equation sort");
      if (!alphaEqual(substitute(tmpl, x, l), prem(1).concl())) mismatch(rule, "template does not match");
      hyps = unite(prem(0).hyps(), prem(1).hyps());
      concl = substitute(tmpl, x, r);
      break;
    }
    case Rule::ForallIntro: {
      requireCounts(rule, premises, 1, args, 1);
      const Term& x = args[0];
      if (!x.isVar() || x.sort() != Sort::Nat) mismatch(rule, "argument is not a nat variable");
      if (varFreeInHyps(x, prem(0).hyps())) mismatch(rule, x.name() + " is free in the hypotheses");
      hyps = prem(0).hyps();
      concl = Term::forall(x.name(), prem(0).concl());
      break;
    }
    case Rule::ForallElim: {
      requireCounts(rule, premises, 1, args, 1);
      const Term& q = prem(0).concl();
      if (!q.is(Sym::Forall)) mismatch(rule, "premise is not universally quantified");
      if (args[0].sort() != Sort::Nat) mismatch(rule, "instance is not a number");
      hyps = prem(0).hyps();
      concl = substitute(q.arg(0), Term::var(q.name(), Sort::Nat), args[0]);
      break;
    }
    case Rule::ExistsIntro: {
      requireCounts(rule, premises, 1, args, 2);
      const Term& ex = args[0];
      if (!ex.is(Sym::Exists)) mismatch(rule, "first argument is not existential");
      if (args[1].sort() != Sort::Nat) mismatch(rule, "witness is not a number");
      if (!alphaEqual(substitute(ex.arg(0), Term::var(ex.name(), Sort::Nat), args[1]), prem(0).concl()))
        mismatch(rule, "premise is not an instance of the body");
      hyps = prem(0).hyps();
      concl = ex;
      break;
    }
    case Rule::ExistsElim: {
      requireCounts(rule, premises, 2, args, 1);
      const Term& v = args[0];
      const Term& ex = prem(0).concl();
      if (!v.isVar() || v.sort() != Sort::Nat) mismatch(rule, "argument is not a nat variable");
      if (!ex.is(Sym::Exists)) mismatch(rule, "first premise is not existential");
      const Term instance = substitute(ex.arg(0), Term::var(ex.name(), Sort::Nat), v);
      const Hyps rest = removeHyp(prem(1).hyps(), instance);
      if (occursFree(v, ex) || occursFree(v, prem(1).concl()) || varFreeInHyps(v, rest))
        mismatch(rule, "witness variable " + v.name() + " is not fresh");
      hyps = unite(prem(0).hyps(), rest);
      concl = prem(1).concl();
      break;
    }
    case Rule::NatInduction: {
      requireCounts(rule, premises, 2, args, 0);
      const Term& step = prem(1).concl();
      if (!step.is(Sym::Forall) || !step.arg(0).is(Sym::Imp))
        mismatch(rule, "step is not !x. P ==> P[SUC x]");
      const Term x = Term::var(step.name(), Sort::Nat);
      const Term& p = step.arg(0).arg(0);
      if (!alphaEqual(step.arg(0).arg(1), substitute(p, x, Term::suc(x))))
        mismatch(rule, "step conclusion is not P[SUC x]");
      if (!alphaEqual(prem(0).concl(), substitute(p, x, Term::zero())))
        mismatch(rule, "base is not P[0]");
      hyps = unite(prem(0).hyps(), prem(1).hyps());
      concl = Term::forall(step.name(), p);
      break;
    }
    case Rule::Inst: {
      if (premises.size() != 1 || args.size() % 2 != 0) mismatch(rule, "expects one premise and variable/term pairs");
      Substitution sigma;
      for (std::size_t i = 0; i < args.size(); i += 2) {
        if (!args[i] || !args[i].isVar()) mismatch(rule, "not a variable");
        if (!args[i + 1] || args[i + 1].sort() != args[i].sort()) mismatch(rule, "sort mismatch");
        sigma.emplace_back(args[i], args[i + 1]);
      }
      for (const Term& h : prem(0).hyps()) hyps.push_back(substitute(h, sigma));
      concl = substitute(prem(0).concl(), sigma);
      break;
    }
    case Rule::SucInj:
    case Rule::SucNonzero:
    case Rule::AddZero:
    case Rule::AddSuc:
    case Rule::MulZero:
    case Rule::MulSuc:
    case Rule::SumZero:
    case Rule::SumSuc:
    case Rule::LeDef:
    case Rule::LtDef: {
      requireCounts(rule, premises, 0, args, 0);
      concl = peanoAxiom(rule);
      break;
    }
    case Rule::Taut: {
      requireCounts(rule, premises, 0, args, 1);
      requireBool(rule, args[0]);
      if (!isTautology(args[0])) mismatch(rule, "not a tautology: " + render(args[0]));
      concl = args[0];
      break;
    }
    case Rule::NatRing: {
      requireCounts(rule, premises, 0, args, 2);
      if (args[0].sort() != Sort::Nat || args[1].sort() != Sort::Nat) mismatch(rule, "operands are not numbers");
      if (!(arith::normalize(args[0]) == arith::normalize(args[1])))
        mismatch(rule, render(args[0]) + " and " + render(args[1]) + " differ");
      concl = Term::eq(args[0], args[1]);
      break;
    }
    case Rule::NatEval: {
      requireCounts(rule, premises, 0, args, 1);
      const auto value = arith::decideGround(args[0]);
      if (!value) mismatch(rule, "not a ground comparison: " + render(args[0]));
      concl = Term::iff(args[0], *value ? Term::truth() : Term::falsity());
      break;
    }
    case Rule::StoreAxiom: mismatch(rule, "only the theorem store admits axioms");
  }

  auto derivation = std::make_shared<const Certificate>(
      Certificate{rule, std::vector<Thm>(premises.begin(), premises.end()),
                 std::vector<Term>(args.begin(), args.end()), {}});
  return Thm(std::move(hyps), std::move(concl), std::move(derivation));
}

bool hypsContain(const std::vector<Term>& hyps, const Term& t) {
  return std::any_of(hyps.begin(), hyps.end(), [&](const Term& h) { return alphaEqual(h, t); });
}

bool sameSequent(const Thm& a, const Thm& b) {
  if (!alphaEqual(a.concl(), b.concl()) || a.hyps().size() != b.hyps().size()) return false;
  for (std::size_t i = 0; i < a.hyps().size(); ++i)
    if (!alphaEqual(a.hyps()[i], b.hyps()[i])) return false;
  return true;
}

Thm replay(const Thm& thm) {
  std::unordered_map<const void*, Thm> memo;
  std::function<Thm(const Thm&)> rec = [&](const Thm& t) -> Thm {
    if (auto it = memo.find(t.identity()); it != memo.end()) return it->second;
    const Certificate& d = t.certificate();
    Thm rebuilt = [&] {
      if (d.rule == Rule::StoreAxiom) return Kernel::admit(d.label, d.args.at(0));
      std::vector<Thm> premises;
      premises.reserve(d.premises.size());
      for (const Thm& p : d.premises) premises.push_back(rec(p));
      return Kernel::infer(d.rule, premises, d.args);
    }();
    if (!sameSequent(rebuilt, t))
      fail(Errc::JustificationInvalid,
           "replay of " + std::string(ruleName(d.rule)) + " produced " + render(rebuilt));
    memo.emplace(t.identity(), rebuilt);
    return rebuilt;
  };
  return rec(thm);
}

bool replayMatches(const Thm& thm) {
  try {
    return sameSequent(replay(thm), thm);
  } catch (const Error&) {
    return false;
  }
}

std::string render(const Thm& thm) {
  std::string out;
  for (std::size_t i = 0; i < thm.hyps().size(); ++i) {
    if (i) out += ", ";
    out += render(thm.hyps()[i]);
  }
  if (!out.empty()) out += ' ';
  return out + "|- " + render(thm.concl());
}

}  // namespace exemplar
