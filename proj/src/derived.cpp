#include "exemplar/derived.hpp"

#include <algorithm>

#include "exemplar/arith.hpp"
#include "exemplar/error.hpp"

namespace exemplar::derived {

namespace {

Thm rule(Rule r, std::initializer_list<Thm> premises, std::initializer_list<Term> args = {}) {
  const std::vector<Thm> p(premises);
  const std::vector<Term> a(args);
  return infer(r, p, a);
}

Thm axiomRule(Rule r, std::initializer_list<Term> args) {
  const std::vector<Term> a(args);
  return infer(r, {}, a);
}

void collectNames(const Term& t, std::vector<std::string>& out) {
  for (const Term& v : freeVars(t))
    if (std::find(out.begin(), out.end(), v.name()) == out.end()) out.push_back(v.name());
}

}  // namespace

Thm assume(const Term& t) { return axiomRule(Rule::Assume, {t}); }
Thm refl(const Term& t) { return axiomRule(Rule::Refl, {t}); }
Thm sym(const Thm& th) { return rule(Rule::Symm, {th}); }
Thm trans(const Thm& a, const Thm& b) { return rule(Rule::Trans, {a, b}); }
Thm mp(const Thm& imp, const Thm& ante) { return rule(Rule::ImpElim, {imp, ante}); }
Thm disch(const Term& h, const Thm& th) { return rule(Rule::ImpIntro, {th}, {h}); }
Thm truth() { return infer(Rule::Truth); }

Thm eqMp(const Thm& eq, const Thm& th) { return mp(rule(Rule::IffElimL, {eq}), th); }

Thm proveHyp(const Thm& th, const Term& h, const Thm& hThm) {
  if (!hypsContain(th.hyps(), h)) return th;
  return mp(disch(h, th), hThm);
}

Thm eqtIntro(const Thm& th) {
  const Term& p = th.concl();
  const Thm toT = disch(p, truth());
  const Thm fromT = disch(Term::truth(), th);
  return rule(Rule::IffIntro, {toT, fromT});
}

Thm eqtElim(const Thm& th) { return mp(rule(Rule::IffElimR, {th}), truth()); }

Thm contr(const Term& t, const Thm& falseThm) { return rule(Rule::Contradiction, {falseThm}, {t}); }

Thm eqfIntro(const Thm& th) {
  if (!th.concl().is(Sym::Not)) fail(Errc::RuleMismatch, "eqfIntro: not a negation");
  const Term& p = th.concl().arg(0);
  const Thm toF = rule(Rule::NotElim, {th});
  const Thm fromF = disch(Term::falsity(), contr(p, assume(Term::falsity())));
  return rule(Rule::IffIntro, {toF, fromF});
}

Thm eqfElim(const Thm& th) { return rule(Rule::NotIntro, {rule(Rule::IffElimL, {th})}); }

Thm spec(const Term& t, const Thm& th) { return rule(Rule::ForallElim, {th}, {t}); }

Thm specl(const std::vector<Term>& ts, const Thm& th) {
  Thm out = th;
  for (const Term& t : ts) out = spec(t, out);
  return out;
}

Thm specAll(const Thm& th, const std::vector<std::string>& avoid) {
  std::vector<std::string> names = avoid;
  for (const std::string& n : thmVarNames(th)) names.push_back(n);
  Thm out = th;
  while (out.concl().is(Sym::Forall)) {
    const std::string v = freshName(out.concl().name(), names);
    names.push_back(v);
    out = spec(Term::var(v, Sort::Nat), out);
  }
  return out;
}

Thm gen(const Term& var, const Thm& th) { return rule(Rule::ForallIntro, {th}, {var}); }

Thm genAll(const Thm& th) {
  std::vector<Term> vars;
  for (const Term& v : freeVars(th.concl()))
    if (v.sort() == Sort::Nat &&
        std::none_of(th.hyps().begin(), th.hyps().end(), [&](const Term& h) { return occursFree(v, h); }))
      vars.push_back(v);
  Thm out = th;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = gen(*it, out);
  return out;
}

std::vector<Thm> conjuncts(const Thm& th) {
  if (!th.concl().is(Sym::And)) return {th};
  std::vector<Thm> out = conjuncts(rule(Rule::ConjElimL, {th}));
  for (const Thm& r : conjuncts(rule(Rule::ConjElimR, {th}))) out.push_back(r);
  return out;
}

Thm conj(const Thm& a, const Thm& b) { return rule(Rule::ConjIntro, {a, b}); }

Thm inst(const Substitution& sigma, const Thm& th) {
  if (sigma.empty()) return th;
  std::vector<Term> args;
  for (const auto& [v, t] : sigma) {
    args.push_back(v);
    args.push_back(t);
  }
  return infer(Rule::Inst, std::vector<Thm>{th}, args);
}

Thm taut(const Term& t) { return axiomRule(Rule::Taut, {t}); }
Thm ring(const Term& lhs, const Term& rhs) { return axiomRule(Rule::NatRing, {lhs, rhs}); }

std::optional<Thm> proveLe(const Term& lhs, const Term& rhs) {
  std::optional<arith::Polynomial> diff;
  try {
    diff = arith::normalize(lhs).subtractFrom(arith::normalize(rhs));
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!diff) return std::nullopt;
  const Term witness = diff->toTerm();
  std::vector<std::string> avoid;
  collectNames(lhs, avoid);
  collectNames(rhs, avoid);
  const std::string k = freshName("k", avoid);
  const Term body = Term::eq(Term::add(lhs, Term::var(k, Sort::Nat)), rhs);
  const Term ex = Term::exists(k, body);
  const Thm eq = ring(Term::add(lhs, witness), rhs);
  const Thm exThm = rule(Rule::ExistsIntro, {eq}, {ex, witness});
  const Thm def = specl({lhs, rhs}, infer(Rule::LeDef));
  return mp(rule(Rule::IffElimR, {def}), exThm);
}

std::optional<Thm> proveLt(const Term& lhs, const Term& rhs) {
  auto le = proveLe(Term::suc(lhs), rhs);
  if (!le) return std::nullopt;
  const Thm def = specl({lhs, rhs}, infer(Rule::LtDef));
  return mp(rule(Rule::IffElimR, {def}), *le);
}

std::vector<std::string> thmVarNames(const Thm& th) {
  std::vector<std::string> out;
  for (const Term& h : th.hyps()) collectNames(h, out);
  collectNames(th.concl(), out);
  return out;
}

}  // namespace exemplar::derived
