#include "exemplar/simp.hpp"

#include <algorithm>

#include "exemplar/arith.hpp"
#include "exemplar/derived.hpp"
#include "exemplar/error.hpp"
#include "exemplar/tactic.hpp"
#include "exemplar/theorem_store.hpp"

namespace exemplar {

namespace d = derived;

namespace {

constexpr int kMaxCondDepth = 3;
constexpr std::size_t kTautAtoms = 10;

std::pair<Term, Term> sidesOf(const Thm& th) { return {th.concl().arg(0), th.concl().arg(1)}; }

std::vector<Term> hypVars(const Thm& th) {
  std::vector<Term> out;
  for (const Term& h : th.hyps())
    for (const Term& v : freeVars(h))
      if (std::none_of(out.begin(), out.end(), [&](const Term& o) { return alphaEqual(o, v); })) out.push_back(v);
  return out;
}

bool isFixed(const Term& v, const std::vector<Term>& fixed) {
  return std::any_of(fixed.begin(), fixed.end(), [&](const Term& f) { return alphaEqual(f, v); });
}

// Every free variable of `t` is either fixed or occurs in `lhs`.
bool covered(const Term& t, const Term& lhs, const std::vector<Term>& fixed) {
  for (const Term& v : freeVars(t))
    if (!isFixed(v, fixed) && !occursFree(v, lhs)) return false;
  return true;
}

bool isMatchVar(const Term& t, const std::vector<Term>& fixed) { return t.isVar() && !isFixed(t, fixed); }

bool isPermutative(const Term& l, const Term& r) {
  return !alphaEqual(l, r) && matchTerm(l, r).has_value() && matchTerm(r, l).has_value();
}

void addBody(std::vector<RewriteRule>& out, const Thm& th, const Term& cond, const Term& body,
             const std::vector<Term>& fixed) {
  RewriteRule rule{th, cond, {}, {}, RewriteRule::Form::Equation, fixed, false};
  if (body.is(Sym::True)) return;
  if (body.isEquation() && !alphaEqual(body.arg(0), body.arg(1)) && !isMatchVar(body.arg(0), fixed) &&
      covered(body.arg(1), body.arg(0), fixed)) {
    rule.lhs = body.arg(0);
    rule.rhs = body.arg(1);
    // Assumptions `t = v` eliminate the variable v.
    const Term& l = body.arg(0);
    const Term& r = body.arg(1);
    if (!cond && !fixed.empty() && r.isVar() && !l.isVar() && !occursFree(r, l)) {
      rule.th = d::sym(th);
      std::swap(rule.lhs, rule.rhs);
    }
    rule.permutative = isPermutative(rule.lhs, rule.rhs);
  } else if (body.is(Sym::Not) && !body.arg(0).is(Sym::False)) {
    rule.lhs = body.arg(0);
    rule.rhs = Term::falsity();
    rule.form = RewriteRule::Form::ToFalse;
  } else if (!body.is(Sym::False)) {
    rule.lhs = body;
    rule.rhs = Term::truth();
    rule.form = RewriteRule::Form::ToTrue;
  } else {
    return;
  }
  if (isMatchVar(rule.lhs, fixed)) return;
  if (cond && !covered(cond, rule.lhs, fixed)) return;
  if (!cond && rule.form == RewriteRule::Form::ToTrue) rule.th = d::eqtIntro(th);
  if (!cond && rule.form == RewriteRule::Form::ToFalse) rule.th = d::eqfIntro(th);
  out.push_back(std::move(rule));
}

}  // namespace

std::vector<RewriteRule> rewriteRules(const Thm& input) {
  std::vector<RewriteRule> out;
  for (const Thm& part : d::conjuncts(d::specAll(input))) {
    if (part.concl().is(Sym::Forall) || part.concl().is(Sym::And)) {
      for (RewriteRule& r : rewriteRules(part)) out.push_back(std::move(r));
      continue;
    }
    const std::vector<Term> fixed = hypVars(part);
    const Term& c = part.concl();
    if (c.is(Sym::Imp) && !c.arg(1).is(Sym::False))
      addBody(out, part, c.arg(0), c.arg(1), fixed);
    else
      addBody(out, part, {}, c, fixed);
  }
  return out;
}

void SimpSet::add(const Thm& th) {
  for (RewriteRule& r : rewriteRules(th)) rules.push_back(std::move(r));
}

void SimpSet::add(const std::vector<Thm>& ths) {
  for (const Thm& th : ths) add(th);
}

SimpSet basicSimpSet(const TheoremStore& store) {
  SimpSet set;
  for (const char* name : {"INV_SUC_EQ", "SUC_NOT_ZERO", "LESS_REFL", "NOT_LESS", "NOT_LESS_EQUAL"}) {
    if (auto th = store.find(name)) set.add(*th);
  }
  set.lessRefl = store.find("LESS_REFL");
  set.notLess = store.find("NOT_LESS");
  set.notLessEqual = store.find("NOT_LESS_EQUAL");
  // Unit laws only: the SUC clauses would unfold every numeral.
  const Term n = Term::var("n", Sort::Nat);
  const Term zero = Term::zero(), one = Term::numeral(1);
  set.add(d::ring(Term::add(zero, n), n));
  set.add(d::ring(Term::add(n, zero), n));
  set.add(d::ring(Term::mul(zero, n), zero));
  set.add(d::ring(Term::mul(n, zero), zero));
  set.add(d::ring(Term::mul(one, n), n));
  set.add(d::ring(Term::mul(n, one), n));
  // 0 = SUC n <=> F, derived from SUC_NONZERO.
  const Term zeroEq = Term::eq(Term::zero(), Term::suc(n));
  const Thm sucNz = d::spec(n, infer(Rule::SucNonzero));
  const Thm f = d::mp(infer(Rule::NotElim, std::vector<Thm>{sucNz}), d::sym(d::assume(zeroEq)));
  set.add(infer(Rule::NotIntro, std::vector<Thm>{d::disch(zeroEq, f)}));
  return set;
}

SimpSet pureSimpSet() {
  SimpSet set;
  set.arithmetic = false;
  return set;
}

void Simplifier::spend() {
  if (--budget_ < 0) tacticFails("rewrite limit of " + std::to_string(kRewriteBudget) + " steps exceeded");
}

namespace {

std::optional<Thm> chain(const std::optional<Thm>& a, const std::optional<Thm>& b) {
  if (!a) return b;
  if (!b) return a;
  return d::trans(*a, *b);
}

}  // namespace

std::optional<Thm> Simplifier::run(const Term& t) {
  std::optional<Thm> acc = children(t);
  Term cur = acc ? sidesOf(*acc).second : t;
  std::optional<Thm> step = top(cur);
  if (!step) return acc;
  spend();
  acc = chain(acc, step);
  return chain(acc, run(sidesOf(*step).second));
}

std::optional<Thm> Simplifier::children(const Term& t) {
  if (t.isVar() || t.args().empty()) return std::nullopt;
  std::vector<Thm> eqs;
  bool changed = false;
  for (const Term& c : t.args()) {
    auto r = run(c);
    changed = changed || r.has_value();
    eqs.push_back(r ? *r : d::refl(c));
  }
  if (!changed) return std::nullopt;
  const Term args[] = {t};
  try {
    Thm th = infer(Rule::Congruence, eqs, args);
    if (alphaEqual(sidesOf(th).first, sidesOf(th).second)) return std::nullopt;
    return th;
  } catch (const Error& e) {
    if (e.code() != Errc::RuleMismatch) throw;
    return std::nullopt;  // a rewrite under this binder depends on the bound name
  }
}

std::optional<Thm> Simplifier::tryRule(const RewriteRule& rule, const Term& t) {
  if (rule.lhs.sym() != t.sym()) return std::nullopt;
  auto sigma = matchTerm(rule.lhs, t, rule.fixed);
  if (!sigma) return std::nullopt;
  if (rule.permutative && compareTerms(substitute(rule.rhs, *sigma), t) >= 0) return std::nullopt;
  Thm instance = d::inst(*sigma, rule.th);
  if (rule.cond) {
    if (condDepth_ >= kMaxCondDepth) return std::nullopt;
    const Term cond = instance.concl().arg(0);
    ++condDepth_;
    std::optional<Thm> c;
    try {
      c = run(cond);
    } catch (...) {
      --condDepth_;
      throw;
    }
    --condDepth_;
    Thm condThm = [&]() -> Thm {
      if (cond.is(Sym::True)) return d::truth();
      if (!c || !sidesOf(*c).second.is(Sym::True)) fail(Errc::RuleMismatch, "condition not discharged");
      return d::eqtElim(*c);
    }();
    Thm body = d::mp(instance, condThm);
    if (rule.form == RewriteRule::Form::ToTrue) body = d::eqtIntro(body);
    if (rule.form == RewriteRule::Form::ToFalse) body = d::eqfIntro(body);
    instance = body;
  }
  if (!alphaEqual(sidesOf(instance).first, t)) return std::nullopt;
  return instance;
}

std::optional<Thm> Simplifier::top(const Term& t) {
  for (const RewriteRule& rule : set_.rules) {
    try {
      if (auto th = tryRule(rule, t)) return th;
    } catch (const Error& e) {
      if (e.code() != Errc::RuleMismatch) throw;
    }
  }
  return builtin(t);
}

namespace {

bool ground(const Term& t) { return freeVars(t).empty() && !t.isQuantifier(); }

bool noBinders(const Term& t) {
  if (t.isQuantifier()) return false;
  return std::all_of(t.args().begin(), t.args().end(), noBinders);
}

std::size_t countAtoms(const Term& t, std::vector<Term>& atoms) {
  switch (t.sym()) {
    case Sym::Not:
    case Sym::And:
    case Sym::Or:
    case Sym::Imp:
    case Sym::Iff:
      for (const Term& c : t.args()) countAtoms(c, atoms);
      return atoms.size();
    case Sym::True:
    case Sym::False: return atoms.size();
    default: break;
  }
  if (std::none_of(atoms.begin(), atoms.end(), [&](const Term& a) { return alphaEqual(a, t); })) atoms.push_back(t);
  return atoms.size();
}

bool isConnective(const Term& t) {
  return t.is(Sym::Not) || t.is(Sym::And) || t.is(Sym::Or) || t.is(Sym::Imp) || t.is(Sym::Iff);
}

}  // namespace

std::optional<Thm> propositionalStep(const Term& t) {
  const Term T = Term::truth(), F = Term::falsity();
  auto isT = [](const Term& x) { return x.is(Sym::True); };
  auto isF = [](const Term& x) { return x.is(Sym::False); };
  Term out;
  switch (t.sym()) {
    case Sym::Not: {
      const Term& p = t.arg(0);
      if (isT(p)) out = F;
      else if (isF(p)) out = T;
      else if (p.is(Sym::Not)) out = p.arg(0);
      break;
    }
    case Sym::And: {
      const Term &p = t.arg(0), &q = t.arg(1);
      if (isT(p)) out = q;
      else if (isT(q)) out = p;
      else if (isF(p) || isF(q)) out = F;
      else if (alphaEqual(p, q)) out = p;
      break;
    }
    case Sym::Or: {
      const Term &p = t.arg(0), &q = t.arg(1);
      if (isT(p) || isT(q)) out = T;
      else if (isF(p)) out = q;
      else if (isF(q)) out = p;
      else if (alphaEqual(p, q)) out = p;
      break;
    }
    case Sym::Imp: {
      const Term &p = t.arg(0), &q = t.arg(1);
      if (isT(p)) out = q;
      else if (isF(p) || isT(q) || alphaEqual(p, q)) out = T;
      else if (isF(q)) out = Term::neg(p);
      break;
    }
    case Sym::Iff: {
      const Term &p = t.arg(0), &q = t.arg(1);
      if (isT(p)) out = q;
      else if (isT(q)) out = p;
      else if (isF(p)) out = Term::neg(q);
      else if (isF(q)) out = Term::neg(p);
      else if (alphaEqual(p, q)) out = T;
      break;
    }
    default: break;
  }
  if (!out) return std::nullopt;
  return d::taut(Term::iff(t, out));
}

// Instantiates the free variables of a store lemma in order of occurrence.
Thm Simplifier::instantiate(const Thm& th, const std::vector<Term>& values) const {
  const Thm body = d::specAll(th);
  const std::vector<Term> vars = freeVars(body.concl());
  Substitution sigma;
  for (std::size_t i = 0; i < vars.size() && i < values.size(); ++i) sigma.emplace_back(vars[i], values[i]);
  return d::inst(sigma, body);
}

// |- ~(l = r) when one side exceeds the other by a positive constant.
std::optional<Thm> Simplifier::refuteEq(const Term& l, const Term& r) const {
  if (!set_.lessRefl) return std::nullopt;
  for (int flip = 0; flip < 2; ++flip) {
    const Term& big = flip ? r : l;
    const Term& small = flip ? l : r;
    auto lt = d::proveLt(small, big);
    if (!lt) continue;
    const Term eq = Term::eq(l, r);
    // From l = r rewrite small < big into small < small, contradicting LESS_REFL.
    Thm bigIsSmall = d::assume(eq);
    if (flip) bigIsSmall = d::sym(bigIsSmall);
    std::vector<std::string> avoid;
    for (const Term& v : freeVars(eq)) avoid.push_back(v.name());
    const Term x = Term::var(freshName("x", avoid), Sort::Nat);
    const Thm refl = infer(Rule::Subst, std::vector<Thm>{bigIsSmall, *lt},
                           std::vector<Term>{Term::lt(small, x), x});
    const Thm notRefl = instantiate(*set_.lessRefl, {small});
    const Thm f = d::mp(infer(Rule::NotElim, std::vector<Thm>{notRefl}), refl);
    return infer(Rule::NotIntro, std::vector<Thm>{d::disch(eq, f)});
  }
  return std::nullopt;
}

std::optional<Thm> Simplifier::builtin(const Term& t) {
  if (set_.propositional) {
    if (auto th = propositionalStep(t)) return th;
    if (isConnective(t)) {
      std::vector<Term> atoms;
      if (countAtoms(t, atoms) <= kTautAtoms) {
        try {
          return d::eqtIntro(d::taut(t));
        } catch (const Error&) {
        }
      }
    }
    if (t.isQuantifier() && !freeIn(t.name(), t.arg(0))) {
      // !x. P <=> P when x does not occur in P.
      const Term& p = t.arg(0);
      const Term x = Term::var(t.name(), Sort::Nat);
      if (t.is(Sym::Forall)) {
        const Thm there = d::disch(t, d::spec(x, d::assume(t)));
        const Thm back = d::disch(p, d::gen(x, d::assume(p)));
        return infer(Rule::IffIntro, std::vector<Thm>{there, back});
      }
      const Thm ex = infer(Rule::ExistsIntro, std::vector<Thm>{d::assume(p)}, std::vector<Term>{t, Term::zero()});
      const Thm there = d::disch(t, infer(Rule::ExistsElim, std::vector<Thm>{d::assume(t), d::assume(p)},
                                          std::vector<Term>{x}));
      return infer(Rule::IffIntro, std::vector<Thm>{there, d::disch(p, ex)});
    }
  }
  if (t.isEquation() && alphaEqual(t.arg(0), t.arg(1))) return d::eqtIntro(d::refl(t.arg(0)));
  if (!set_.arithmetic) return std::nullopt;
  try {
    if (t.sort() == Sort::Nat && ground(t) && !t.numeralValue()) {
      if (auto v = arith::evaluate(t)) return d::ring(t, Term::numeral(*v));
    }
    if (t.is(Sym::Eq) || t.is(Sym::Lt) || t.is(Sym::Le)) {
      const Term &l = t.arg(0), &r = t.arg(1);
      if (ground(l) && ground(r)) return infer(Rule::NatEval, {}, std::vector<Term>{t});
      if (!noBinders(t)) return std::nullopt;
      if (t.is(Sym::Eq)) {
        if (arith::normalize(l) == arith::normalize(r)) return d::eqtIntro(d::ring(l, r));
        if (auto th = refuteEq(l, r)) return d::eqfIntro(*th);
      } else if (t.is(Sym::Le)) {
        if (auto th = d::proveLe(l, r)) return d::eqtIntro(*th);
        if (set_.notLessEqual) {
          if (auto lt = d::proveLt(r, l)) {
            // |- ~(l <= r) from NOT_LESS_EQUAL: ~(m <= n) <=> n < m
            const Thm inst = instantiate(*set_.notLessEqual, {l, r});
            return d::eqfIntro(d::eqMp(d::sym(inst), *lt));
          }
        }
      } else {
        if (auto th = d::proveLt(l, r)) return d::eqtIntro(*th);
        if (set_.notLess) {
          if (auto le = d::proveLe(r, l)) {
            const Thm inst = instantiate(*set_.notLess, {l, r});
            return d::eqfIntro(d::eqMp(d::sym(inst), *le));
          }
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() != Errc::RuleMismatch) throw;
  }
  return std::nullopt;
}

Thm Simplifier::simplifyThm(const Thm& th) {
  auto eq = run(th.concl());
  return eq ? d::eqMp(*eq, th) : th;
}

}  // namespace exemplar
