#include "exemplar/tactics.hpp"

#include <algorithm>

#include "exemplar/derived.hpp"
#include "exemplar/error.hpp"

namespace exemplar::tactics {

namespace d = derived;
using namespace tacticals;

namespace {

TacticResult identity(const Goal& g) { return allTac()(g); }

Goal withAsm(const Goal& g, const Term& a) {
  Goal out = g;
  if (!hypsContain(out.asl, a)) out.asl.push_back(a);
  return out;
}

Goal withoutAsm(const Goal& g, std::size_t i) {
  Goal out = g;
  out.asl.erase(out.asl.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

Goal withConcl(const Goal& g, const Term& c) { return Goal{g.asl, c}; }

Term freshVar(const std::string& base, const Goal& g, const std::vector<Term>& extra = {}) {
  std::vector<std::string> avoid = goalVarNames(g);
  for (const Term& t : extra)
    for (const Term& v : freeVars(t)) avoid.push_back(v.name());
  return Term::var(freshName(base, avoid), Sort::Nat);
}

Thm inferWith(Rule r, std::vector<Thm> premises, std::vector<Term> args = {}) { return infer(r, premises, args); }

// Justification that ignores the subgoal theorems and maps one premise.
TacticResult single(Goal sub, std::function<Thm(const Thm&)> f) {
  return {{std::move(sub)}, [f = std::move(f)](const std::vector<Thm>& ths) { return f(ths.at(0)); }};
}

Term parseQuot(const std::string& q, Sort sort) { return parseTerm(q, sort); }

}  // namespace

Tactic genTac() {
  return [](const Goal& g) -> TacticResult {
    if (!g.concl.is(Sym::Forall)) tacticFails("gen_tac: goal is not universally quantified");
    const std::string& x = g.concl.name();
    const bool clash = std::any_of(g.asl.begin(), g.asl.end(), [&](const Term& a) { return freeIn(x, a); });
    const Term v = clash ? freshVar(x, g) : Term::var(x, Sort::Nat);
    const Term body = substitute(g.concl.arg(0), Term::var(x, Sort::Nat), v);
    return single(withConcl(g, body), [v](const Thm& th) { return d::gen(v, th); });
  };
}

namespace {

std::vector<Term> withTerm(std::vector<Term> ts, const Term& t) {
  ts.push_back(t);
  return ts;
}

}  // namespace

Tactic stripAssume(const Term& p, const std::vector<Term>& pending) {
  return [p, pending](const Goal& g) -> TacticResult {
    if (p.is(Sym::True)) return identity(g);
    if (p.is(Sym::False)) return closed(d::contr(g.concl, d::assume(p)));
    if (p.is(Sym::And)) {
      TacticResult r = then(stripAssume(p.arg(0), withTerm(pending, p.arg(1))), stripAssume(p.arg(1), pending))(g);
      Justification inner = r.just;
      r.just = [inner, p](const std::vector<Thm>& ths) {
        const Thm whole = d::assume(p);
        Thm th = inner(ths);
        th = d::proveHyp(th, p.arg(0), inferWith(Rule::ConjElimL, {whole}));
        return d::proveHyp(th, p.arg(1), inferWith(Rule::ConjElimR, {whole}));
      };
      return r;
    }
    if (p.is(Sym::Or)) {
      TacticResult a = stripAssume(p.arg(0), pending)(g);
      TacticResult b = stripAssume(p.arg(1), pending)(g);
      std::vector<Goal> subs = a.subgoals;
      subs.insert(subs.end(), b.subgoals.begin(), b.subgoals.end());
      const std::size_t n = a.subgoals.size();
      return {subs, [p, n, ja = a.just, jb = b.just](const std::vector<Thm>& ths) {
                std::vector<Thm> left(ths.begin(), ths.begin() + static_cast<std::ptrdiff_t>(n));
                std::vector<Thm> right(ths.begin() + static_cast<std::ptrdiff_t>(n), ths.end());
                return inferWith(Rule::DisjCases, {d::assume(p), ja(left), jb(right)});
              }};
    }
    if (p.is(Sym::Exists)) {
      const Term v = freshVar(p.name(), g, withTerm(pending, p));
      const Term body = substitute(p.arg(0), Term::var(p.name(), Sort::Nat), v);
      TacticResult r = stripAssume(body, pending)(g);
      Justification inner = r.just;
      r.just = [inner, p, v](const std::vector<Thm>& ths) {
        return inferWith(Rule::ExistsElim, {d::assume(p), inner(ths)}, {v});
      };
      return r;
    }
    if (hypsContain(g.asl, p)) return identity(g);
    return single(withAsm(g, p), [](const Thm& th) { return th; });
  };
}

Tactic stripAssumeTac(const Thm& th) {
  return [th](const Goal& g) -> TacticResult {
    TacticResult r = stripAssume(th.concl())(g);
    Justification inner = r.just;
    r.just = [inner, th](const std::vector<Thm>& ths) { return d::proveHyp(inner(ths), th.concl(), th); };
    return r;
  };
}

Tactic conjTac() {
  return [](const Goal& g) -> TacticResult {
    if (!g.concl.is(Sym::And)) tacticFails("conj_tac: goal is not a conjunction");
    return {{withConcl(g, g.concl.arg(0)), withConcl(g, g.concl.arg(1))},
            [](const std::vector<Thm>& ths) { return d::conj(ths.at(0), ths.at(1)); }};
  };
}

Tactic disj1Tac() {
  return [](const Goal& g) -> TacticResult {
    if (!g.concl.is(Sym::Or)) tacticFails("disj1_tac: goal is not a disjunction");
    const Term q = g.concl.arg(1);
    return single(withConcl(g, g.concl.arg(0)),
                  [q](const Thm& th) { return inferWith(Rule::DisjIntroL, {th}, {q}); });
  };
}

Tactic disj2Tac() {
  return [](const Goal& g) -> TacticResult {
    if (!g.concl.is(Sym::Or)) tacticFails("disj2_tac: goal is not a disjunction");
    const Term p = g.concl.arg(0);
    return single(withConcl(g, g.concl.arg(1)),
                  [p](const Thm& th) { return inferWith(Rule::DisjIntroR, {th}, {p}); });
  };
}

Tactic eqTac() {
  return [](const Goal& g) -> TacticResult {
    if (!g.concl.is(Sym::Iff)) tacticFails("EQ_TAC: goal is not an equivalence");
    const Term &p = g.concl.arg(0), &q = g.concl.arg(1);
    return {{withConcl(g, Term::imp(p, q)), withConcl(g, Term::imp(q, p))},
            [](const std::vector<Thm>& ths) { return inferWith(Rule::IffIntro, {ths.at(0), ths.at(1)}); }};
  };
}

Tactic ccontrTac() {
  return [](const Goal& g) -> TacticResult {
    const Term c = g.concl;
    const Term notC = Term::neg(c);
    return single(withConcl(withAsm(g, notC), Term::falsity()), [c, notC](const Thm& th) {
      const Thm cases = inferWith(Rule::CaseBool, {}, {c});
      return inferWith(Rule::DisjCases, {cases, d::assume(c), d::contr(c, th)});
    });
  };
}

Tactic stripTac() {
  return [](const Goal& g) -> TacticResult {
    const Term& c = g.concl;
    if (c.is(Sym::Forall)) return genTac()(g);
    if (c.is(Sym::And)) return conjTac()(g);
    if (c.is(Sym::Imp) || (c.is(Sym::Not) && !c.arg(0).is(Sym::False))) {
      const bool neg = c.is(Sym::Not);
      const Term p = c.arg(0);
      const Term q = neg ? Term::falsity() : c.arg(1);
      TacticResult r = stripAssume(p)(withConcl(g, q));
      Justification inner = r.just;
      r.just = [inner, p, neg](const std::vector<Thm>& ths) {
        const Thm th = d::disch(p, inner(ths));
        return neg ? inferWith(Rule::NotIntro, {th}) : th;
      };
      return r;
    }
    tacticFails("strip_tac: nothing to strip");
  };
}

Tactic simplify(std::shared_ptr<const SimpSet> base, std::vector<Thm> thms, SimpOptions options) {
  return [base, thms, options](const Goal& g) -> TacticResult {
    SimpSet set = *base;
    set.rules.clear();
    set.add(thms);
    const auto userRules = static_cast<std::ptrdiff_t>(set.rules.size());
    for (const RewriteRule& r : base->rules) set.rules.push_back(r);

    // New assumption list, each with a proof from the old assumptions.
    std::vector<Term> asl;
    std::vector<Thm> proofs;
    auto keep = [&](const Thm& th) {
      if (th.concl().is(Sym::True) || hypsContain(asl, th.concl())) return;
      asl.push_back(th.concl());
      proofs.push_back(th);
    };
    for (const Term& a : g.asl) {
      Thm th = d::assume(a);
      if (options.simplifyAssumptions) th = Simplifier(set).simplifyThm(th);
      for (const Thm& part : d::conjuncts(th)) {
        if (part.concl().is(Sym::False)) return closed(d::contr(g.concl, part));
        keep(part);
      }
    }

    auto discharge = [asl, proofs](Thm th) {
      for (std::size_t i = 0; i < asl.size(); ++i) {
        const Thm& pf = proofs[i];
        const bool trivial = pf.hyps().size() == 1 && alphaEqual(pf.hyps()[0], asl[i]);
        if (!trivial) th = d::proveHyp(th, asl[i], pf);
      }
      return th;
    };

    if (options.simplifyAssumptions) {
      for (const Term& a : asl) {
        if (!a.is(Sym::Not) || !hypsContain(asl, a.arg(0))) continue;
        const Thm f = d::mp(inferWith(Rule::NotElim, {d::assume(a)}), d::assume(a.arg(0)));
        return closed(discharge(d::contr(g.concl, f)));
      }
    }

    SimpSet conclSet = set;
    if (options.useAssumptions) {
      std::vector<RewriteRule> asmRules;
      for (const Term& a : asl)
        for (RewriteRule& r : rewriteRules(d::assume(a))) asmRules.push_back(std::move(r));
      conclSet.rules.insert(conclSet.rules.begin() + userRules, asmRules.begin(), asmRules.end());
    }
    const std::optional<Thm> eq = Simplifier(conclSet).run(g.concl);
    const Term c = eq ? eq->concl().arg(1) : g.concl;
    if (c.is(Sym::True)) return closed(discharge(eq ? d::eqMp(d::sym(*eq), d::truth()) : d::truth()));
    return single(Goal{asl, c}, [eq, discharge](const Thm& th) {
      return discharge(eq ? d::eqMp(d::sym(*eq), th) : th);
    });
  };
}

Tactic fs(std::shared_ptr<const SimpSet> base, std::vector<Thm> thms) {
  return simplify(std::move(base), std::move(thms), {true, true});
}

Tactic rw(std::shared_ptr<const SimpSet> base, std::vector<Thm> thms) {
  return then(repeat(stripTac()), fs(std::move(base), std::move(thms)));
}

Tactic simp(std::shared_ptr<const SimpSet> base, std::vector<Thm> thms) {
  return simplify(std::move(base), std::move(thms), {false, false});
}

Tactic rewriteTac(std::vector<Thm> thms) {
  return simplify(std::make_shared<const SimpSet>(pureSimpSet()), std::move(thms), {false, false});
}

Tactic assumeTac(const Thm& th) {
  return [th](const Goal& g) -> TacticResult {
    if (hypsContain(g.asl, th.concl())) return identity(g);
    return single(withAsm(g, th.concl()), [th](const Thm& sub) { return d::proveHyp(sub, th.concl(), th); });
  };
}

Tactic mpTac(const Thm& th) {
  return [th](const Goal& g) -> TacticResult {
    return single(withConcl(g, Term::imp(th.concl(), g.concl)), [th](const Thm& sub) { return d::mp(sub, th); });
  };
}

namespace {

std::vector<Term> matchVars(const Thm& th) {
  std::vector<Term> out;
  for (const Term& v : freeVars(th.concl()))
    if (std::none_of(th.hyps().begin(), th.hyps().end(), [&](const Term& h) { return occursFree(v, h); }))
      out.push_back(v);
  return out;
}

std::vector<Term> fixedVars(const Thm& th) {
  std::vector<Term> out;
  for (const Term& h : th.hyps())
    for (const Term& v : freeVars(h)) out.push_back(v);
  return out;
}

}  // namespace

Tactic irule(const Thm& th) {
  return [th](const Goal& g) -> TacticResult {
    const Thm spec = d::specAll(th, goalVarNames(g));
    std::vector<Term> antecedents;
    Term body = spec.concl();
    while (body.is(Sym::Imp)) {
      antecedents.push_back(body.arg(0));
      body = body.arg(1);
    }
    const std::vector<Term> fixed = fixedVars(spec);
    auto sigma = matchTerm(body, g.concl, fixed);
    if (!sigma) tacticFails("irule: conclusion does not match the goal");
    const Thm instance = d::inst(*sigma, spec);
    std::vector<Term> ants;
    for (const Term& a : antecedents) ants.push_back(substitute(a, *sigma));
    auto applyAll = [instance](const std::vector<Thm>& parts) {
      Thm out = instance;
      for (const Thm& p : parts) out = d::mp(out, p);
      return out;
    };
    if (ants.empty()) return closed(instance);

    std::vector<Term> unbound;
    for (const Term& v : matchVars(spec)) {
      const bool bound = std::any_of(sigma->begin(), sigma->end(), [&](const auto& kv) { return alphaEqual(kv.first, v); });
      if (!bound && std::any_of(ants.begin(), ants.end(), [&](const Term& a) { return occursFree(v, a); }))
        unbound.push_back(v);
    }
    if (unbound.empty()) {
      std::vector<Goal> subs;
      for (const Term& a : ants) subs.push_back(withConcl(g, a));
      return {subs, applyAll};
    }
    Term conjunction = ants.back();
    for (auto it = ants.rbegin() + 1; it != ants.rend(); ++it) conjunction = Term::conj(*it, conjunction);
    std::vector<Term> exists;  // exists[i] quantifies unbound[i..]
    Term q = conjunction;
    for (auto it = unbound.rbegin(); it != unbound.rend(); ++it) {
      q = Term::exists(it->name(), q);
      exists.insert(exists.begin(), q);
    }
    return single(withConcl(g, exists.front()), [=](const Thm& exThm) {
      std::vector<Thm> parts;
      Thm rest = d::assume(conjunction);
      for (std::size_t i = 0; i + 1 < ants.size(); ++i) {
        parts.push_back(inferWith(Rule::ConjElimL, {rest}));
        rest = inferWith(Rule::ConjElimR, {rest});
      }
      parts.push_back(rest);
      Thm out = applyAll(parts);
      for (std::size_t i = unbound.size(); i-- > 0;) {
        const Thm exI = i == 0 ? exThm : d::assume(exists[i]);
        out = inferWith(Rule::ExistsElim, {exI, out}, {unbound[i]});
      }
      return out;
    });
  };
}

Tactic impResTac(const Thm& th) {
  return [th](const Goal& g) -> TacticResult {
    const Thm spec = d::specAll(th, goalVarNames(g));
    if (!spec.concl().is(Sym::Imp)) return identity(g);
    const Term& p = spec.concl().arg(0);
    const std::vector<Term> fixed = fixedVars(spec);
    std::vector<Thm> derived;
    for (const Term& a : g.asl) {
      auto sigma = matchTerm(p, a, fixed);
      if (!sigma) continue;
      const Thm out = d::mp(d::inst(*sigma, spec), d::assume(a));
      if (std::any_of(derived.begin(), derived.end(), [&](const Thm& x) { return alphaEqual(x.concl(), out.concl()); }))
        continue;
      derived.push_back(out);
    }
    Tactic t = allTac();
    for (const Thm& x : derived) t = then(t, assumeTac(x));
    return t(g);
  };
}

Tactic firstXAssum(ThmTactic ttac) {
  return [ttac](const Goal& g) -> TacticResult {
    for (std::size_t i = g.asl.size(); i-- > 0;) {
      try {
        return ttac(d::assume(g.asl[i]))(withoutAsm(g, i));
      } catch (const Error& e) {
        if (e.code() != Errc::TacticFails && e.code() != Errc::RuleMismatch) throw;
      }
    }
    tacticFails("first_x_assum: no assumption worked");
  };
}

Tactic popAssum(ThmTactic ttac) {
  return [ttac](const Goal& g) -> TacticResult {
    if (g.asl.empty()) tacticFails("pop_assum: no assumptions");
    const std::size_t i = g.asl.size() - 1;
    return ttac(d::assume(g.asl[i]))(withoutAsm(g, i));
  };
}

Tactic qpatXAssum(const std::string& pattern, ThmTactic ttac) {
  return [pattern, ttac](const Goal& g) -> TacticResult {
    const Term pat = parseQuot(pattern, Sort::Bool);
    std::vector<Term> fixed;
    for (const Term& v : freeVars(pat))
      if (occursFree(v, g.concl) ||
          std::any_of(g.asl.begin(), g.asl.end(), [&](const Term& a) { return occursFree(v, a); }))
        fixed.push_back(v);
    for (std::size_t i = g.asl.size(); i-- > 0;)
      if (matchTerm(pat, g.asl[i], fixed)) return ttac(d::assume(g.asl[i]))(withoutAsm(g, i));
    tacticFails("qpat_x_assum: no assumption matches " + render(pat));
  };
}

Tactic qspecThen(const std::string& quot, ThmTactic ttac, const Thm& th) {
  return [quot, ttac, th](const Goal& g) -> TacticResult {
    const Thm q = th.concl().is(Sym::Forall) ? th : d::genAll(th);
    if (!q.concl().is(Sym::Forall)) tacticFails("qspec_then: theorem is not universally quantified");
    return ttac(d::spec(parseQuot(quot, Sort::Nat), q))(g);
  };
}

Tactic qspeclThen(const std::vector<std::string>& quots, ThmTactic ttac, const Thm& th) {
  return [quots, ttac, th](const Goal& g) -> TacticResult {
    Thm out = th.concl().is(Sym::Forall) ? th : d::genAll(th);
    for (const std::string& q : quots) {
      if (!out.concl().is(Sym::Forall)) tacticFails("qspecl_then: too many instances");
      out = d::spec(parseQuot(q, Sort::Nat), out);
    }
    return ttac(out)(g);
  };
}

namespace {

// Shared by Induct_on and Cases_on on a nat variable.
TacticResult natSplit(const Goal& g, const std::string& quot, bool hypothesis, const char* who) {
  const Term v = parseQuot(quot, Sort::Nat);
  if (!v.isVar()) tacticFails(std::string(who) + ": expected a variable, got " + render(v));
  const bool freeInGoal = occursFree(v, g.concl) ||
                          std::any_of(g.asl.begin(), g.asl.end(), [&](const Term& a) { return occursFree(v, a); });
  std::vector<Term> rest, moved;
  Term p;
  if (freeInGoal) {
    for (const Term& a : g.asl) (occursFree(v, a) ? moved : rest).push_back(a);
    p = g.concl;
    for (auto it = moved.rbegin(); it != moved.rend(); ++it) p = Term::imp(*it, p);
  } else if (g.concl.is(Sym::Forall) && g.concl.name() == v.name()) {
    rest = g.asl;
    p = g.concl.arg(0);
  } else {
    tacticFails(std::string(who) + ": " + v.name() + " does not occur in the goal");
  }
  const Term base = substitute(p, v, Term::zero());
  const Term step = substitute(p, v, Term::suc(v));
  Goal stepGoal{rest, step};
  if (hypothesis && !hypsContain(stepGoal.asl, p)) stepGoal.asl.push_back(p);
  return {{Goal{rest, base}, stepGoal}, [=](const std::vector<Thm>& ths) {
            const Thm stepThm = d::gen(v, d::disch(p, ths.at(1)));
            Thm out = inferWith(Rule::NatInduction, {ths.at(0), stepThm});
            if (!freeInGoal) return out;
            out = d::spec(v, out);
            for (const Term& a : moved) out = d::mp(out, d::assume(a));
            return out;
          }};
}

}  // namespace

Tactic inductOn(const std::string& quot) {
  return [quot](const Goal& g) { return natSplit(g, quot, true, "Induct_on"); };
}

Tactic casesOn(const std::string& quot) {
  return [quot](const Goal& g) -> TacticResult {
    Term t;
    try {
      t = parseQuot(quot, Sort::Nat);
    } catch (const Error&) {
      t = parseQuot(quot, Sort::Bool);
    }
    if (t.sort() == Sort::Nat) return natSplit(g, quot, false, "Cases_on");
    return {{withAsm(g, t), withAsm(g, Term::neg(t))}, [t](const std::vector<Thm>& ths) {
              return inferWith(Rule::DisjCases, {inferWith(Rule::CaseBool, {}, {t}), ths.at(0), ths.at(1)});
            }};
  };
}

Tactic qexistsTac(const std::string& quot) {
  return [quot](const Goal& g) -> TacticResult {
    if (!g.concl.is(Sym::Exists)) tacticFails("qexists_tac: goal is not existential");
    const Term w = parseQuot(quot, Sort::Nat);
    const Term body = substitute(g.concl.arg(0), Term::var(g.concl.name(), Sort::Nat), w);
    const Term ex = g.concl;
    return single(withConcl(g, body), [ex, w](const Thm& th) { return inferWith(Rule::ExistsIntro, {th}, {ex, w}); });
  };
}

Tactic by(const std::string& quot, Tactic tac) {
  return [quot, tac](const Goal& g) -> TacticResult {
    const Term p = parseQuot(quot, Sort::Bool);
    const TacticResult proof = solves(tac, "by")(withConcl(g, p));
    const Thm pThm = proof.just({});
    return stripAssumeTac(pThm)(g);
  };
}

Tactic sufficesBy(const std::string& quot, Tactic tac) {
  return [quot, tac](const Goal& g) -> TacticResult {
    const Term p = parseQuot(quot, Sort::Bool);
    const TacticResult proof = solves(tac, "suffices_by")(withConcl(g, Term::imp(p, g.concl)));
    const Thm imp = proof.just({});
    return single(withConcl(g, p), [imp](const Thm& th) { return d::mp(imp, th); });
  };
}

namespace {

// Replaces an assumption l <= r or l < r, r a variable, by the witness
// equation l + k = r (SUC l + k = r).
Tactic eliminateOrder() {
  return [](const Goal& g) -> TacticResult {
    for (std::size_t i = g.asl.size(); i-- > 0;) {
      const Term& a = g.asl[i];
      if (!(a.is(Sym::Le) || a.is(Sym::Lt))) continue;
      const Term& l = a.arg(0);
      const Term& r = a.arg(1);
      if (!r.isVar() || occursFree(r, l)) continue;
      Thm le = d::assume(a);
      if (a.is(Sym::Lt)) le = d::mp(inferWith(Rule::IffElimL, {d::specl({l, r}, infer(Rule::LtDef))}), le);
      const Term& ll = le.concl().arg(0);
      const Thm ex = d::mp(inferWith(Rule::IffElimL, {d::specl({ll, r}, infer(Rule::LeDef))}), le);
      return then(stripAssumeTac(ex), eliminateOrder())(withoutAsm(g, i));
    }
    return identity(g);
  };
}

}  // namespace

Tactic decideTac(std::shared_ptr<const SimpSet> base) {
  return solves(then(repeat(stripTac()), then(eliminateOrder(), fs(base, {}))), "DECIDE_TAC");
}

}  // namespace exemplar::tactics
