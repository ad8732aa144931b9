#include <algorithm>

#include "exemplar/derived.hpp"
#include "exemplar/error.hpp"
#include "exemplar/tactics.hpp"

namespace exemplar::tactics {

namespace d = derived;

namespace {

constexpr int kNodeBudget = 20000;
constexpr std::size_t kTautAtoms = 12;
constexpr int kSimpBudget = 200;

Thm rule(Rule r, std::vector<Thm> premises, std::vector<Term> args = {}) { return infer(r, premises, args); }

void atomsOf(const Term& t, std::vector<Term>& atoms) {
  switch (t.sym()) {
    case Sym::Not:
    case Sym::And:
    case Sym::Or:
    case Sym::Imp:
    case Sym::Iff:
      for (const Term& c : t.args()) atomsOf(c, atoms);
      return;
    case Sym::True:
    case Sym::False: return;
    default: break;
  }
  if (std::none_of(atoms.begin(), atoms.end(), [&](const Term& a) { return alphaEqual(a, t); })) atoms.push_back(t);
}

// Depth-bounded goal-directed search. Facts are theorems whose hypotheses
// are assumptions of the goal or local assumptions discharged on the way up.
class Prover {
 public:
  Prover(std::shared_ptr<const SimpSet> base, std::vector<Thm> lemmas, std::vector<std::string> names)
      : base_(std::move(base)), lemmas_(std::move(lemmas)), names_(std::move(names)) {}

  std::optional<Thm> prove(std::vector<Thm> facts, const Term& goal, int depth) {
    if (--nodes_ < 0) tacticFails("metis_tac: search bound exceeded");
    for (const Term& v : freeVars(goal)) note(v.name());

    if (goal.is(Sym::True)) return d::truth();
    for (const Thm& f : facts) {
      if (alphaEqual(f.concl(), goal)) return f;
      if (f.concl().is(Sym::False)) return d::contr(goal, f);
    }
    if (auto th = propositional(facts, goal)) return th;
    if (auto th = bySimp(facts, goal)) return th;
    if (depth <= 0) return std::nullopt;

    switch (goal.sym()) {
      case Sym::Forall: {
        const Term v = Term::var(fresh(goal.name()), Sort::Nat);
        auto th = prove(facts, substitute(goal.arg(0), Term::var(goal.name(), Sort::Nat), v), depth);
        if (!th) return std::nullopt;
        try {
          return d::gen(v, *th);
        } catch (const Error&) {
          return std::nullopt;
        }
      }
      case Sym::Imp: {
        const Term& p = goal.arg(0);
        auto th = prove(extend(facts, d::assume(p)), goal.arg(1), depth);
        if (!th) return std::nullopt;
        return d::disch(p, *th);
      }
      case Sym::Not: {
        const Term& p = goal.arg(0);
        auto th = prove(extend(facts, d::assume(p)), Term::falsity(), depth);
        if (!th) return std::nullopt;
        return rule(Rule::NotIntro, {d::disch(p, *th)});
      }
      case Sym::And: {
        auto a = prove(facts, goal.arg(0), depth);
        if (!a) return std::nullopt;
        auto b = prove(facts, goal.arg(1), depth);
        if (!b) return std::nullopt;
        return d::conj(*a, *b);
      }
      case Sym::Iff: {
        auto a = prove(facts, Term::imp(goal.arg(0), goal.arg(1)), depth);
        if (!a) return std::nullopt;
        auto b = prove(facts, Term::imp(goal.arg(1), goal.arg(0)), depth);
        if (!b) return std::nullopt;
        return rule(Rule::IffIntro, {*a, *b});
      }
      default: break;
    }

    if (goal.is(Sym::Or)) {
      if (auto a = prove(facts, goal.arg(0), depth - 1)) return rule(Rule::DisjIntroL, {*a}, {goal.arg(1)});
      if (auto b = prove(facts, goal.arg(1), depth - 1)) return rule(Rule::DisjIntroR, {*b}, {goal.arg(0)});
    }
    if (goal.is(Sym::Exists)) {
      if (auto th = witness(facts, goal, depth)) return th;
    }
    if (auto th = backchain(facts, goal, depth)) return th;
    if (auto th = caseSplit(facts, goal, depth)) return th;
    return std::nullopt;
  }

 private:
  std::vector<Thm> extend(std::vector<Thm> facts, const Thm& th) {
    for (const Thm& part : d::conjuncts(th)) {
      for (const Term& v : freeVars(part.concl())) note(v.name());
      if (std::none_of(facts.begin(), facts.end(), [&](const Thm& f) { return alphaEqual(f.concl(), part.concl()); }))
        facts.push_back(part);
    }
    return facts;
  }

  void note(const std::string& name) {
    if (std::find(names_.begin(), names_.end(), name) == names_.end()) names_.push_back(name);
  }

  std::string fresh(const std::string& base) {
    std::string n = freshName(base, names_);
    names_.push_back(n);
    return n;
  }

  std::optional<Thm> propositional(const std::vector<Thm>& facts, const Term& goal) {
    std::vector<const Thm*> used;
    std::vector<Term> atoms;
    atomsOf(goal, atoms);
    for (const Thm& f : facts) {
      if (f.concl().is(Sym::Forall)) continue;
      std::vector<Term> trial = atoms;
      atomsOf(f.concl(), trial);
      if (trial.size() > kTautAtoms) continue;
      atoms = std::move(trial);
      used.push_back(&f);
    }
    if (used.empty() && atoms.empty()) return std::nullopt;
    Term imp = goal;
    for (auto it = used.rbegin(); it != used.rend(); ++it) imp = Term::imp((*it)->concl(), imp);
    Thm th = [&]() -> Thm {
      try {
        return d::taut(imp);
      } catch (const Error&) {
        return d::truth();
      }
    }();
    if (!th.concl().is(Sym::Imp) && !alphaEqual(th.concl(), goal)) return std::nullopt;
    for (const Thm* f : used) th = d::mp(th, *f);
    return th;
  }

  std::optional<Thm> bySimp(const std::vector<Thm>& facts, const Term& goal) {
    SimpSet set = *base_;
    set.rules.clear();
    for (const Thm& f : facts)
      if (!f.concl().is(Sym::Or)) set.add(f);
    for (const Thm& l : lemmas_) set.add(l);
    for (const RewriteRule& r : base_->rules) set.rules.push_back(r);
    try {
      auto eq = Simplifier(set, kSimpBudget).run(goal);
      if (eq && eq->concl().arg(1).is(Sym::True)) return d::eqMp(d::sym(*eq), d::truth());
    } catch (const Error& e) {
      if (e.code() != Errc::TacticFails && e.code() != Errc::RuleMismatch) throw;
    }
    return std::nullopt;
  }

  std::vector<Thm> candidates(const std::vector<Thm>& facts) {
    std::vector<Thm> out;
    auto add = [&](const Thm& th) {
      Thm s = d::specAll(th, names_);
      for (const Term& v : freeVars(s.concl())) note(v.name());
      if (s.concl().is(Sym::Iff)) {
        out.push_back(rule(Rule::IffElimL, {s}));
        out.push_back(rule(Rule::IffElimR, {s}));
      }
      out.push_back(s);
    };
    for (const Thm& f : facts)
      if (f.concl().is(Sym::Forall) || f.concl().is(Sym::Imp) || f.concl().is(Sym::Iff)) add(f);
    for (const Thm& l : lemmas_)
      for (const Thm& part : d::conjuncts(d::specAll(l, names_))) add(part);
    return out;
  }

  static std::vector<Term> antecedents(Term body, Term& head) {
    std::vector<Term> out;
    while (body.is(Sym::Imp)) {
      std::vector<Term> parts;
      std::vector<Term> stack{body.arg(0)};
      while (!stack.empty()) {
        Term t = stack.back();
        stack.pop_back();
        if (t.is(Sym::And)) {
          stack.push_back(t.arg(1));
          stack.push_back(t.arg(0));
        } else {
          parts.push_back(t);
        }
      }
      out.insert(out.end(), parts.begin(), parts.end());
      body = body.arg(1);
    }
    head = body;
    return out;
  }

  static std::vector<Term> fixedOf(const Thm& th) {
    std::vector<Term> out;
    for (const Term& h : th.hyps())
      for (const Term& v : freeVars(h)) out.push_back(v);
    return out;
  }

  // Extends sigma so that every antecedent's variables are bound, trying
  // matches against the facts for the first antecedent with unbound ones.
  void bindings(const std::vector<Term>& ants, std::size_t i, const std::vector<Term>& fixed,
                const std::vector<Thm>& facts, Substitution sigma, std::vector<Substitution>& out) {
    if (out.size() >= 8) return;
    if (i == ants.size()) {
      out.push_back(sigma);
      return;
    }
    const Term a = substitute(ants[i], sigma);
    std::vector<Term> open;
    for (const Term& v : freeVars(a))
      if (std::none_of(fixed.begin(), fixed.end(), [&](const Term& f) { return alphaEqual(f, v); }) &&
          std::find(pending_.begin(), pending_.end(), v.name()) != pending_.end())
        open.push_back(v);
    if (open.empty()) {
      bindings(ants, i + 1, fixed, facts, sigma, out);
      return;
    }
    std::vector<Term> frozen = fixed;
    for (const Term& v : freeVars(a))
      if (std::find(pending_.begin(), pending_.end(), v.name()) == pending_.end()) frozen.push_back(v);
    for (const Thm& f : facts) {
      auto m = matchTerm(a, f.concl(), frozen);
      if (!m) continue;
      Substitution next = sigma;
      for (auto& [v, t] : next) t = substitute(t, *m);
      for (const auto& kv : *m) next.push_back(kv);
      bindings(ants, i + 1, fixed, facts, next, out);
    }
  }

  std::optional<Thm> backchain(const std::vector<Thm>& facts, const Term& goal, int depth) {
    for (const Thm& cand : candidates(facts)) {
      Term head;
      const std::vector<Term> ants = antecedents(cand.concl(), head);
      if (head.isVar() || head.is(Sym::False)) continue;
      const std::vector<Term> fixed = fixedOf(cand);
      auto sigma = matchTerm(head, goal, fixed);
      if (!sigma) continue;
      pending_.clear();
      for (const Term& v : freeVars(cand.concl()))
        if (std::none_of(fixed.begin(), fixed.end(), [&](const Term& f) { return alphaEqual(f, v); }))
          pending_.push_back(v.name());
      std::vector<Substitution> options;
      bindings(ants, 0, fixed, facts, *sigma, options);
      for (const Substitution& s : options) {
        const Thm inst = d::inst(s, cand);
        std::vector<Term> instAnts;
        Term instHead;
        instAnts = antecedents(inst.concl(), instHead);
        std::vector<Thm> proofs;
        bool ok = true;
        for (const Term& a : instAnts) {
          auto p = prove(facts, a, depth - 1);
          if (!p) {
            ok = false;
            break;
          }
          proofs.push_back(*p);
        }
        if (!ok) continue;
        try {
          return discharge(inst, proofs);
        } catch (const Error&) {
        }
      }
    }
    return std::nullopt;
  }

  // Applies an implication chain whose antecedents may be conjunctions to
  // proofs of the flattened antecedents.
  static Thm discharge(Thm th, const std::vector<Thm>& proofs) {
    std::size_t k = 0;
    while (th.concl().is(Sym::Imp)) {
      th = d::mp(th, assemble(th.concl().arg(0), proofs, k));
    }
    return th;
  }

  static Thm assemble(const Term& t, const std::vector<Thm>& proofs, std::size_t& k) {
    if (t.is(Sym::And)) {
      Thm a = assemble(t.arg(0), proofs, k);
      Thm b = assemble(t.arg(1), proofs, k);
      return d::conj(a, b);
    }
    return proofs.at(k++);
  }

  std::optional<Thm> witness(const std::vector<Thm>& facts, const Term& goal, int depth) {
    const Term x = Term::var(fresh(goal.name()), Sort::Nat);
    const Term body = substitute(goal.arg(0), Term::var(goal.name(), Sort::Nat), x);
    std::vector<Term> fixed;
    for (const Term& v : freeVars(body))
      if (!alphaEqual(v, x)) fixed.push_back(v);
    std::vector<Term> tried;
    auto attempt = [&](const Term& w) -> std::optional<Thm> {
      if (std::any_of(tried.begin(), tried.end(), [&](const Term& t) { return alphaEqual(t, w); })) return std::nullopt;
      tried.push_back(w);
      auto th = prove(facts, substitute(body, x, w), depth - 1);
      if (!th) return std::nullopt;
      return rule(Rule::ExistsIntro, {*th}, {goal, w});
    };
    for (const Thm& f : facts) {
      std::vector<Term> parts;
      Term head;
      for (const Term& t : antecedents(f.concl(), head)) parts.push_back(t);
      parts.push_back(head);
      for (const Term& p : parts) {
        std::vector<Term> subterms{p};
        auto m = matchTerm(body, p, fixed);
        if (!m) continue;
        for (const auto& [v, t] : *m)
          if (alphaEqual(v, x))
            if (auto th = attempt(t)) return th;
      }
    }
    for (const Term& w : {Term::zero(), Term::numeral(1)})
      if (auto th = attempt(w)) return th;
    return std::nullopt;
  }

  std::optional<Thm> caseSplit(const std::vector<Thm>& facts, const Term& goal, int depth) {
    for (std::size_t i = 0; i < facts.size(); ++i) {
      const Term& c = facts[i].concl();
      if (!c.is(Sym::Or)) continue;
      std::vector<Thm> rest = facts;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      auto left = prove(extend(rest, d::assume(c.arg(0))), goal, depth - 1);
      if (!left) continue;
      auto right = prove(extend(rest, d::assume(c.arg(1))), goal, depth - 1);
      if (!right) continue;
      return rule(Rule::DisjCases, {facts[i], *left, *right});
    }
    return std::nullopt;
  }

  std::shared_ptr<const SimpSet> base_;
  std::vector<Thm> lemmas_;
  std::vector<std::string> names_;
  std::vector<std::string> pending_;
  int nodes_ = kNodeBudget;
};

}  // namespace

Tactic metisTac(std::shared_ptr<const SimpSet> base, std::vector<Thm> thms, int depth) {
  return [base, thms, depth](const Goal& g) -> TacticResult {
    Prover prover(base, thms, goalVarNames(g));
    std::vector<Thm> facts;
    for (const Term& a : g.asl)
      for (const Thm& part : d::conjuncts(d::assume(a))) facts.push_back(part);
    for (int limit = 1; limit <= depth; ++limit) {
      if (auto th = prover.prove(facts, g.concl, limit)) return tacticals::closed(*th);
    }
    tacticFails("metis_tac: no proof found within depth " + std::to_string(depth));
  };
}

}  // namespace exemplar::tactics
