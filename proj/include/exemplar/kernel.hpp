#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exemplar/term.hpp"

namespace exemplar {

// Inference rules of the trusted kernel. Classical first-order logic over
// Peano naturals; the three decision rules at the end (Taut, NatRing,
// NatEval) are total, terminating checks the kernel performs itself.
enum class Rule {
  Assume,        // args [t]            : {t} |- t
  ImpIntro,      // args [t], [A |- c]  : A - t |- t ==> c
  ImpElim,       // [A |- p ==> q, B |- p]
  ConjIntro,     // [A |- p, B |- q]
  ConjElimL,     // [A |- p /\ q]
  ConjElimR,
  DisjIntroL,    // args [q], [A |- p]  : A |- p \/ q
  DisjIntroR,    // args [p], [A |- q]  : A |- p \/ q
  DisjCases,     // [A |- p \/ q, B |- r, C |- r] : A u (B - p) u (C - q) |- r
  NotIntro,      // [A |- p ==> F]
  NotElim,       // [A |- ~p]           : A |- p ==> F
  Contradiction, // args [t], [A |- F]
  CaseBool,      // args [t]            : |- t \/ ~t
  Truth,         //                     : |- T
  IffIntro,      // [A |- p ==> q, B |- q ==> p]
  IffElimL,      // [A |- p <=> q]      : A |- p ==> q
  IffElimR,      // [A |- p <=> q]      : A |- q ==> p
  Refl,          // args [t]            : |- t = t  (or <=> at sort bool)
  Symm,          // [A |- a = b]
  Trans,         // [A |- a = b, B |- b = c]
  Congruence,    // args [t], one premise a_i = b_i per child of t
  Subst,         // args [P, x], [A |- l = r, B |- P[l/x]] : A u B |- P[r/x]
  ForallIntro,   // args [x], [A |- P]  (x not free in A)
  ForallElim,    // args [t], [A |- !x. P]
  ExistsIntro,   // args [?x. P, t], [A |- P[t/x]]
  ExistsElim,    // args [v], [A |- ?x. P, B |- Q]  (B may assume P[v/x])
  NatInduction,  // [A |- P[0], B |- !x. P ==> P[SUC x]]
  Inst,          // args [v1, t1, v2, t2, ...], [A |- p]
  SucInj,
  SucNonzero,
  AddZero,
  AddSuc,
  MulZero,
  MulSuc,
  SumZero,
  SumSuc,
  LeDef,
  LtDef,
  Taut,          // args [t]: t is a propositional tautology
  NatRing,       // args [l, r]: l and r have the same semiring normal form
  NatEval,       // args [a]: a ground comparison; |- a <=> T or |- a <=> F
  StoreAxiom,    // bundled lemma, admitted by the theorem store only
};

std::string_view ruleName(Rule rule);

class Thm;

// Certificate: the rule, its premises and its arguments. Replaying it through
// `infer` must reproduce the theorem.
struct Certificate {
  Rule rule;
  std::vector<Thm> premises;
  std::vector<Term> args;
  std::string label;  // theorem name for StoreAxiom
};

/// A sequent certified by the kernel. There is no public constructor: values
/// come from `infer` or from the theorem store.
class Thm {
 public:
  const std::vector<Term>& hyps() const { return hyps_; }
  const Term& concl() const { return concl_; }
  const Certificate& certificate() const { return *certificate_; }
  const void* identity() const { return certificate_.get(); }

 private:
  friend class Kernel;
  Thm(std::vector<Term> hyps, Term concl, std::shared_ptr<const Certificate> derivation);

  std::vector<Term> hyps_;  // sorted by compareTerms, no alpha-duplicates
  Term concl_;
  std::shared_ptr<const Certificate> certificate_;
};

class TheoremStore;

class Kernel {
 public:
  // Throws Errc::RuleMismatch if the premises or arguments do not fit.
  static Thm infer(Rule rule, std::span<const Thm> premises = {}, std::span<const Term> args = {});

 private:
  friend class TheoremStore;
  friend Thm replay(const Thm& thm);
  static Thm admit(const std::string& name, const Term& formula);
};

inline Thm infer(Rule rule, std::span<const Thm> premises = {}, std::span<const Term> args = {}) {
  return Kernel::infer(rule, premises, args);
}

// Re-runs the whole derivation of `thm` through the kernel and returns the
// rebuilt theorem. Throws if any step no longer checks.
Thm replay(const Thm& thm);
bool replayMatches(const Thm& thm);

bool sameSequent(const Thm& a, const Thm& b);
bool hypsContain(const std::vector<Term>& hyps, const Term& t);
std::string render(const Thm& thm);

}  // namespace exemplar
