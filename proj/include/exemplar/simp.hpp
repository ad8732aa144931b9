#pragma once

#include <optional>
#include <vector>

#include "exemplar/kernel.hpp"

namespace exemplar {

class TheoremStore;

// One oriented rewrite `lhs -> rhs`, possibly guarded by a condition that the
// simplifier must reduce to T before the rule fires.
struct RewriteRule {
  enum class Form { Equation, ToTrue, ToFalse };
  Thm th;        // |- lhs = rhs in the given form, or |- cond ==> body
  Term cond;     // empty when unconditional
  Term lhs;
  Term rhs;
  Form form = Form::Equation;
  std::vector<Term> fixed;  // variables that may not be instantiated
  bool permutative = false;
};

// Turns a theorem into rewrite rules: conjunctions split, negations become
// `p <=> F`, other facts `p <=> T`, implications conditional rules.
std::vector<RewriteRule> rewriteRules(const Thm& th);

struct SimpSet {
  std::vector<RewriteRule> rules;
  bool arithmetic = true;  // ground folding, ring and order decisions
  bool propositional = true;
  // Order lemmas used to refute impossible comparisons; absent disables that.
  std::optional<Thm> lessRefl, notLess, notLessEqual;

  void add(const Thm& th);
  void add(const std::vector<Thm>& ths);
};

// The rules every simplification call starts from.
SimpSet basicSimpSet(const TheoremStore& store);
// Only the propositional clean-up, for rewrite_tac.
SimpSet pureSimpSet();

constexpr int kRewriteBudget = 1000;

/// Bottom-up rewriting to a fixpoint. Returns |- t = t' (or <=>), or nothing
/// if no rule applied. Exceeding the rewrite budget is Errc::TacticFails.
class Simplifier {
 public:
  explicit Simplifier(const SimpSet& set, int budget = kRewriteBudget) : set_(set), budget_(budget) {}

  std::optional<Thm> run(const Term& t);
  // Simplifies a theorem's conclusion.
  Thm simplifyThm(const Thm& th);

 private:
  std::optional<Thm> children(const Term& t);
  std::optional<Thm> top(const Term& t);
  std::optional<Thm> tryRule(const RewriteRule& rule, const Term& t);
  std::optional<Thm> builtin(const Term& t);
  void spend();
  Thm instantiate(const Thm& th, const std::vector<Term>& values) const;
  std::optional<Thm> refuteEq(const Term& l, const Term& r) const;

  const SimpSet& set_;
  int budget_;
  int condDepth_ = 0;
};

// |- t <=> t' for a single propositional clean-up step at the root, if any.
std::optional<Thm> propositionalStep(const Term& t);

}  // namespace exemplar
