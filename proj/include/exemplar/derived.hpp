#pragma once

#include <string>
#include <vector>

#include "exemplar/kernel.hpp"

// Derived inference rules: compositions of kernel rules, never new axioms.
namespace exemplar::derived {

Thm assume(const Term& t);
Thm refl(const Term& t);
Thm sym(const Thm& th);
Thm trans(const Thm& a, const Thm& b);
Thm mp(const Thm& imp, const Thm& ante);
Thm disch(const Term& h, const Thm& th);
Thm truth();

// |- p <=> q and |- p gives |- q.
Thm eqMp(const Thm& eq, const Thm& th);
// Discharges hypothesis `h` of `th` using `hThm`, a proof of h.
Thm proveHyp(const Thm& th, const Term& h, const Thm& hThm);

Thm eqtIntro(const Thm& th);   // |- p        =>  |- p <=> T
Thm eqtElim(const Thm& th);    // |- p <=> T  =>  |- p
Thm eqfIntro(const Thm& th);   // |- ~p       =>  |- p <=> F
Thm eqfElim(const Thm& th);    // |- p <=> F  =>  |- ~p
Thm contr(const Term& t, const Thm& falseThm);

Thm spec(const Term& t, const Thm& th);
Thm specl(const std::vector<Term>& ts, const Thm& th);
// Strips all outer universal quantifiers using variables fresh for `avoid`
// and the theorem's hypotheses.
Thm specAll(const Thm& th, const std::vector<std::string>& avoid = {});
Thm gen(const Term& var, const Thm& th);
// Quantifies the conclusion over its free variables that no hypothesis mentions.
Thm genAll(const Thm& th);

std::vector<Thm> conjuncts(const Thm& th);
Thm conj(const Thm& a, const Thm& b);
Thm inst(const Substitution& sigma, const Thm& th);

Thm taut(const Term& t);
Thm ring(const Term& lhs, const Term& rhs);

// |- l <= r or |- l < r with a polynomial witness, if the normal forms allow.
std::optional<Thm> proveLe(const Term& lhs, const Term& rhs);
std::optional<Thm> proveLt(const Term& lhs, const Term& rhs);

// Names free in the theorem (hypotheses and conclusion).
std::vector<std::string> thmVarNames(const Thm& th);

}  // namespace exemplar::derived
