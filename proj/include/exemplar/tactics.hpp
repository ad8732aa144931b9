#pragma once

#include <memory>
#include <string>
#include <vector>

#include "exemplar/simp.hpp"
#include "exemplar/tactic.hpp"

namespace exemplar {

using ThmTactic = std::function<Tactic(const Thm&)>;

namespace tactics {

Tactic genTac();
Tactic stripTac();
Tactic conjTac();
Tactic disj1Tac();
Tactic disj2Tac();
Tactic eqTac();
Tactic ccontrTac();

// Adds `p` as an assumption, splitting conjunctions, disjunctions (one
// subgoal per case) and existentials; F closes the goal.
Tactic stripAssume(const Term& p, const std::vector<Term>& pending = {});
Tactic stripAssumeTac(const Thm& th);

struct SimpOptions {
  bool useAssumptions = true;
  bool simplifyAssumptions = true;
};
Tactic simplify(std::shared_ptr<const SimpSet> base, std::vector<Thm> thms, SimpOptions options);
Tactic fs(std::shared_ptr<const SimpSet> base, std::vector<Thm> thms);
Tactic rw(std::shared_ptr<const SimpSet> base, std::vector<Thm> thms);
Tactic simp(std::shared_ptr<const SimpSet> base, std::vector<Thm> thms);
Tactic rewriteTac(std::vector<Thm> thms);

Tactic assumeTac(const Thm& th);
Tactic mpTac(const Thm& th);
Tactic irule(const Thm& th);
Tactic impResTac(const Thm& th);

Tactic firstXAssum(ThmTactic ttac);
Tactic popAssum(ThmTactic ttac);
Tactic qpatXAssum(const std::string& pattern, ThmTactic ttac);
Tactic qspecThen(const std::string& quot, ThmTactic ttac, const Thm& th);
Tactic qspeclThen(const std::vector<std::string>& quots, ThmTactic ttac, const Thm& th);

Tactic inductOn(const std::string& quot);
Tactic casesOn(const std::string& quot);
Tactic qexistsTac(const std::string& quot);

Tactic by(const std::string& quot, Tactic tac);
Tactic sufficesBy(const std::string& quot, Tactic tac);

// Closes arithmetic goals over the naturals or fails.
Tactic decideTac(std::shared_ptr<const SimpSet> base);

constexpr int kMetisDepth = 8;
Tactic metisTac(std::shared_ptr<const SimpSet> base, std::vector<Thm> thms, int depth = kMetisDepth);

}  // namespace tactics

}  // namespace exemplar
