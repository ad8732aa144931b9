#pragma once

#include <random>
#include <string>
#include <vector>

#include "exemplar/registry.hpp"

namespace testgen {

using namespace exemplar;

// Random well-typed tactic expressions over the names of a registry.
class ExprGen {
 public:
  ExprGen(const Registry& reg, unsigned seed) : reg_(reg), rng_(seed) {}

  TacticExpr tactic(int depth) {
    const int pick = depth <= 0 ? 0 : pickInt(0, 9);
    switch (pick) {
      case 0:
      case 1: return lookup(types::TAC());
      case 2: return TacticExpr::apply(lookup(types::THMLIST_TAC()), thmList(depth - 1));
      case 3: return TacticExpr::apply(lookup(types::THM_TAC()), thm(depth - 1));
      case 4: return TacticExpr::apply(lookup(types::TAC_TAC()), tactic(depth - 1));
      case 5: return TacticExpr::apply(lookup(types::QUOT_TAC()), quot());
      case 6: return TacticExpr::apply(lookup(types::THMTAC_TAC()), thmTactic(depth - 1));
      case 7: {
        static const InfixOp ops[] = {InfixOp::Then, InfixOp::Orelse, InfixOp::ThenLt};
        return TacticExpr::infix(ops[pickInt(0, 2)], tactic(depth - 1), tactic(depth - 1));
      }
      case 8:
        return TacticExpr::infix(pickInt(0, 1) ? InfixOp::By : InfixOp::SufficesBy, quot(), tactic(depth - 1));
      default:
        return TacticExpr::apply(TacticExpr::apply(lookup(types::TAC_TAC_TAC()), tactic(depth - 1)), tactic(depth - 1));
    }
  }

  TacticExpr thmTactic(int depth) {
    const int pick = depth <= 0 ? 0 : pickInt(0, 3);
    switch (pick) {
      case 0:
      case 1: return lookup(types::THM_TAC());
      case 2:
        return TacticExpr::apply(TacticExpr::apply(lookup(types::QUOT_THMTAC_THM_TAC()), quot()), thmTactic(depth - 1));
      default:
        return TacticExpr::apply(TacticExpr::apply(lookup(types::QUOTLIST_THMTAC_THM_TAC()), quotList()),
                                 thmTactic(depth - 1));
    }
  }

  TacticExpr thm(int depth) {
    if (depth > 0 && pickInt(0, 4) == 0) return TacticExpr::gsym(thm(depth - 1));
    static const char* names[] = {"ADD_COMM", "ADD_ASSOC", "LE_LT", "MULT_CLAUSES", "sum_def", "NOT_LESS"};
    return TacticExpr::thmRef(names[pickInt(0, 5)]);
  }

  TacticExpr thmList(int depth) {
    std::vector<TacticExpr> items;
    const int n = pickInt(0, 3);
    for (int i = 0; i < n; ++i) items.push_back(thm(depth));
    return TacticExpr::thmList(items);
  }

  TacticExpr quot() {
    static const char* texts[] = {"n", "x + 1 = SUC x", "p /\\ q", "!n. n + 0 = n", "m <= n"};
    return TacticExpr::quot(texts[pickInt(0, 4)]);
  }

  TacticExpr quotList() {
    std::vector<std::string> texts;
    const int n = pickInt(0, 2);
    for (int i = 0; i < n; ++i) texts.push_back(quot().name());
    return TacticExpr::quotList(texts);
  }

  TacticExpr lookup(const TacticType& type) {
    const auto names = reg_.namesOfType(type);
    return TacticExpr::lookup(names.at(static_cast<std::size_t>(pickInt(0, static_cast<int>(names.size()) - 1))), type);
  }

  int pickInt(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937& rng() { return rng_; }

 private:
  const Registry& reg_;
  std::mt19937 rng_;
};

}  // namespace testgen
