#pragma once

#include <functional>
#include <string>
#include <vector>

#include "exemplar/kernel.hpp"

namespace exemplar {

struct Goal {
  std::vector<Term> asl;  // oldest first
  Term concl;
};

bool alphaEqualGoals(const Goal& a, const Goal& b);
std::string render(const Goal& g);
std::vector<std::string> goalVarNames(const Goal& g);

using Justification = std::function<Thm(const std::vector<Thm>&)>;

struct TacticResult {
  std::vector<Goal> subgoals;
  Justification just;
};

using Tactic = std::function<TacticResult(const Goal&)>;

// Throws Errc::TacticFails.
[[noreturn]] void tacticFails(const std::string& reason);

// A theorem achieves a goal when its conclusion is alpha-equal to the goal's
// and its hypotheses are among the goal's assumptions.
bool achieves(const Thm& th, const Goal& g);

// Feeds placeholder theorems for the subgoals to the justification and checks
// that the result achieves `g`. Throws Errc::JustificationInvalid otherwise.
void checkValidity(const Goal& g, const TacticResult& r);

enum class Validation { Eager, Lazy };
// Eager checking runs checkValidity after every application.
void setValidation(Validation mode);
Validation validation();

TacticResult applyTactic(const Tactic& t, const Goal& g);

namespace tacticals {
TacticResult closed(Thm th);
Tactic allTac();
Tactic noTac();
Tactic then(Tactic a, Tactic b);
Tactic orelse(Tactic a, Tactic b);
// Applies b to the first subgoal of a only.
Tactic thenFirst(Tactic a, Tactic b);
// Like thenFirst but b must solve the first subgoal.
Tactic then1(Tactic a, Tactic b);
Tactic tryTac(Tactic t);
Tactic repeat(Tactic t);
// Fails unless t closes the goal.
Tactic solves(Tactic t, std::string what);
}  // namespace tacticals

}  // namespace exemplar
