#include "exemplar/tactic.hpp"

#include <algorithm>
#include <atomic>

#include "exemplar/derived.hpp"
#include "exemplar/error.hpp"

namespace exemplar {

namespace {
std::atomic<Validation> gValidation{Validation::Lazy};
constexpr int kRepeatLimit = 1000;
}  // namespace

void setValidation(Validation mode) { gValidation = mode; }
Validation validation() { return gValidation; }

void tacticFails(const std::string& reason) { fail(Errc::TacticFails, reason); }

bool alphaEqualGoals(const Goal& a, const Goal& b) {
  if (!alphaEqual(a.concl, b.concl) || a.asl.size() != b.asl.size()) return false;
  for (std::size_t i = 0; i < a.asl.size(); ++i)
    if (!alphaEqual(a.asl[i], b.asl[i])) return false;
  return true;
}

std::string render(const Goal& g) {
  std::string out;
  for (std::size_t i = 0; i < g.asl.size(); ++i)
    out += "  " + std::to_string(i) + ".  " + render(g.asl[i]) + "\n";
  if (!g.asl.empty()) out += "  ------------------------------------\n";
  out += "  " + render(g.concl);
  return out;
}

std::vector<std::string> goalVarNames(const Goal& g) {
  std::vector<std::string> out;
  auto add = [&](const Term& t) {
    for (const Term& v : freeVars(t))
      if (std::find(out.begin(), out.end(), v.name()) == out.end()) out.push_back(v.name());
  };
  for (const Term& a : g.asl) add(a);
  add(g.concl);
  return out;
}

bool achieves(const Thm& th, const Goal& g) {
  if (!alphaEqual(th.concl(), g.concl)) return false;
  return std::all_of(th.hyps().begin(), th.hyps().end(),
                     [&](const Term& h) { return hypsContain(g.asl, h); });
}

namespace {

// ASSUME of !xs. a1 ==> ... ==> c, specialised and discharged back to the
// subgoal's sequent. Its extra hypothesis is the quantified implication.
std::pair<Thm, Term> placeholder(const Goal& parent, const Goal& sub) {
  Term body = sub.concl;
  for (auto it = sub.asl.rbegin(); it != sub.asl.rend(); ++it) body = Term::imp(*it, body);
  std::vector<Term> bound;
  for (const Term& v : freeVars(body)) {
    if (v.sort() != Sort::Nat) continue;
    const bool inParent =
        std::any_of(parent.asl.begin(), parent.asl.end(), [&](const Term& a) { return occursFree(v, a); });
    if (!inParent) bound.push_back(v);
  }
  Term closed = body;
  for (auto it = bound.rbegin(); it != bound.rend(); ++it) closed = Term::forall(it->name(), closed);
  Thm th = derived::specl(bound, derived::assume(closed));
  for (const Term& a : sub.asl) th = derived::mp(th, derived::assume(a));
  return {th, closed};
}

}  // namespace

void checkValidity(const Goal& g, const TacticResult& r) {
  std::vector<Thm> fakes;
  std::vector<Term> extra;
  for (const Goal& sub : r.subgoals) {
    auto [th, hyp] = placeholder(g, sub);
    fakes.push_back(th);
    extra.push_back(hyp);
  }
  Thm result = [&] {
    try {
      return r.just(fakes);
    } catch (const Error& e) {
      fail(Errc::JustificationInvalid, std::string("justification failed: ") + e.what());
    }
  }();
  if (!alphaEqual(result.concl(), g.concl))
    fail(Errc::JustificationInvalid, "justification proves " + render(result.concl()) + " instead of " +
                                         render(g.concl));
  for (const Term& h : result.hyps())
    if (!hypsContain(g.asl, h) && !hypsContain(extra, h))
      fail(Errc::JustificationInvalid, "justification depends on " + render(h));
}

TacticResult applyTactic(const Tactic& t, const Goal& g) {
  TacticResult r = t(g);
  if (validation() == Validation::Eager) checkValidity(g, r);
  return r;
}

namespace tacticals {

TacticResult closed(Thm th) {
  return {{}, [th = std::move(th)](const std::vector<Thm>&) { return th; }};
}

Tactic allTac() {
  return [](const Goal& g) -> TacticResult {
    return {{g}, [](const std::vector<Thm>& ths) { return ths.at(0); }};
  };
}

Tactic noTac() {
  return [](const Goal&) -> TacticResult { tacticFails("NO_TAC"); };
}

namespace {

// Applies `per(i)` to each subgoal i of `first` and stitches the justifications.
template <class F>
TacticResult spread(const TacticResult& first, F per) {
  std::vector<Goal> subgoals;
  std::vector<std::pair<std::size_t, Justification>> parts;  // subgoal count, justification
  for (std::size_t i = 0; i < first.subgoals.size(); ++i) {
    TacticResult r = per(i, first.subgoals[i]);
    parts.emplace_back(r.subgoals.size(), r.just);
    for (Goal& s : r.subgoals) subgoals.push_back(std::move(s));
  }
  Justification outer = first.just;
  return {std::move(subgoals), [outer, parts](const std::vector<Thm>& ths) {
            std::vector<Thm> mid;
            std::size_t k = 0;
            for (const auto& [n, j] : parts) {
              std::vector<Thm> slice(ths.begin() + static_cast<std::ptrdiff_t>(k),
                                     ths.begin() + static_cast<std::ptrdiff_t>(k + n));
              mid.push_back(j(slice));
              k += n;
            }
            return outer(mid);
          }};
}

TacticResult identity(const Goal& g) { return allTac()(g); }

}  // namespace

Tactic then(Tactic a, Tactic b) {
  return [a, b](const Goal& g) {
    TacticResult first = a(g);
    return spread(first, [&](std::size_t, const Goal& s) { return b(s); });
  };
}

Tactic orelse(Tactic a, Tactic b) {
  return [a, b](const Goal& g) {
    try {
      return a(g);
    } catch (const Error& e) {
      if (e.code() != Errc::TacticFails && e.code() != Errc::Syntax && e.code() != Errc::Sort &&
          e.code() != Errc::RuleMismatch)
        throw;
      return b(g);
    }
  };
}

Tactic thenFirst(Tactic a, Tactic b) {
  return [a, b](const Goal& g) {
    TacticResult first = a(g);
    if (first.subgoals.empty()) tacticFails("no subgoal left for the next tactic");
    return spread(first, [&](std::size_t i, const Goal& s) { return i == 0 ? b(s) : identity(s); });
  };
}

Tactic then1(Tactic a, Tactic b) {
  return thenFirst(std::move(a), solves(std::move(b), "THEN1"));
}

Tactic tryTac(Tactic t) { return orelse(std::move(t), allTac()); }

namespace {

bool unchanged(const Goal& a, const Goal& b) {
  if (a.asl.size() != b.asl.size() || !alphaEqual(a.concl, b.concl)) return false;
  for (std::size_t i = 0; i < a.asl.size(); ++i)
    if (!alphaEqual(a.asl[i], b.asl[i])) return false;
  return true;
}

TacticResult repeatFrom(const Tactic& t, const Goal& g, int& budget) {
  if (budget <= 0) return identity(g);
  TacticResult r;
  try {
    --budget;
    r = t(g);
  } catch (const Error& e) {
    if (e.code() != Errc::TacticFails) throw;
    return identity(g);
  }
  if (r.subgoals.size() == 1 && unchanged(g, r.subgoals[0])) return identity(g);
  return spread(r, [&](std::size_t, const Goal& s) { return repeatFrom(t, s, budget); });
}

}  // namespace

Tactic repeat(Tactic t) {
  return [t](const Goal& g) {
    int budget = kRepeatLimit;
    return repeatFrom(t, g, budget);
  };
}

Tactic solves(Tactic t, std::string what) {
  return [t, what](const Goal& g) {
    TacticResult r = t(g);
    if (!r.subgoals.empty())
      tacticFails(what + " left " + std::to_string(r.subgoals.size()) + " subgoal(s) open");
    return r;
  };
}

}  // namespace tacticals

}  // namespace exemplar
