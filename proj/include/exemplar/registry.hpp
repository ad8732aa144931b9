#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "exemplar/tactic.hpp"
#include "exemplar/tactic_expr.hpp"
#include "exemplar/tactics.hpp"

namespace exemplar {

class TheoremStore;
struct TacticValue;

using TacticFn = std::function<TacticValue(const TacticValue&)>;

/// The evaluated form of a TacticExpr. Functional types are curried.
struct TacticValue {
  std::variant<Tactic, Thm, std::vector<Thm>, std::string, std::vector<std::string>, TacticFn> v;

  TacticValue(Tactic t) : v(std::move(t)) {}
  TacticValue(Thm th) : v(std::move(th)) {}
  TacticValue(std::vector<Thm> ths) : v(std::move(ths)) {}
  TacticValue(std::string quot) : v(std::move(quot)) {}
  TacticValue(std::vector<std::string> quots) : v(std::move(quots)) {}
  TacticValue(TacticFn fn) : v(std::move(fn)) {}

  const Tactic& tactic() const;
  const Thm& thm() const;
  const std::vector<Thm>& thms() const;
  const std::string& quot() const;
  const std::vector<std::string>& quots() const;
  const TacticFn& fn() const;
  ThmTactic thmTactic() const;
  TacticValue operator()(const TacticValue& arg) const { return fn()(arg); }
};

struct RegistryEntry {
  std::string name;
  TacticType type;
  std::optional<TacticValue> impl;  // empty for OPAQUE entries
};

class Registry {
 public:
  // Throws Errc::DuplicateCustom when the name is taken.
  void add(const std::string& name, const TacticType& type, std::optional<TacticValue> impl);
  const RegistryEntry* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  // Registration order.
  const std::vector<RegistryEntry>& entries() const { return entries_; }
  std::vector<std::string> namesOfType(const TacticType& type) const;

 private:
  std::vector<RegistryEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

Registry builtinRegistry(const TheoremStore& store);

// Implementations known for custom declarations that only carry a name, such
// as NAT_ASM_ARITH_TAC. Unknown names yield nothing and register as OPAQUE.
std::optional<TacticValue> knownCustom(const std::string& name, const TacticType& type, const TheoremStore& store);

// Reverses every equation in a theorem's conclusion, under quantifiers,
// conjunctions and implication consequents.
Thm gsymThm(const Thm& th);

TacticValue evalTacticExpr(const TacticExpr& expr, const Registry& registry, const TheoremStore& store);

}  // namespace exemplar
