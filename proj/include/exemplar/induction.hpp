#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "exemplar/grammar.hpp"
#include "exemplar/registry.hpp"

namespace exemplar {

struct DefResult {
  // Both empty when the utterance already meant the definition.
  std::optional<GrammarRule> literalRule;
  std::optional<GrammarRule> generalizedRule;
  Grammar grammar;

  int rulesAdded() const { return (literalRule ? 1 : 0) + (generalizedRule ? 1 : 0); }
};

struct DefOptions {
  RuleSource source = RuleSource::Induced;
  std::string library;
};

/// Teaches `utterance` to mean `definition`. Adds a literal rule for the
/// utterance and, when parts of it correspond to arguments of the
/// definition, a rule abstracted over those parts.
///
/// Errors: DefinitionUnparsable, DefinitionAmbiguous, AlreadyDefined,
/// WouldBeAmbiguous. On error no grammar is produced.
DefResult def(const Grammar& g, std::string_view utterance, std::string_view definition, const DefOptions& options = {});

enum class CustomKind { Tactic, ThmTactic, ThmListTactic };

std::string_view customKindName(CustomKind k);  // "tactic", "thm_tactic", "thmlist_tactic"
std::optional<CustomKind> customKindByName(std::string_view name);
const TacticType& customKindType(CustomKind k);

struct CustomResult {
  Grammar grammar;
  Registry registry;
};

// Registers `name` as a terminal of the kind's category. Without an
// implementation the entry is OPAQUE. Throws Errc::DuplicateCustom.
CustomResult addCustom(const Grammar& g, const Registry& registry, const std::string& name, CustomKind kind,
                       std::optional<TacticValue> impl, const DefOptions& options = {RuleSource::Custom, {}});

}  // namespace exemplar
