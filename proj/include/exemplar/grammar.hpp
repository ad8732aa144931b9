#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "exemplar/tactic_expr.hpp"

namespace exemplar {

class Registry;

// Grammar nonterminals. Each functional category encodes one tactic type;
// THMS and QUOTS are the comma-separated list bodies.
enum class Category {
  Root,
  Tactic,
  Thm,
  ThmList,
  Quot,
  QuotList,
  ThmTac,
  ThmListTac,
  TacTac,
  ThmTacTac,
  TacTacTac,
  QuotTac,
  QuotThmTacThmTac,
  QuotListThmTacThmTac,
  QuotThmTacTac,
  Token,
  Thms,
  Quots,
};

std::string_view categoryName(Category c);  // "TACTIC", "THM_TAC", ...
std::optional<Category> categoryByName(std::string_view name);
std::optional<TacticType> categoryType(Category c);
std::optional<Category> categoryOf(const TacticType& t);
std::vector<Category> allCategories();

// Levels order TACTIC phrases by binding strength: 0 "\\", 1 THEN,
// 2 ORELSE, 3 by/suffices_by and prefix phrases, 4 application, 5 atoms.
// A symbol with level k accepts phrases of level k or higher.
constexpr int kTopLevel = 0;
constexpr int kPrefixLevel = 3;
constexpr int kApplyLevel = 4;
constexpr int kAtomLevel = 5;

struct Symbol {
  bool terminal = true;
  std::string text;        // terminal spelling, or quotation text
  bool quotation = false;  // quotation terminal, or a TOKEN matching any quotation
  Category cat = Category::Token;
  int level = 0;

  static Symbol word(std::string text) { return Symbol{true, std::move(text), false, Category::Token, 0}; }
  static Symbol quote(std::string text) { return Symbol{true, std::move(text), true, Category::Token, 0}; }
  static Symbol nonterminal(Category c, int level = 0) { return Symbol{false, {}, false, c, level}; }
  static Symbol anyQuotation() { return Symbol{false, {}, true, Category::Token, 0}; }
};

// A semantic value: a tactic expression, or the raw text of a TOKEN.
using SemValue = std::variant<TacticExpr, std::string>;

bool sameValue(const SemValue& a, const SemValue& b);
std::string renderValue(const SemValue& v);

/// Logical form of a rule: a function of the rule's category arguments.
/// Templates are expressions whose holes stand for the arguments; the other
/// kinds are the fixed forms behind lookups, theorem names, quotations and
/// list construction.
class LogicalForm {
 public:
  enum class Kind { Template, Lookup, ThmToken, QuoteToken, ConsThm, ConsQuot };

  static LogicalForm templ(std::vector<Category> params, TacticExpr body);
  static LogicalForm lookup(TacticType type);
  static LogicalForm thmToken();
  static LogicalForm quoteToken();
  // (THM) or (THM, THMS) -> THMS, and likewise for quotations.
  static LogicalForm consThm(bool withTail);
  static LogicalForm consQuot(bool withTail);

  Kind kind() const { return kind_; }
  const std::vector<Category>& params() const { return params_; }
  const TacticExpr& body() const { return body_; }
  const std::optional<TacticType>& lookupType() const { return lookupType_; }

  // Beta-reduces the form applied to argument values. Lookups consult
  // `table`; nothing is returned when a token does not resolve.
  std::optional<SemValue> apply(const std::vector<SemValue>& args,
                                const std::map<std::string, TacticType>& table) const;
  std::string str() const;

 private:
  Kind kind_ = Kind::Template;
  std::vector<Category> params_;
  TacticExpr body_;
  std::optional<TacticType> lookupType_;
};

enum class RuleSource { Core, Induced, Custom, Library };

struct GrammarRule {
  Category lhs = Category::Tactic;
  int level = kAtomLevel;
  std::vector<Symbol> rhs;
  LogicalForm lf;
  RuleSource source = RuleSource::Core;
  std::string library;  // for RuleSource::Library

  std::string str() const;  // one dump line
};

/// Immutable grammar snapshot. Extending yields a new snapshot with a fresh
/// version; existing snapshots never change.
class Grammar {
 public:
  Grammar();

  const std::vector<GrammarRule>& rules() const { return state_->rules; }
  // Names resolvable by the TOKEN lookup rules, with their types.
  const std::map<std::string, TacticType>& lookupTable() const { return state_->lookup; }
  std::uint64_t version() const { return state_->version; }

  // Throws Errc::MalformedRule.
  Grammar addRule(GrammarRule rule) const;
  Grammar withLookupTable(std::map<std::string, TacticType> table) const;

  std::string dump() const;

 private:
  struct State {
    std::vector<GrammarRule> rules;
    std::map<std::string, TacticType> lookup;
    std::uint64_t version = 0;
  };
  explicit Grammar(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;
};

void validateRule(const GrammarRule& rule);

// Words that the core grammar uses as operators; they never denote theorems.
bool isReservedWord(std::string_view word);

Grammar coreGrammar(const Registry& registry);

}  // namespace exemplar
