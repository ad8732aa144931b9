#include "exemplar/grammar.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "exemplar/error.hpp"
#include "exemplar/registry.hpp"

namespace exemplar {

namespace {

struct CategoryInfo {
  Category cat;
  const char* name;
  const char* signature;  // empty when the category has no tactic type
};

constexpr CategoryInfo kCategories[] = {
    {Category::Root, "ROOT", "TAC"},
    {Category::Tactic, "TACTIC", "TAC"},
    {Category::Thm, "THM", "THM"},
    {Category::ThmList, "THMLIST", "THMLIST"},
    {Category::Quot, "QUOT", "QUOT"},
    {Category::QuotList, "QUOTLIST", "QUOTLIST"},
    {Category::ThmTac, "THM_TAC", "THM_TAC"},
    {Category::ThmListTac, "THMLIST_TAC", "THMLIST_TAC"},
    {Category::TacTac, "TAC_TAC", "TAC_TAC"},
    {Category::ThmTacTac, "THMTAC_TAC", "THMTAC_TAC"},
    {Category::TacTacTac, "TAC_TAC_TAC", "TAC_TAC_TAC"},
    {Category::QuotTac, "QUOT_TAC", "QUOT_TAC"},
    {Category::QuotThmTacThmTac, "QUOT_THMTAC_THM_TAC", "QUOT_THMTAC_THM_TAC"},
    {Category::QuotListThmTacThmTac, "QUOTLIST_THMTAC_THM_TAC", "QUOTLIST_THMTAC_THM_TAC"},
    {Category::QuotThmTacTac, "QUOT_THMTAC_TAC", "QUOT_THMTAC_TAC"},
    {Category::Token, "TOKEN", ""},
    {Category::Thms, "THMS", "THMLIST"},
    {Category::Quots, "QUOTS", "QUOTLIST"},
};

const CategoryInfo& info(Category c) {
  for (const auto& i : kCategories)
    if (i.cat == c) return i;
  fail(Errc::MalformedRule, "unknown category");
}

std::atomic<std::uint64_t> nextVersion{1};

[[noreturn]] void malformed(const GrammarRule& r, const std::string& why) {
  fail(Errc::MalformedRule, "malformed rule '" + r.str() + "': " + why);
}

bool leveled(Category c) {
  if (c == Category::Tactic) return true;
  auto t = categoryType(c);
  return t && t->isArrow();
}

std::string symbolText(const Symbol& s) {
  if (s.terminal) return s.quotation ? "'" + s.text + "'" : s.text;
  if (s.cat == Category::Token) return s.quotation ? "QUOTATION" : "TOKEN";
  std::string out(categoryName(s.cat));
  if (leveled(s.cat) && s.level > 0) out += "@" + std::to_string(s.level);
  return out;
}

std::vector<std::string> paramNames(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

}  // namespace

std::string_view categoryName(Category c) { return info(c).name; }

std::optional<Category> categoryByName(std::string_view name) {
  for (const auto& i : kCategories)
    if (name == i.name) return i.cat;
  return std::nullopt;
}

std::optional<TacticType> categoryType(Category c) {
  const char* sig = info(c).signature;
  if (!*sig) return std::nullopt;
  return signatureByName(sig);
}

std::optional<Category> categoryOf(const TacticType& t) {
  const std::string sig = signatureName(t);
  if (sig.empty()) return std::nullopt;
  if (sig == "TAC") return Category::Tactic;
  return categoryByName(sig);
}

std::vector<Category> allCategories() {
  std::vector<Category> out;
  for (const auto& i : kCategories) out.push_back(i.cat);
  return out;
}

bool sameValue(const SemValue& a, const SemValue& b) {
  if (a.index() != b.index()) return false;
  if (a.index() == 0) return std::get<0>(a) == std::get<0>(b);
  return std::get<1>(a) == std::get<1>(b);
}

std::string renderValue(const SemValue& v) {
  if (const auto* e = std::get_if<TacticExpr>(&v)) return renderExpr(*e);
  return std::get<std::string>(v);
}

LogicalForm LogicalForm::templ(std::vector<Category> params, TacticExpr body) {
  LogicalForm lf;
  lf.kind_ = Kind::Template;
  lf.params_ = std::move(params);
  lf.body_ = std::move(body);
  return lf;
}

LogicalForm LogicalForm::lookup(TacticType type) {
  LogicalForm lf;
  lf.kind_ = Kind::Lookup;
  lf.params_ = {Category::Token};
  lf.lookupType_ = std::move(type);
  return lf;
}

LogicalForm LogicalForm::thmToken() {
  LogicalForm lf;
  lf.kind_ = Kind::ThmToken;
  lf.params_ = {Category::Token};
  return lf;
}

LogicalForm LogicalForm::quoteToken() {
  LogicalForm lf;
  lf.kind_ = Kind::QuoteToken;
  lf.params_ = {Category::Token};
  return lf;
}

LogicalForm LogicalForm::consThm(bool withTail) {
  LogicalForm lf;
  lf.kind_ = Kind::ConsThm;
  lf.params_ = {Category::Thm};
  if (withTail) lf.params_.push_back(Category::Thms);
  return lf;
}

LogicalForm LogicalForm::consQuot(bool withTail) {
  LogicalForm lf;
  lf.kind_ = Kind::ConsQuot;
  lf.params_ = {Category::Quot};
  if (withTail) lf.params_.push_back(Category::Quots);
  return lf;
}

std::optional<SemValue> LogicalForm::apply(const std::vector<SemValue>& args,
                                           const std::map<std::string, TacticType>& table) const {
  if (args.size() != params_.size()) fail(Errc::TypeMismatch, "logical form applied to the wrong number of arguments");
  auto expr = [&](std::size_t i) -> const TacticExpr& {
    const auto* e = std::get_if<TacticExpr>(&args[i]);
    if (!e) fail(Errc::TypeMismatch, "logical form expected an expression argument");
    return *e;
  };
  auto token = [&](std::size_t i) -> const std::string& {
    const auto* s = std::get_if<std::string>(&args[i]);
    if (!s) fail(Errc::TypeMismatch, "logical form expected a token argument");
    return *s;
  };
  switch (kind_) {
    case Kind::Template: {
      std::vector<TacticExpr> values;
      for (std::size_t i = 0; i < args.size(); ++i) values.push_back(expr(i));
      return SemValue(fillHoles(body_, values));
    }
    case Kind::Lookup: {
      auto it = table.find(token(0));
      if (it == table.end() || !(it->second == *lookupType_)) return std::nullopt;
      return SemValue(TacticExpr::lookup(it->first, it->second));
    }
    case Kind::ThmToken:
      if (isReservedWord(token(0))) return std::nullopt;
      return SemValue(TacticExpr::thmRef(token(0)));
    case Kind::QuoteToken: return SemValue(TacticExpr::quot(token(0)));
    case Kind::ConsThm: {
      std::vector<TacticExpr> items{expr(0)};
      if (args.size() == 2)
        for (const TacticExpr& c : expr(1).children()) items.push_back(c);
      return SemValue(TacticExpr::thmList(std::move(items)));
    }
    case Kind::ConsQuot: {
      std::vector<std::string> texts{expr(0).name()};
      if (args.size() == 2)
        for (const std::string& t : expr(1).texts()) texts.push_back(t);
      return SemValue(TacticExpr::quotList(std::move(texts)));
    }
  }
  return std::nullopt;
}

std::string LogicalForm::str() const {
  switch (kind_) {
    case Kind::Template: {
      const auto names = paramNames(params_.size());
      std::string out;
      if (!names.empty()) {
        out = "\\";
        for (std::size_t i = 0; i < names.size(); ++i) out += (i ? " " : "") + names[i];
        out += ". ";
      }
      return out + renderExpr(body_, names);
    }
    case Kind::Lookup: return "lookup \"" + lookupType_->str() + "\"";
    case Kind::ThmToken: return "\\x0. x0";
    case Kind::QuoteToken: return "\\x0. ` x0 `";
    case Kind::ConsThm:
    case Kind::ConsQuot: return params_.size() == 2 ? "\\x0 x1. x0 :: x1" : "\\x0. [ x0 ]";
  }
  return "?";
}

std::string GrammarRule::str() const {
  std::string out(categoryName(lhs));
  if (leveled(lhs) && level != kAtomLevel) out += "@" + std::to_string(level);
  out += " ->";
  for (const Symbol& s : rhs) out += " " + symbolText(s);
  out += " :: " + lf.str() + " :: ";
  switch (source) {
    case RuleSource::Core: out += "core"; break;
    case RuleSource::Induced: out += "induced"; break;
    case RuleSource::Custom: out += "custom"; break;
    case RuleSource::Library: out += "library(" + library + ")"; break;
  }
  return out;
}

void validateRule(const GrammarRule& r) {
  if (r.rhs.empty()) malformed(r, "empty right-hand side");
  if (r.level < 0 || r.level > kAtomLevel) malformed(r, "level out of range");
  std::vector<Category> cats;
  for (const Symbol& s : r.rhs) {
    if (s.terminal) {
      if (s.text.empty()) malformed(r, "empty terminal");
      if (!s.quotation && std::any_of(s.text.begin(), s.text.end(), [](unsigned char c) { return std::isspace(c); }))
        malformed(r, "terminal contains whitespace");
    } else {
      if (s.cat == Category::Root) malformed(r, "ROOT on a right-hand side");
      cats.push_back(s.cat);
    }
  }
  const LogicalForm& lf = r.lf;
  if (cats != lf.params()) malformed(r, "logical form parameters do not match the right-hand side");
  auto lhsType = categoryType(r.lhs);
  switch (lf.kind()) {
    case LogicalForm::Kind::Template: {
      if (!lf.body()) malformed(r, "missing body");
      if (!lhsType || !(lf.body().type() == *lhsType)) malformed(r, "body type does not match the left-hand side");
      std::vector<TacticExpr> stack{lf.body()};
      while (!stack.empty()) {
        TacticExpr e = stack.back();
        stack.pop_back();
        if (e.kind() == TacticExpr::Kind::Hole) {
          const auto i = static_cast<std::size_t>(e.holeIndex());
          if (i >= cats.size()) malformed(r, "hole without a matching argument");
          auto t = categoryType(cats[i]);
          if (!t || !(*t == e.type())) malformed(r, "hole type does not match its category");
        }
        for (const TacticExpr& c : e.children()) stack.push_back(c);
      }
      break;
    }
    case LogicalForm::Kind::Lookup:
      if (!lhsType || !(*lhsType == *lf.lookupType())) malformed(r, "lookup type does not match the left-hand side");
      break;
    case LogicalForm::Kind::ThmToken:
      if (r.lhs != Category::Thm) malformed(r, "theorem token outside THM");
      break;
    case LogicalForm::Kind::QuoteToken:
      if (r.lhs != Category::Quot || !r.rhs[0].quotation) malformed(r, "quotation token outside QUOT");
      break;
    case LogicalForm::Kind::ConsThm:
      if (r.lhs != Category::Thms) malformed(r, "theorem list cell outside THMS");
      break;
    case LogicalForm::Kind::ConsQuot:
      if (r.lhs != Category::Quots) malformed(r, "quotation list cell outside QUOTS");
      break;
  }
}

Grammar::Grammar() : state_(std::make_shared<State>()) {}

Grammar Grammar::addRule(GrammarRule rule) const {
  validateRule(rule);
  auto next = std::make_shared<State>(*state_);
  next->rules.push_back(std::move(rule));
  next->version = nextVersion++;
  return Grammar(std::move(next));
}

Grammar Grammar::withLookupTable(std::map<std::string, TacticType> table) const {
  auto next = std::make_shared<State>(*state_);
  next->lookup = std::move(table);
  next->version = nextVersion++;
  return Grammar(std::move(next));
}

std::string Grammar::dump() const {
  std::ostringstream out;
  for (const GrammarRule& r : rules()) out << r.str() << "\n";
  return out.str();
}

bool isReservedWord(std::string_view word) {
  static constexpr std::string_view kReserved[] = {"THEN", "ORELSE", "\\\\", "by", "suffices_by", "GSYM", "<-"};
  return std::find(std::begin(kReserved), std::end(kReserved), word) != std::end(kReserved);
}

Grammar coreGrammar(const Registry& registry) {
  using S = Symbol;
  using C = Category;
  auto hole = [](int i, C c) { return TacticExpr::hole(i, *categoryType(c)); };
  std::vector<GrammarRule> rules;
  auto add = [&](C lhs, int level, std::vector<Symbol> rhs, LogicalForm lf) {
    rules.push_back(GrammarRule{lhs, level, std::move(rhs), std::move(lf), RuleSource::Core, {}});
  };
  auto tac = [](int level) { return S::nonterminal(C::Tactic, level); };

  add(C::Root, kAtomLevel, {tac(kTopLevel)}, LogicalForm::templ({C::Tactic}, hole(0, C::Tactic)));

  auto infix = [&](InfixOp op, int level, C left, int leftLevel, int rightLevel) {
    add(C::Tactic, level, {S::nonterminal(left, leftLevel), S::word(std::string(infixSpelling(op))), tac(rightLevel)},
        LogicalForm::templ({left, C::Tactic}, TacticExpr::infix(op, hole(0, left), hole(1, C::Tactic))));
  };
  infix(InfixOp::ThenLt, 0, C::Tactic, 0, 1);
  infix(InfixOp::Then, 1, C::Tactic, 1, 2);
  infix(InfixOp::Orelse, 2, C::Tactic, 2, 3);
  infix(InfixOp::By, 3, C::Quot, 0, kApplyLevel);
  infix(InfixOp::SufficesBy, 3, C::Quot, 0, kApplyLevel);

  add(C::Tactic, kAtomLevel, {S::word("("), tac(kTopLevel), S::word(")")},
      LogicalForm::templ({C::Tactic}, hole(0, C::Tactic)));

  for (C f : allCategories()) {
    auto type = categoryType(f);
    if (f == C::Root || f == C::Thms || f == C::Quots || !type || !type->isArrow()) continue;
    const auto lookupLhs = f;
    add(lookupLhs, kAtomLevel, {S::nonterminal(C::Token)}, LogicalForm::lookup(*type));
    add(f, kAtomLevel, {S::word("("), S::nonterminal(f, kApplyLevel), S::word(")")},
        LogicalForm::templ({f}, hole(0, f)));

    auto argSymbol = [](C c) { return S::nonterminal(c, leveled(c) ? kAtomLevel : 0); };
    const C arg = *categoryOf(type->from());
    if (auto result = categoryOf(type->to())) {
      add(*result, kApplyLevel, {S::nonterminal(f, kApplyLevel), argSymbol(arg)},
          LogicalForm::templ({f, arg}, TacticExpr::apply(hole(0, f), hole(1, arg))));
    } else {
      const TacticType& rest = type->to();
      const C arg2 = *categoryOf(rest.from());
      const C result2 = *categoryOf(rest.to());
      add(result2, kApplyLevel, {S::nonterminal(f, kApplyLevel), argSymbol(arg), argSymbol(arg2)},
          LogicalForm::templ({f, arg, arg2},
                             TacticExpr::apply(TacticExpr::apply(hole(0, f), hole(1, arg)), hole(2, arg2))));
    }
  }
  add(C::Tactic, kAtomLevel, {S::nonterminal(C::Token)}, LogicalForm::lookup(types::TAC()));

  add(C::Thm, kAtomLevel, {S::nonterminal(C::Token)}, LogicalForm::thmToken());
  add(C::Thm, kAtomLevel, {S::word("GSYM"), S::nonterminal(C::Thm)},
      LogicalForm::templ({C::Thm}, TacticExpr::gsym(hole(0, C::Thm))));
  add(C::Thm, kAtomLevel, {S::word("<-"), S::nonterminal(C::Thm)},
      LogicalForm::templ({C::Thm}, TacticExpr::gsym(hole(0, C::Thm))));
  add(C::Thm, kAtomLevel, {S::word("("), S::nonterminal(C::Thm), S::word(")")},
      LogicalForm::templ({C::Thm}, hole(0, C::Thm)));

  add(C::ThmList, kAtomLevel, {S::word("["), S::word("]")}, LogicalForm::templ({}, TacticExpr::thmList({})));
  add(C::ThmList, kAtomLevel, {S::word("["), S::nonterminal(C::Thms), S::word("]")},
      LogicalForm::templ({C::Thms}, hole(0, C::Thms)));
  add(C::Thms, kAtomLevel, {S::nonterminal(C::Thm)}, LogicalForm::consThm(false));
  add(C::Thms, kAtomLevel, {S::nonterminal(C::Thm), S::word(","), S::nonterminal(C::Thms)},
      LogicalForm::consThm(true));

  add(C::Quot, kAtomLevel, {S::anyQuotation()}, LogicalForm::quoteToken());
  add(C::QuotList, kAtomLevel, {S::word("["), S::word("]")}, LogicalForm::templ({}, TacticExpr::quotList({})));
  add(C::QuotList, kAtomLevel, {S::word("["), S::nonterminal(C::Quots), S::word("]")},
      LogicalForm::templ({C::Quots}, hole(0, C::Quots)));
  add(C::Quots, kAtomLevel, {S::nonterminal(C::Quot)}, LogicalForm::consQuot(false));
  add(C::Quots, kAtomLevel, {S::nonterminal(C::Quot), S::word(","), S::nonterminal(C::Quots)},
      LogicalForm::consQuot(true));

  std::map<std::string, TacticType> table;
  for (const RegistryEntry& e : registry.entries()) table.emplace(e.name, e.type);
  Grammar g = Grammar().withLookupTable(std::move(table));
  for (GrammarRule& r : rules) g = g.addRule(std::move(r));
  return g;
}

}  // namespace exemplar
