#include "exemplar/induction.hpp"

#include <algorithm>

#include "exemplar/error.hpp"
#include "exemplar/parser.hpp"

namespace exemplar {

namespace {

bool argumentCategory(Category c) {
  return c == Category::Thm || c == Category::ThmList || c == Category::Quot || c == Category::QuotList ||
         c == Category::Tactic;
}

void collectArguments(const TacticExpr& e, std::vector<TacticExpr>& out) {
  auto argument = [&](const TacticExpr& a) {
    auto cat = categoryOf(a.type());
    if (cat && argumentCategory(*cat) &&
        std::none_of(out.begin(), out.end(), [&](const TacticExpr& o) { return o == a; }))
      out.push_back(a);
    collectArguments(a, out);
  };
  switch (e.kind()) {
    case TacticExpr::Kind::Apply:
      collectArguments(e.child(0), out);
      argument(e.child(1));
      break;
    case TacticExpr::Kind::Infix:
    case TacticExpr::Kind::Gsym:
    case TacticExpr::Kind::ThmList:
      for (const TacticExpr& c : e.children()) argument(c);
      break;
    default: break;
  }
}

std::vector<Symbol> literalSymbols(const std::vector<Token>& toks) {
  std::vector<Symbol> out;
  for (const Token& t : toks)
    out.push_back(t.kind == Token::Kind::Quotation ? Symbol::quote(normalizeQuotation(t.text)) : Symbol::word(t.text));
  return out;
}

std::string joinRenderings(const std::vector<Derivation>& ds, std::vector<std::string>& details) {
  for (const Derivation& d : ds) details.push_back(renderValue(d.value));
  return std::to_string(ds.size());
}

// A replacement phrase for an abstracted argument, used to probe the
// extended grammar for ambiguity.
std::vector<Token> witnessTokens(Category c, const Grammar& g) {
  std::string text;
  switch (c) {
    case Category::Thm: text = "WITNESS_THM"; break;
    case Category::ThmList: text = "[ WITNESS_A , WITNESS_B ]"; break;
    case Category::Quot: text = "` witness `"; break;
    case Category::QuotList: text = "[ ` witness ` ]"; break;
    default: {
      text = "all_tac";
      if (!g.lookupTable().count(text))
        for (const auto& [name, type] : g.lookupTable())
          if (type == types::TAC()) {
            text = name;
            break;
          }
    }
  }
  return tokenize(text);
}

}  // namespace

DefResult def(const Grammar& g, std::string_view utterance, std::string_view definition, const DefOptions& options) {
  TacticExpr meaning;
  try {
    meaning = std::get<TacticExpr>(parseUnique(g, tokenize(definition)).value);
  } catch (const Error& e) {
    if (e.code() == Errc::Ambiguous) fail(Errc::DefinitionAmbiguous, e.what(), e.details());
    if (e.code() == Errc::NoParse || e.code() == Errc::UnbalancedQuotation)
      fail(Errc::DefinitionUnparsable, std::string("definition does not parse: ") + e.what());
    throw;
  }

  const std::vector<Token> toks = tokenize(utterance);
  if (toks.empty()) fail(Errc::DefinitionUnparsable, "empty utterance");

  const std::vector<Derivation> existing = parseAll(g, toks);
  if (!existing.empty()) {
    if (existing.size() == 1 && std::get<TacticExpr>(existing[0].value) == meaning) return {std::nullopt, std::nullopt, g};
    std::vector<std::string> details;
    joinRenderings(existing, details);
    fail(Errc::AlreadyDefined, "'" + canonical(toks) + "' already means " + details.front(), details);
  }

  std::vector<TacticExpr> arguments;
  collectArguments(meaning, arguments);

  struct Binding {
    std::size_t start, end;
    Category cat;
    TacticExpr value;
  };
  std::vector<Binding> bound;
  for (const SpanValue& s : maximalSpans(g, toks)) {
    if (s.end - s.start == toks.size()) continue;
    const TacticExpr* value = std::get_if<TacticExpr>(&s.value);
    if (!value) continue;
    if (std::none_of(arguments.begin(), arguments.end(), [&](const TacticExpr& a) { return a == *value; })) continue;
    if (std::any_of(bound.begin(), bound.end(), [&](const Binding& b) { return b.value == *value; })) continue;
    if (std::any_of(bound.begin(), bound.end(), [&](const Binding& b) { return s.start < b.end && b.start < s.end; }))
      continue;
    if (s.cat == Category::Tactic) {
      const bool leading = s.start == 0, trailing = s.end == toks.size();
      const int needed = leading ? kApplyLevel : trailing ? kPrefixLevel : kTopLevel;
      if (s.level < needed) continue;
    }
    bound.push_back({s.start, s.end, s.cat, *value});
  }
  std::sort(bound.begin(), bound.end(), [](const Binding& a, const Binding& b) { return a.start < b.start; });

  const std::string sourceLabel = options.library;
  DefResult result{GrammarRule{Category::Tactic, kAtomLevel, literalSymbols(toks), LogicalForm::templ({}, meaning),
                               options.source, sourceLabel},
                   std::nullopt, g};

  if (!bound.empty()) {
    std::vector<Symbol> rhs;
    std::vector<Category> params;
    std::size_t pos = 0;
    for (const Binding& b : bound) {
      for (; pos < b.start; ++pos) rhs.push_back(literalSymbols({toks[pos]}).front());
      rhs.push_back(Symbol::nonterminal(b.cat));
      params.push_back(b.cat);
      pos = b.end;
    }
    for (; pos < toks.size(); ++pos) rhs.push_back(literalSymbols({toks[pos]}).front());

    int level = kAtomLevel;
    const bool leading = !rhs.front().terminal && rhs.front().cat == Category::Tactic;
    const bool trailing = !rhs.back().terminal && rhs.back().cat == Category::Tactic;
    if (leading) level = kApplyLevel;
    if (trailing) level = kPrefixLevel;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      if (rhs[i].terminal || rhs[i].cat != Category::Tactic) continue;
      rhs[i].level = i == 0 ? kApplyLevel : i + 1 == rhs.size() ? kPrefixLevel : kTopLevel;
    }

    // Larger values first so that nested arguments are abstracted whole.
    std::vector<std::size_t> order(bound.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return renderExpr(bound[a].value).size() > renderExpr(bound[b].value).size();
    });
    TacticExpr body = meaning;
    for (std::size_t i : order)
      body = replaceAll(body, bound[i].value, TacticExpr::hole(static_cast<int>(i), bound[i].value.type()));
    result.generalizedRule =
        GrammarRule{Category::Tactic, level, rhs, LogicalForm::templ(params, body), options.source, sourceLabel};
    result.literalRule->level = level;
  }

  Grammar candidate = g.addRule(*result.literalRule);
  if (result.generalizedRule) candidate = candidate.addRule(*result.generalizedRule);

  auto gate = [&](const std::vector<Token>& probe) {
    std::vector<Derivation> ds;
    try {
      ds = parseAll(candidate, probe);
    } catch (const Error& e) {
      if (e.code() != Errc::Ambiguous) throw;
      fail(Errc::WouldBeAmbiguous, "'" + canonical(probe) + "' would have too many meanings");
    }
    if (ds.size() > 1) {
      std::vector<std::string> details{canonical(probe)};
      joinRenderings(ds, details);
      fail(Errc::WouldBeAmbiguous, "'" + canonical(probe) + "' would become ambiguous", details);
    }
  };
  gate(toks);
  for (const Binding& b : bound) {
    std::vector<Token> probe(toks.begin(), toks.begin() + static_cast<std::ptrdiff_t>(b.start));
    for (const Token& t : witnessTokens(b.cat, g)) probe.push_back(t);
    probe.insert(probe.end(), toks.begin() + static_cast<std::ptrdiff_t>(b.end), toks.end());
    gate(probe);
  }

  result.grammar = candidate;
  return result;
}

std::string_view customKindName(CustomKind k) {
  switch (k) {
    case CustomKind::Tactic: return "tactic";
    case CustomKind::ThmTactic: return "thm_tactic";
    case CustomKind::ThmListTactic: return "thmlist_tactic";
  }
  return "tactic";
}

std::optional<CustomKind> customKindByName(std::string_view name) {
  for (CustomKind k : {CustomKind::Tactic, CustomKind::ThmTactic, CustomKind::ThmListTactic})
    if (customKindName(k) == name) return k;
  return std::nullopt;
}

const TacticType& customKindType(CustomKind k) {
  switch (k) {
    case CustomKind::Tactic: return types::TAC();
    case CustomKind::ThmTactic: return types::THM_TAC();
    case CustomKind::ThmListTactic: return types::THMLIST_TAC();
  }
  return types::TAC();
}

CustomResult addCustom(const Grammar& g, const Registry& registry, const std::string& name, CustomKind kind,
                       std::optional<TacticValue> impl, const DefOptions& options) {
  const std::vector<Token> toks = tokenize(name);
  if (toks.size() != 1 || toks[0].kind != Token::Kind::Word)
    fail(Errc::MalformedRule, "custom tactic name must be a single word: '" + name + "'");
  if (registry.contains(name)) fail(Errc::DuplicateCustom, "tactic '" + name + "' is already registered");
  const TacticType& type = customKindType(kind);
  const Category cat = *categoryOf(type);
  for (const GrammarRule& r : g.rules())
    if (r.lhs == cat && r.rhs.size() == 1 && r.rhs[0].terminal && r.rhs[0].text == name)
      fail(Errc::DuplicateCustom, "'" + name + "' is already a terminal of " + std::string(categoryName(cat)));

  CustomResult out{g, registry};
  out.registry.add(name, type, std::move(impl));
  out.grammar = g.addRule(GrammarRule{cat, kAtomLevel, {Symbol::word(name)},
                                      LogicalForm::templ({}, TacticExpr::lookup(name, type)), options.source,
                                      options.library});
  return out;
}

}  // namespace exemplar
