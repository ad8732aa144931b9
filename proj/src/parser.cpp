#include "exemplar/parser.hpp"

#include <algorithm>
#include <cctype>

#include "exemplar/error.hpp"

namespace exemplar {

namespace {

bool isPunct(char c) { return c == '[' || c == ']' || c == '(' || c == ')' || c == ','; }

bool matchesTerminal(const Symbol& s, const Token& t) {
  if (s.quotation) return t.kind == Token::Kind::Quotation && normalizeQuotation(t.text) == s.text;
  return t.kind != Token::Kind::Quotation && t.text == s.text;
}

}  // namespace

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '\'' || c == '`') {
      const std::size_t close = s.find(c, i + 1);
      if (close == std::string_view::npos)
        fail(Errc::UnbalancedQuotation, "unbalanced quotation starting at position " + std::to_string(i));
      out.push_back({Token::Kind::Quotation, std::string(s.substr(i + 1, close - i - 1)), i, close + 1});
      i = close + 1;
    } else if (isPunct(c)) {
      out.push_back({Token::Kind::Punct, std::string(1, c), i, i + 1});
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && !isPunct(s[j]) && s[j] != '\'' &&
             s[j] != '`')
        ++j;
      out.push_back({Token::Kind::Word, std::string(s.substr(i, j - i)), i, j});
      i = j;
    }
  }
  return out;
}

std::string canonical(const std::vector<Token>& toks) {
  std::string out;
  for (const Token& t : toks) {
    if (!out.empty()) out += ' ';
    out += t.kind == Token::Kind::Quotation ? "` " + normalizeQuotation(t.text) + " `" : t.text;
  }
  return out;
}

Chart::Chart(const Grammar& g, const std::vector<Token>& toks)
    : g_(g), toks_(toks), n_(toks.size()), cells_((n_ + 1) * (n_ + 1)) {
  for (std::size_t len = 1; len <= n_; ++len)
    for (std::size_t i = 0; i + len <= n_; ++i) fill(i, i + len);
}

bool Chart::insert(Cell& c, DerivationPtr d) {
  for (const DerivationPtr& e : c.items)
    if (e->cat == d->cat && e->level == d->level && sameValue(e->value, d->value)) return false;
  c.items.push_back(std::move(d));
  return true;
}

std::vector<DerivationPtr> Chart::at(std::size_t start, std::size_t end, Category cat, int minLevel) const {
  std::vector<DerivationPtr> out;
  if (start >= end || end > n_) return out;
  for (const DerivationPtr& d : cell(start, end).items) {
    if (d->cat != cat || d->level < minLevel) continue;
    if (std::none_of(out.begin(), out.end(), [&](const DerivationPtr& e) { return sameValue(e->value, d->value); }))
      out.push_back(d);
  }
  return out;
}

void Chart::fill(std::size_t i, std::size_t j) {
  Cell& target = cell(i, j);
  const auto& rules = g_.rules();

  auto build = [&](std::size_t ruleIndex, std::vector<DerivationPtr> kids) {
    const GrammarRule& r = rules[ruleIndex];
    std::vector<SemValue> args;
    for (const DerivationPtr& k : kids) args.push_back(k->value);
    std::optional<SemValue> v;
    try {
      v = r.lf.apply(args, g_.lookupTable());
    } catch (const Error&) {
      return false;
    }
    if (!v) return false;
    auto d = std::make_shared<Derivation>();
    d->rule = static_cast<int>(ruleIndex);
    d->start = i;
    d->end = j;
    d->cat = r.lhs;
    d->level = r.level;
    d->value = std::move(*v);
    d->children = std::move(kids);
    return insert(target, std::move(d));
  };

  auto tokenLeaf = [&](std::size_t k) {
    auto d = std::make_shared<Derivation>();
    d->start = k;
    d->end = k + 1;
    d->value = toks_[k].text;
    return DerivationPtr(d);
  };

  auto isUnit = [](const GrammarRule& r) {
    return r.rhs.size() == 1 && !r.rhs[0].terminal && r.rhs[0].cat != Category::Token;
  };

  // Rules whose symbols all cover proper sub-spans, or single tokens.
  for (std::size_t ri = 0; ri < rules.size(); ++ri) {
    const GrammarRule& r = rules[ri];
    if (isUnit(r)) continue;
    const std::size_t k = r.rhs.size();
    if (k > j - i) continue;
    std::vector<DerivationPtr> kids;
    auto walk = [&](auto&& self, std::size_t si, std::size_t pos) -> void {
      if (si == k) {
        if (pos == j) build(ri, kids);
        return;
      }
      const Symbol& s = r.rhs[si];
      const std::size_t remaining = k - si - 1;
      if (s.terminal) {
        if (pos < j && matchesTerminal(s, toks_[pos])) self(self, si + 1, pos + 1);
        return;
      }
      if (s.cat == Category::Token) {
        if (pos >= j) return;
        const Token& t = toks_[pos];
        const bool ok = s.quotation ? t.kind == Token::Kind::Quotation : t.kind == Token::Kind::Word;
        if (!ok) return;
        kids.push_back(tokenLeaf(pos));
        self(self, si + 1, pos + 1);
        kids.pop_back();
        return;
      }
      for (std::size_t q = pos + 1; q + remaining <= j; ++q) {
        if (q - pos == j - i) continue;  // whole span: only unit rules reach here
        for (const DerivationPtr& d : at(pos, q, s.cat, s.level)) {
          kids.push_back(d);
          self(self, si + 1, q);
          kids.pop_back();
        }
      }
    };
    walk(walk, 0, i);
  }

  // Unit rules to a fixpoint.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
      const GrammarRule& r = rules[ri];
      if (!isUnit(r)) continue;
      for (const DerivationPtr& d : at(i, j, r.rhs[0].cat, r.rhs[0].level))
        if (build(ri, {d})) changed = true;
    }
    if (target.items.size() > 10000) fail(Errc::Ambiguous, "derivation explosion");
  }
}

std::vector<Derivation> parseAll(const Grammar& g, const std::vector<Token>& toks, Category target) {
  std::vector<Derivation> out;
  if (toks.empty()) return out;
  Chart chart(g, toks);
  for (const DerivationPtr& d : chart.at(0, toks.size(), target, 0)) out.push_back(*d);
  return out;
}

Derivation parseUnique(const Grammar& g, const std::vector<Token>& toks, Category target) {
  if (toks.empty()) fail(Errc::NoParse, "nothing to parse");
  Chart chart(g, toks);
  auto all = chart.at(0, toks.size(), target, 0);
  if (all.size() == 1) return *all[0];
  if (all.empty()) {
    std::size_t best = 0;
    for (std::size_t k = toks.size(); k-- > 1;) {
      if (!chart.at(0, k, target, 0).empty()) {
        best = k;
        break;
      }
    }
    std::string msg = "could not parse '" + canonical(toks) + "'";
    if (best > 0) {
      std::vector<Token> prefix(toks.begin(), toks.begin() + static_cast<std::ptrdiff_t>(best));
      msg += "; longest parseable prefix '" + canonical(prefix) + "', unexpected token '" + toks[best].text + "'";
    } else {
      msg += "; no prefix parses, first token '" + toks[0].text + "'";
    }
    fail(Errc::NoParse, msg);
  }
  std::vector<std::string> renderings;
  for (const DerivationPtr& d : all) renderings.push_back(renderValue(d->value));
  fail(Errc::Ambiguous, "'" + canonical(toks) + "' has " + std::to_string(all.size()) + " meanings", renderings);
}

TacticExpr parseTactic(const Grammar& g, std::string_view sentence) {
  return std::get<TacticExpr>(parseUnique(g, tokenize(sentence)).value);
}

std::vector<SpanValue> maximalSpans(const Grammar& g, const std::vector<Token>& toks) {
  std::vector<SpanValue> out;
  const std::size_t n = toks.size();
  if (n == 0) return out;
  Chart chart(g, toks);
  for (Category cat : {Category::Thm, Category::ThmList, Category::Quot, Category::QuotList, Category::Tactic}) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        if (!chart.at(i, j, cat).empty()) spans.emplace_back(i, j);
    for (auto [i, j] : spans) {
      const bool inside = std::any_of(spans.begin(), spans.end(), [&](const auto& o) {
        return o.first <= i && j <= o.second && (o.second - o.first) > (j - i);
      });
      if (inside) continue;
      for (const DerivationPtr& d : chart.at(i, j, cat)) {
        int level = 0;
        for (int l = kAtomLevel; l > 0 && level == 0; --l)
          for (const DerivationPtr& e : chart.at(i, j, cat, l))
            if (sameValue(e->value, d->value)) level = l;
        out.push_back({i, j, cat, d->value, level});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SpanValue& a, const SpanValue& b) {
    return a.start != b.start ? a.start < b.start : a.end > b.end;
  });
  return out;
}

}  // namespace exemplar
