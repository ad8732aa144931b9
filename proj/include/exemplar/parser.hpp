#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "exemplar/grammar.hpp"

namespace exemplar {

struct Token {
  enum class Kind { Word, Quotation, Punct };
  Kind kind = Kind::Word;
  std::string text;  // quotation tokens hold their interior verbatim
  std::size_t start = 0, end = 0;
};

// Throws Errc::UnbalancedQuotation. Quotations open with ' or ` and close
// with the same character.
std::vector<Token> tokenize(std::string_view sentence);
// Tokens joined by single spaces, quotations re-delimited with backquotes.
std::string canonical(const std::vector<Token>& toks);

struct Derivation {
  int rule = -1;  // -1 for a bare token
  std::size_t start = 0, end = 0;  // token indices
  Category cat = Category::Token;
  int level = kAtomLevel;
  SemValue value;
  std::vector<std::shared_ptr<const Derivation>> children;
};

using DerivationPtr = std::shared_ptr<const Derivation>;

/// All derivations of every span, computed bottom-up by span length.
class Chart {
 public:
  Chart(const Grammar& g, const std::vector<Token>& toks);

  // Value-distinct derivations of [start, end) for `cat` at `minLevel` or above.
  std::vector<DerivationPtr> at(std::size_t start, std::size_t end, Category cat, int minLevel = 0) const;
  std::size_t size() const { return n_; }

 private:
  struct Cell {
    std::vector<DerivationPtr> items;
  };
  Cell& cell(std::size_t i, std::size_t j) { return cells_[i * (n_ + 1) + j]; }
  const Cell& cell(std::size_t i, std::size_t j) const { return cells_[i * (n_ + 1) + j]; }
  void fill(std::size_t i, std::size_t j);
  bool insert(Cell& c, DerivationPtr d);

  const Grammar& g_;
  const std::vector<Token>& toks_;
  std::size_t n_;
  std::vector<Cell> cells_;
};

std::vector<Derivation> parseAll(const Grammar& g, const std::vector<Token>& toks, Category target = Category::Tactic);

// Throws Errc::NoParse (longest parseable prefix and offending token) or
// Errc::Ambiguous (details hold every rendering).
Derivation parseUnique(const Grammar& g, const std::vector<Token>& toks, Category target = Category::Tactic);
TacticExpr parseTactic(const Grammar& g, std::string_view sentence);

struct SpanValue {
  std::size_t start = 0, end = 0;
  Category cat = Category::Tactic;
  SemValue value;
  int level = kAtomLevel;  // highest level at which the span yields the value
};

// Spans parseable as THM, THMLIST, QUOT, QUOTLIST or TACTIC that are not
// inside a larger span of the same category, ordered by start.
std::vector<SpanValue> maximalSpans(const Grammar& g, const std::vector<Token>& toks);

}  // namespace exemplar
