#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace exemplar {

enum class Sort : std::uint8_t { Nat, Bool };

// Node kinds of the object logic. Numerals are not a kind of their own: the
// numeral n is SUC applied n times to ZERO and only the printer/parser know
// about the decimal spelling.
enum class Sym : std::uint8_t {
  Var,
  Zero,
  Suc,
  Add,
  Mul,
  Sum,
  Eq,
  Lt,
  Le,
  True,
  False,
  Not,
  And,
  Or,
  Imp,
  Iff,
  Forall,
  Exists,
};

std::string_view symName(Sym sym);

/// Immutable, shared syntax tree of a sorted first-order term.
///
/// Every node is well sorted by construction: the factory functions check the
/// signature of the symbol and throw `Errc::Sort` otherwise. Quantifiers bind a
/// nat variable whose name is stored in the node; their single child is the
/// body. Equality of terms in the rest of the system is `alphaEqual`, never
/// pointer or spelling identity.
class Term {
 public:
  Term() = default;

  static Term var(std::string name, Sort sort);
  static Term zero();
  static Term numeral(std::uint64_t n);
  static Term suc(Term t);
  static Term add(Term a, Term b);
  static Term mul(Term a, Term b);
  static Term sum(Term t);
  static Term eq(Term a, Term b);
  static Term lt(Term a, Term b);
  static Term le(Term a, Term b);
  static Term truth();
  static Term falsity();
  static Term neg(Term p);
  static Term conj(Term p, Term q);
  static Term disj(Term p, Term q);
  static Term imp(Term p, Term q);
  static Term iff(Term p, Term q);
  static Term forall(std::string var, Term body);
  static Term exists(std::string var, Term body);
  // Generic constructor used by substitution and the kernel.
  static Term make(Sym sym, std::vector<Term> args, std::string name = {});

  explicit operator bool() const noexcept { return node_ != nullptr; }

  Sym sym() const { return node_->sym; }
  Sort sort() const { return node_->sort; }
  // Variable name, or the bound variable of a quantifier.
  const std::string& name() const { return node_->name; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }
  std::size_t size() const { return node_->size; }

  bool is(Sym sym) const { return node_ && node_->sym == sym; }
  bool isVar() const { return is(Sym::Var); }
  bool isQuantifier() const { return is(Sym::Forall) || is(Sym::Exists); }
  // `a = b` for nat, `p <=> q` for bool: the two equality-like connectives the
  // rewriter works with.
  bool isEquation() const { return is(Sym::Eq) || is(Sym::Iff); }
  std::optional<std::uint64_t> numeralValue() const;

  // Same node, not merely alpha-equal.
  bool sameNode(const Term& other) const noexcept { return node_ == other.node_; }

 private:
  struct Node {
    Sym sym;
    Sort sort;
    std::string name;
    std::vector<Term> args;
    std::size_t size;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Builds `l = r` or `l <=> r` depending on the sort of the operands.
Term mkEquation(const Term& lhs, const Term& rhs);

bool alphaEqual(const Term& a, const Term& b);
// Total order modulo alpha-equivalence (bound variables compare by binding depth).
int compareTerms(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compareTerms(a, b) < 0; }
};

// Free variables in order of first occurrence.
std::vector<Term> freeVars(const Term& t);
bool occursFree(const Term& var, const Term& t);
bool freeIn(std::string_view name, const Term& t);

using Substitution = std::vector<std::pair<Term, Term>>;  // variable -> replacement

// Capture-avoiding simultaneous substitution. Bound variables are renamed when
// they would capture a free variable of a replacement.
Term substitute(const Term& t, const Substitution& sigma);
Term substitute(const Term& t, const Term& var, const Term& replacement);

// Name based on `base` that does not clash with any name in `avoid`.
std::string freshName(std::string_view base, const std::vector<std::string>& avoid);

// First-order matching up to alpha-equivalence. All free variables of the
// pattern act as match variables except those listed in `fixed`. Returns the
// unique most general matcher, or nothing.
std::optional<Substitution> matchTerm(const Term& pattern, const Term& target);
std::optional<Substitution> matchTerm(const Term& pattern, const Term& target,
                                      std::span<const Term> fixed);

std::string render(const Term& t);
std::string render(const Substitution& sigma);

// Parses the interior of a quotation. Free identifiers get their sort from
// the position they occur in; a variable used at both sorts is an error.
// Throws Errc::Syntax (with the character offset) or Errc::Sort.
Term parseTerm(std::string_view source, Sort expected = Sort::Bool);

}  // namespace exemplar
