#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "exemplar/tactic_type.hpp"

namespace exemplar {

enum class InfixOp { ThenLt, Then, Orelse, By, SufficesBy };

std::string_view infixSpelling(InfixOp op);  // "\\", "THEN", "ORELSE", "by", "suffices_by"

/// Typed AST of a low-level tactic script. Nodes are immutable and shared;
/// every constructor checks the typing rules and throws Errc::TypeMismatch.
/// Hole nodes only occur inside grammar logical forms.
class TacticExpr {
 public:
  enum class Kind { Lookup, ThmRef, Gsym, ThmList, Quot, QuotList, Apply, Infix, Hole };

  TacticExpr() = default;

  static TacticExpr lookup(std::string name, TacticType type);
  static TacticExpr thmRef(std::string name);
  static TacticExpr gsym(TacticExpr thm);
  static TacticExpr thmList(std::vector<TacticExpr> items);
  static TacticExpr quot(std::string_view text);  // whitespace is normalized
  static TacticExpr quotList(std::vector<std::string> texts);
  static TacticExpr apply(TacticExpr fn, TacticExpr arg);
  static TacticExpr infix(InfixOp op, TacticExpr lhs, TacticExpr rhs);
  static TacticExpr hole(int index, TacticType type);

  explicit operator bool() const noexcept { return node_ != nullptr; }

  Kind kind() const { return node_->kind; }
  const TacticType& type() const { return node_->type; }
  // Tactic or theorem name, quotation text, or the infix spelling.
  const std::string& name() const { return node_->name; }
  InfixOp op() const { return node_->op; }
  int holeIndex() const { return node_->index; }
  const std::vector<TacticExpr>& children() const { return node_->children; }
  const TacticExpr& child(std::size_t i) const { return node_->children.at(i); }
  const std::vector<std::string>& texts() const { return node_->texts; }

  bool hasHoles() const;
  bool sameNode(const TacticExpr& other) const noexcept { return node_ == other.node_; }

 private:
  struct Node {
    Kind kind;
    TacticType type;
    std::string name;
    InfixOp op = InfixOp::Then;
    int index = -1;
    std::vector<TacticExpr> children;
    std::vector<std::string> texts;
  };
  explicit TacticExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static TacticExpr make(Node node);

  std::shared_ptr<const Node> node_;
};

bool operator==(const TacticExpr& a, const TacticExpr& b);
inline bool operator!=(const TacticExpr& a, const TacticExpr& b) { return !(a == b); }

// Binding strength used by the renderer and mirrored by the core grammar:
// 0 for "\\", 1 THEN, 2 ORELSE, 3 by/suffices_by, 4 application, 5 atoms.
int precedence(const TacticExpr& e);
constexpr int kApplyPrec = 4;
constexpr int kAtomPrec = 5;

// Canonical script text: tokens separated by single spaces, quotations as
// "` text `". Holes print as their names from `holeNames` or as "$i".
std::string renderExpr(const TacticExpr& e);
std::string renderExpr(const TacticExpr& e, const std::vector<std::string>& holeNames);

std::string normalizeQuotation(std::string_view text);

// Replaces holes by the given values; types must agree.
TacticExpr fillHoles(const TacticExpr& e, const std::vector<TacticExpr>& values);

// Replaces every sub-expression equal to `from` by `to`.
TacticExpr replaceAll(const TacticExpr& e, const TacticExpr& from, const TacticExpr& to);

}  // namespace exemplar
