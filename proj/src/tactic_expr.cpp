#include "exemplar/tactic_expr.hpp"

#include <algorithm>
#include <cctype>

#include "exemplar/error.hpp"

namespace exemplar {

std::string_view infixSpelling(InfixOp op) {
  switch (op) {
    case InfixOp::ThenLt: return "\\\\";
    case InfixOp::Then: return "THEN";
    case InfixOp::Orelse: return "ORELSE";
    case InfixOp::By: return "by";
    case InfixOp::SufficesBy: return "suffices_by";
  }
  return "?";
}

std::string normalizeQuotation(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

TacticExpr TacticExpr::make(Node node) { return TacticExpr(std::make_shared<const Node>(std::move(node))); }

TacticExpr TacticExpr::lookup(std::string name, TacticType type) {
  return make(Node{Kind::Lookup, std::move(type), std::move(name)});
}

TacticExpr TacticExpr::thmRef(std::string name) { return make(Node{Kind::ThmRef, types::THM(), std::move(name)}); }

TacticExpr TacticExpr::gsym(TacticExpr thm) {
  if (!(thm.type() == types::THM())) fail(Errc::TypeMismatch, "GSYM expects a theorem, got " + thm.type().str());
  return make(Node{Kind::Gsym, types::THM(), {}, InfixOp::Then, -1, {std::move(thm)}});
}

TacticExpr TacticExpr::thmList(std::vector<TacticExpr> items) {
  for (const auto& item : items)
    if (!(item.type() == types::THM()))
      fail(Errc::TypeMismatch, "theorem list element has type " + item.type().str());
  return make(Node{Kind::ThmList, types::THMLIST(), {}, InfixOp::Then, -1, std::move(items)});
}

TacticExpr TacticExpr::quot(std::string_view text) {
  return make(Node{Kind::Quot, types::QUOT(), normalizeQuotation(text)});
}

TacticExpr TacticExpr::quotList(std::vector<std::string> texts) {
  for (auto& t : texts) t = normalizeQuotation(t);
  return make(Node{Kind::QuotList, types::QUOTLIST(), {}, InfixOp::Then, -1, {}, std::move(texts)});
}

TacticExpr TacticExpr::apply(TacticExpr fn, TacticExpr arg) {
  if (!fn.type().isArrow()) fail(Errc::TypeMismatch, "cannot apply a value of type " + fn.type().str());
  if (!(fn.type().from() == arg.type()))
    fail(Errc::TypeMismatch, "argument of type " + arg.type().str() + " where " + fn.type().from().str() +
                                 " is expected");
  TacticType result = fn.type().to();
  return make(Node{Kind::Apply, std::move(result), {}, InfixOp::Then, -1, {std::move(fn), std::move(arg)}});
}

TacticExpr TacticExpr::infix(InfixOp op, TacticExpr lhs, TacticExpr rhs) {
  const bool quoted = op == InfixOp::By || op == InfixOp::SufficesBy;
  const TacticType& left = quoted ? types::QUOT() : types::TAC();
  if (!(lhs.type() == left) || !(rhs.type() == types::TAC()))
    fail(Errc::TypeMismatch, std::string(infixSpelling(op)) + " applied to " + lhs.type().str() + " and " +
                                 rhs.type().str());
  return make(Node{Kind::Infix, types::TAC(), std::string(infixSpelling(op)), op, -1,
                   {std::move(lhs), std::move(rhs)}});
}

TacticExpr TacticExpr::hole(int index, TacticType type) {
  return make(Node{Kind::Hole, std::move(type), {}, InfixOp::Then, index});
}

bool TacticExpr::hasHoles() const {
  if (kind() == Kind::Hole) return true;
  return std::any_of(children().begin(), children().end(), [](const TacticExpr& c) { return c.hasHoles(); });
}

bool operator==(const TacticExpr& a, const TacticExpr& b) {
  if (a.sameNode(b)) return true;
  if (!a || !b) return false;
  if (a.kind() != b.kind() || a.name() != b.name() || a.holeIndex() != b.holeIndex()) return false;
  if (a.kind() == TacticExpr::Kind::Infix && a.op() != b.op()) return false;
  if (!(a.type() == b.type()) || a.texts() != b.texts()) return false;
  if (a.children().size() != b.children().size()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (!(a.child(i) == b.child(i))) return false;
  return true;
}

int precedence(const TacticExpr& e) {
  switch (e.kind()) {
    case TacticExpr::Kind::Apply: return kApplyPrec;
    case TacticExpr::Kind::Infix:
      switch (e.op()) {
        case InfixOp::ThenLt: return 0;
        case InfixOp::Then: return 1;
        case InfixOp::Orelse: return 2;
        default: return 3;
      }
    default: return kAtomPrec;
  }
}

namespace {

struct Renderer {
  const std::vector<std::string>* holeNames;

  std::string at(const TacticExpr& e, int minPrec) const {
    std::string s = render(e);
    return precedence(e) < minPrec ? "( " + s + " )" : s;
  }

  std::string render(const TacticExpr& e) const {
    using K = TacticExpr::Kind;
    switch (e.kind()) {
      case K::Lookup:
      case K::ThmRef: return e.name();
      case K::Gsym: return "GSYM " + render(e.child(0));
      case K::Quot: return "` " + e.name() + " `";
      case K::ThmList:
      case K::QuotList: {
        std::vector<std::string> items;
        if (e.kind() == K::ThmList)
          for (const auto& c : e.children()) items.push_back(render(c));
        else
          for (const auto& t : e.texts()) items.push_back("` " + t + " `");
        if (items.empty()) return "[ ]";
        std::string out = "[ " + items[0];
        for (std::size_t i = 1; i < items.size(); ++i) out += " , " + items[i];
        return out + " ]";
      }
      case K::Apply: return render(e.child(0)) + " " + at(e.child(1), kAtomPrec);
      case K::Infix: {
        const int p = precedence(e);
        if (e.op() == InfixOp::By || e.op() == InfixOp::SufficesBy)
          return at(e.child(0), kAtomPrec) + " " + e.name() + " ( " + render(e.child(1)) + " )";
        return at(e.child(0), p) + " " + e.name() + " " + at(e.child(1), p + 1);
      }
      case K::Hole: {
        const auto i = static_cast<std::size_t>(e.holeIndex());
        if (holeNames && i < holeNames->size()) return (*holeNames)[i];
        return "$" + std::to_string(e.holeIndex());
      }
    }
    return "?";
  }
};

}  // namespace

std::string renderExpr(const TacticExpr& e) { return Renderer{nullptr}.render(e); }

std::string renderExpr(const TacticExpr& e, const std::vector<std::string>& holeNames) {
  return Renderer{&holeNames}.render(e);
}

namespace {

TacticExpr rebuild(const TacticExpr& e, std::vector<TacticExpr> kids) {
  using K = TacticExpr::Kind;
  switch (e.kind()) {
    case K::Gsym: return TacticExpr::gsym(kids[0]);
    case K::ThmList: return TacticExpr::thmList(std::move(kids));
    case K::Apply: return TacticExpr::apply(kids[0], kids[1]);
    case K::Infix: return TacticExpr::infix(e.op(), kids[0], kids[1]);
    default: return e;
  }
}

template <class F>
TacticExpr mapExpr(const TacticExpr& e, const F& f) {
  if (auto r = f(e)) return *r;
  if (e.children().empty()) return e;
  std::vector<TacticExpr> kids;
  bool changed = false;
  for (const auto& c : e.children()) {
    kids.push_back(mapExpr(c, f));
    changed = changed || !kids.back().sameNode(c);
  }
  return changed ? rebuild(e, std::move(kids)) : e;
}

}  // namespace

TacticExpr fillHoles(const TacticExpr& e, const std::vector<TacticExpr>& values) {
  return mapExpr(e, [&](const TacticExpr& n) -> std::optional<TacticExpr> {
    if (n.kind() != TacticExpr::Kind::Hole) return std::nullopt;
    const auto i = static_cast<std::size_t>(n.holeIndex());
    if (i >= values.size()) fail(Errc::TypeMismatch, "logical form refers to missing argument " + std::to_string(i));
    if (!(values[i].type() == n.type()))
      fail(Errc::TypeMismatch, "argument " + std::to_string(i) + " has type " + values[i].type().str() +
                                   ", expected " + n.type().str());
    return values[i];
  });
}

TacticExpr replaceAll(const TacticExpr& e, const TacticExpr& from, const TacticExpr& to) {
  return mapExpr(e, [&](const TacticExpr& n) -> std::optional<TacticExpr> {
    if (n == from) return to;
    return std::nullopt;
  });
}

}  // namespace exemplar
