#include "exemplar/term.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "exemplar/error.hpp"

namespace exemplar {

std::string_view symName(Sym sym) {
  switch (sym) {
    case Sym::Var: return "VAR";
    case Sym::Zero: return "ZERO";
    case Sym::Suc: return "SUC";
    case Sym::Add: return "ADD";
    case Sym::Mul: return "MUL";
    case Sym::Sum: return "SUM";
    case Sym::Eq: return "EQ";
    case Sym::Lt: return "LT";
    case Sym::Le: return "LE";
    case Sym::True: return "T";
    case Sym::False: return "F";
    case Sym::Not: return "NOT";
    case Sym::And: return "AND";
    case Sym::Or: return "OR";
    case Sym::Imp: return "IMP";
    case Sym::Iff: return "IFF";
    case Sym::Forall: return "FORALL";
    case Sym::Exists: return "EXISTS";
  }
  return "?";
}

namespace {

struct Signature {
  std::vector<Sort> params;
  Sort result;
};

Signature signatureOf(Sym sym) {
  using enum Sort;
  switch (sym) {
    case Sym::Zero: return {{}, Nat};
    case Sym::Suc:
    case Sym::Sum: return {{Nat}, Nat};
    case Sym::Add:
    case Sym::Mul: return {{Nat, Nat}, Nat};
    case Sym::Eq:
    case Sym::Lt:
    case Sym::Le: return {{Nat, Nat}, Bool};
    case Sym::True:
    case Sym::False: return {{}, Bool};
    case Sym::Not: return {{Bool}, Bool};
    case Sym::And:
    case Sym::Or:
    case Sym::Imp:
    case Sym::Iff: return {{Bool, Bool}, Bool};
    case Sym::Forall:
    case Sym::Exists: return {{Bool}, Bool};
    case Sym::Var: break;
  }
  return {{}, Nat};
}

}  // namespace

Term Term::make(Sym sym, std::vector<Term> args, std::string name) {
  if (sym == Sym::Var) fail(Errc::Sort, "variables are built with Term::var");
  const Signature sig = signatureOf(sym);
  if (args.size() != sig.params.size())
    fail(Errc::Sort, std::string(symName(sym)) + " expects " + std::to_string(sig.params.size()) +
                         " arguments");
  std::size_t size = 1;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i]) fail(Errc::Sort, "null argument to " + std::string(symName(sym)));
    if (args[i].sort() != sig.params[i])
      fail(Errc::Sort, "ill-sorted argument " + std::to_string(i + 1) + " of " +
                           std::string(symName(sym)) + ": " + render(args[i]));
    size += args[i].size();
  }
  if ((sym == Sym::Forall || sym == Sym::Exists) && name.empty())
    fail(Errc::Sort, "quantifier without a bound variable");
  return Term(std::make_shared<const Node>(Node{sym, sig.result, std::move(name), std::move(args), size}));
}

Term Term::var(std::string name, Sort sort) {
  if (name.empty()) fail(Errc::Sort, "empty variable name");
  return Term(std::make_shared<const Node>(Node{Sym::Var, sort, std::move(name), {}, 1}));
}

Term Term::zero() {
  static const Term z = make(Sym::Zero, {});
  return z;
}
Term Term::numeral(std::uint64_t n) {
  Term t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = suc(t);
  return t;
}
Term Term::suc(Term t) { return make(Sym::Suc, {std::move(t)}); }
Term Term::add(Term a, Term b) { return make(Sym::Add, {std::move(a), std::move(b)}); }
Term Term::mul(Term a, Term b) { return make(Sym::Mul, {std::move(a), std::move(b)}); }
Term Term::sum(Term t) { return make(Sym::Sum, {std::move(t)}); }
Term Term::eq(Term a, Term b) { return make(Sym::Eq, {std::move(a), std::move(b)}); }
Term Term::lt(Term a, Term b) { return make(Sym::Lt, {std::move(a), std::move(b)}); }
Term Term::le(Term a, Term b) { return make(Sym::Le, {std::move(a), std::move(b)}); }
Term Term::truth() {
  static const Term t = make(Sym::True, {});
  return t;
}
Term Term::falsity() {
  static const Term f = make(Sym::False, {});
  return f;
}
Term Term::neg(Term p) { return make(Sym::Not, {std::move(p)}); }
Term Term::conj(Term p, Term q) { return make(Sym::And, {std::move(p), std::move(q)}); }
Term Term::disj(Term p, Term q) { return make(Sym::Or, {std::move(p), std::move(q)}); }
Term Term::imp(Term p, Term q) { return make(Sym::Imp, {std::move(p), std::move(q)}); }
Term Term::iff(Term p, Term q) { return make(Sym::Iff, {std::move(p), std::move(q)}); }
Term Term::forall(std::string var, Term body) {
  return make(Sym::Forall, {std::move(body)}, std::move(var));
}
Term Term::exists(std::string var, Term body) {
  return make(Sym::Exists, {std::move(body)}, std::move(var));
}

std::optional<std::uint64_t> Term::numeralValue() const {
  std::uint64_t n = 0;
  const Term* cur = this;
  while (cur->is(Sym::Suc)) {
    ++n;
    cur = &cur->arg(0);
  }
  if (!cur->is(Sym::Zero)) return std::nullopt;
  return n;
}

Term mkEquation(const Term& lhs, const Term& rhs) {
  return lhs.sort() == Sort::Bool ? Term::iff(lhs, rhs) : Term::eq(lhs, rhs);
}

// ---------------------------------------------------------------------------
// alpha-equivalence and ordering

namespace {

using Binders = std::vector<std::string>;

// Index of the innermost binder of `name`, counted from the inside; -1 if free.
int binderIndex(const Binders& binders, const std::string& name) {
  for (std::size_t i = binders.size(); i-- > 0;)
    if (binders[i] == name) return static_cast<int>(binders.size() - 1 - i);
  return -1;
}

int compareRec(const Term& a, const Term& b, Binders& ba, Binders& bb) {
  if (a.sameNode(b) && ba == bb) return 0;
  if (a.sym() != b.sym()) return a.sym() < b.sym() ? -1 : 1;
  if (a.sort() != b.sort()) return a.sort() < b.sort() ? -1 : 1;
  if (a.isVar()) {
    const int ia = a.sort() == Sort::Nat ? binderIndex(ba, a.name()) : -1;
    const int ib = b.sort() == Sort::Nat ? binderIndex(bb, b.name()) : -1;
    if (ia >= 0 || ib >= 0) {
      // bound variables sort before free ones, then by depth
      if (ia < 0) return 1;
      if (ib < 0) return -1;
      return ia == ib ? 0 : (ia < ib ? -1 : 1);
    }
    const int c = a.name().compare(b.name());
    return c == 0 ? 0 : (c < 0 ? -1 : 1);
  }
  if (a.isQuantifier()) {
    ba.push_back(a.name());
    bb.push_back(b.name());
    const int c = compareRec(a.arg(0), b.arg(0), ba, bb);
    ba.pop_back();
    bb.pop_back();
    return c;
  }
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    const int c = compareRec(a.arg(i), b.arg(i), ba, bb);
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace

int compareTerms(const Term& a, const Term& b) {
  Binders ba, bb;
  return compareRec(a, b, ba, bb);
}

bool alphaEqual(const Term& a, const Term& b) {
  if (!a || !b) return !a && !b;
  return compareTerms(a, b) == 0;
}

// ---------------------------------------------------------------------------
// free variables and substitution

namespace {

void collectFree(const Term& t, Binders& bound, std::vector<Term>& out) {
  if (t.isVar()) {
    if (t.sort() == Sort::Nat && binderIndex(bound, t.name()) >= 0) return;
    for (const Term& v : out)
      if (v.name() == t.name() && v.sort() == t.sort()) return;
    out.push_back(t);
    return;
  }
  if (t.isQuantifier()) bound.push_back(t.name());
  for (const Term& c : t.args()) collectFree(c, bound, out);
  if (t.isQuantifier()) bound.pop_back();
}

void collectNames(const Term& t, std::vector<std::string>& out) {
  if (t.isVar() || t.isQuantifier()) out.push_back(t.name());
  for (const Term& c : t.args()) collectNames(c, out);
}

bool sameVar(const Term& a, const Term& b) {
  return a.name() == b.name() && a.sort() == b.sort();
}

}  // namespace

std::vector<Term> freeVars(const Term& t) {
  std::vector<Term> out;
  Binders bound;
  collectFree(t, bound, out);
  return out;
}

bool occursFree(const Term& var, const Term& t) {
  for (const Term& v : freeVars(t))
    if (sameVar(v, var)) return true;
  return false;
}

bool freeIn(std::string_view name, const Term& t) {
  for (const Term& v : freeVars(t))
    if (v.name() == name) return true;
  return false;
}

std::string freshName(std::string_view base, const std::vector<std::string>& avoid) {
  std::string name(base);
  for (int i = 1; std::find(avoid.begin(), avoid.end(), name) != avoid.end(); ++i)
    name = std::string(base) + std::to_string(i);
  return name;
}

Term substitute(const Term& t, const Substitution& sigma) {
  if (sigma.empty()) return t;
  if (t.isVar()) {
    for (const auto& [var, replacement] : sigma)
      if (sameVar(var, t)) return replacement;
    return t;
  }
  if (t.isQuantifier()) {
    // Drop entries shadowed by the binder, and entries whose variable does not
    // occur in the body at all.
    Substitution inner;
    const Term boundVar = Term::var(t.name(), Sort::Nat);
    for (const auto& entry : sigma)
      if (!sameVar(entry.first, boundVar) && occursFree(entry.first, t.arg(0)))
        inner.push_back(entry);
    if (inner.empty()) return t;
    bool captures = false;
    for (const auto& entry : inner)
      if (freeIn(t.name(), entry.second)) captures = true;
    std::string binder = t.name();
    Term body = t.arg(0);
    if (captures) {
      std::vector<std::string> avoid;
      collectNames(body, avoid);
      for (const auto& entry : inner) {
        for (const Term& v : freeVars(entry.second)) avoid.push_back(v.name());
        avoid.push_back(entry.first.name());
      }
      binder = freshName(t.name(), avoid);
      body = substitute(body, {{boundVar, Term::var(binder, Sort::Nat)}});
    }
    return Term::make(t.sym(), {substitute(body, inner)}, binder);
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& c : t.args()) {
    args.push_back(substitute(c, sigma));
    changed = changed || !args.back().sameNode(c);
  }
  return changed ? Term::make(t.sym(), std::move(args), t.name()) : t;
}

Term substitute(const Term& t, const Term& var, const Term& replacement) {
  return substitute(t, Substitution{{var, replacement}});
}

// ---------------------------------------------------------------------------
// matching

namespace {

struct Matcher {
  std::span<const Term> fixed;
  Substitution sigma;
  Binders patternBinders;
  Binders targetBinders;

  bool isMatchVar(const Term& v) const {
    if (v.sort() == Sort::Nat && binderIndex(patternBinders, v.name()) >= 0) return false;
    for (const Term& f : fixed)
      if (sameVar(f, v)) return false;
    return true;
  }

  bool mentionsTargetBinder(const Term& t) const {
    for (const Term& v : freeVars(t))
      if (v.sort() == Sort::Nat && binderIndex(targetBinders, v.name()) >= 0) return true;
    return false;
  }

  bool run(const Term& p, const Term& t) {
    if (p.isVar() && isMatchVar(p)) {
      if (p.sort() != t.sort()) return false;
      if (mentionsTargetBinder(t)) return false;
      for (const auto& [var, value] : sigma)
        if (sameVar(var, p)) return alphaEqual(value, t);
      sigma.emplace_back(p, t);
      return true;
    }
    if (p.sym() != t.sym() || p.sort() != t.sort()) return false;
    if (p.isVar()) {
      const int ip = p.sort() == Sort::Nat ? binderIndex(patternBinders, p.name()) : -1;
      const int it = t.sort() == Sort::Nat ? binderIndex(targetBinders, t.name()) : -1;
      if (ip >= 0 || it >= 0) return ip == it;
      return p.name() == t.name();
    }
    if (p.isQuantifier()) {
      patternBinders.push_back(p.name());
      targetBinders.push_back(t.name());
      const bool ok = run(p.arg(0), t.arg(0));
      patternBinders.pop_back();
      targetBinders.pop_back();
      return ok;
    }
    for (std::size_t i = 0; i < p.args().size(); ++i)
      if (!run(p.arg(i), t.arg(i))) return false;
    return true;
  }
};

}  // namespace

std::optional<Substitution> matchTerm(const Term& pattern, const Term& target,
                                      std::span<const Term> fixed) {
  Matcher m{fixed, {}, {}, {}};
  if (!m.run(pattern, target)) return std::nullopt;
  return std::move(m.sigma);
}

std::optional<Substitution> matchTerm(const Term& pattern, const Term& target) {
  return matchTerm(pattern, target, {});
}

// ---------------------------------------------------------------------------
// printing

namespace {

// Binding strength; larger binds tighter.
enum Level : int {
  kQuant = 0,
  kIff = 1,
  kImp = 2,
  kOr = 3,
  kAnd = 4,
  kNot = 5,
  kCmp = 6,
  kAdd = 7,
  kMul = 8,
  kApp = 9,
  kAtom = 10,
};

int levelOf(const Term& t) {
  if (t.numeralValue()) return kAtom;
  switch (t.sym()) {
    case Sym::Forall:
    case Sym::Exists: return kQuant;
    case Sym::Iff: return kIff;
    case Sym::Imp: return kImp;
    case Sym::Or: return kOr;
    case Sym::And: return kAnd;
    case Sym::Not: return t.arg(0).is(Sym::Eq) ? kCmp : kNot;
    case Sym::Eq:
    case Sym::Lt:
    case Sym::Le: return kCmp;
    case Sym::Add: return kAdd;
    case Sym::Mul: return kMul;
    case Sym::Suc:
    case Sym::Sum: return kApp;
    default: return kAtom;
  }
}

void print(const Term& t, int required, std::ostream& os);

void printBinary(const Term& t, std::string_view op, int level, int leftReq, int rightReq,
                 std::ostream& os) {
  print(t.arg(0), leftReq, os);
  os << ' ' << op << ' ';
  print(t.arg(1), rightReq, os);
  (void)level;
}

void printBody(const Term& t, std::ostream& os) {
  if (auto n = t.numeralValue()) {
    os << *n;
    return;
  }
  switch (t.sym()) {
    case Sym::Var: os << t.name(); return;
    case Sym::True: os << 'T'; return;
    case Sym::False: os << 'F'; return;
    case Sym::Suc:
      os << "SUC ";
      print(t.arg(0), kAtom, os);
      return;
    case Sym::Sum:
      os << "sum ";
      print(t.arg(0), kAtom, os);
      return;
    case Sym::Add: printBinary(t, "+", kAdd, kAdd, kAdd + 1, os); return;
    case Sym::Mul: printBinary(t, "*", kMul, kMul, kMul + 1, os); return;
    case Sym::Eq: printBinary(t, "=", kCmp, kAdd, kAdd, os); return;
    case Sym::Lt: printBinary(t, "<", kCmp, kAdd, kAdd, os); return;
    case Sym::Le: printBinary(t, "<=", kCmp, kAdd, kAdd, os); return;
    case Sym::Not:
      if (t.arg(0).is(Sym::Eq)) {
        print(t.arg(0).arg(0), kAdd, os);
        os << " <> ";
        print(t.arg(0).arg(1), kAdd, os);
        return;
      }
      os << '~';
      print(t.arg(0), kNot, os);
      return;
    case Sym::And: printBinary(t, "/\\", kAnd, kAnd, kAnd + 1, os); return;
    case Sym::Or: printBinary(t, "\\/", kOr, kOr, kOr + 1, os); return;
    case Sym::Imp: printBinary(t, "==>", kImp, kImp + 1, kImp, os); return;
    case Sym::Iff: printBinary(t, "<=>", kIff, kIff + 1, kIff + 1, os); return;
    case Sym::Forall:
    case Sym::Exists: {
      os << (t.is(Sym::Forall) ? '!' : '?') << t.name();
      const Term* body = &t.arg(0);
      while (body->sym() == t.sym()) {
        os << ' ' << body->name();
        body = &body->arg(0);
      }
      os << ". ";
      print(*body, kQuant, os);
      return;
    }
    case Sym::Zero: os << '0'; return;
  }
}

void print(const Term& t, int required, std::ostream& os) {
  const bool parens = levelOf(t) < required;
  if (parens) os << '(';
  printBody(t, os);
  if (parens) os << ')';
}

}  // namespace

std::string render(const Term& t) {
  if (!t) return "<null>";
  std::ostringstream os;
  print(t, kQuant, os);
  return os.str();
}

std::string render(const Substitution& sigma) {
  std::string out = "{";
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i) out += ", ";
    out += sigma[i].first.name() + " |-> " + render(sigma[i].second);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Lexeme {
  enum Kind { Ident, Number, Op, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Lexeme> lexTerm(std::string_view src) {
  static const std::vector<std::string> ops = {"==>", "<=>", "/\\", "\\/", "<>", "<=", ">=",
                                               "(",   ")",   "!",   "?",   ".",  "~",  "=",
                                               "<",   ">",   "+",   "*"};
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Lexeme::Ident, std::string(src.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Lexeme::Number, std::string(src.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const std::string& op : ops) {
      if (src.substr(i, op.size()) == op) {
        out.push_back({Lexeme::Op, op, i});
        i += op.size();
        matched = true;
        break;
      }
    }
    if (!matched)
      fail(Errc::Syntax, "unexpected character '" + std::string(1, c) + "' at " + std::to_string(i));
  }
  out.push_back({Lexeme::End, "", src.size()});
  return out;
}

// Untyped tree; sorts are assigned afterwards by `elaborate`.
struct Raw {
  enum Kind { Ident, Number, Op, Quant } kind;
  std::string text;  // identifier, numeral, operator or binder name
  std::vector<Raw> args;
  std::size_t pos;
};

class RawParser {
 public:
  explicit RawParser(std::vector<Lexeme> lex) : lex_(std::move(lex)) {}

  Raw parseAll() {
    Raw r = parseIff();
    if (peek().kind != Lexeme::End) error("unexpected '" + peek().text + "'");
    return r;
  }

 private:
  const Lexeme& peek() const { return lex_[at_]; }
  bool isOp(std::string_view op) const { return peek().kind == Lexeme::Op && peek().text == op; }
  Lexeme take() { return lex_[at_++]; }
  [[noreturn]] void error(const std::string& msg) const {
    fail(Errc::Syntax, msg + " at " + std::to_string(peek().pos));
  }
  void expect(std::string_view op) {
    if (!isOp(op)) error("expected '" + std::string(op) + "'");
    ++at_;
  }

  Raw binary(std::string op, Raw l, Raw r, std::size_t pos) {
    return Raw{Raw::Op, std::move(op), {std::move(l), std::move(r)}, pos};
  }

  Raw parseIff() {
    if (isOp("!") || isOp("?")) return parseQuant();
    Raw l = parseImp();
    if (isOp("<=>")) {
      const std::size_t pos = take().pos;
      Raw r = (isOp("!") || isOp("?")) ? parseQuant() : parseImp();
      return binary("<=>", std::move(l), std::move(r), pos);
    }
    return l;
  }

  Raw parseImp() {
    Raw l = parseOr();
    if (isOp("==>")) {
      const std::size_t pos = take().pos;
      Raw r = (isOp("!") || isOp("?")) ? parseQuant() : parseImp();
      return binary("==>", std::move(l), std::move(r), pos);
    }
    return l;
  }

  Raw parseOr() {
    Raw l = parseAnd();
    while (isOp("\\/")) {
      const std::size_t pos = take().pos;
      Raw r = (isOp("!") || isOp("?")) ? parseQuant() : parseAnd();
      l = binary("\\/", std::move(l), std::move(r), pos);
    }
    return l;
  }

  Raw parseAnd() {
    Raw l = parseNot();
    while (isOp("/\\")) {
      const std::size_t pos = take().pos;
      Raw r = (isOp("!") || isOp("?")) ? parseQuant() : parseNot();
      l = binary("/\\", std::move(l), std::move(r), pos);
    }
    return l;
  }

  Raw parseNot() {
    if (isOp("~")) {
      const std::size_t pos = take().pos;
      Raw body = (isOp("!") || isOp("?")) ? parseQuant() : parseNot();
      return Raw{Raw::Op, "~", {std::move(body)}, pos};
    }
    return parseCmp();
  }

  Raw parseQuant() {
    const Lexeme q = take();
    std::vector<Lexeme> names;
    while (peek().kind == Lexeme::Ident) names.push_back(take());
    if (names.empty()) error("expected a bound variable");
    expect(".");
    Raw body = parseIff();
    for (std::size_t i = names.size(); i-- > 0;)
      body = Raw{Raw::Quant, q.text + names[i].text, {std::move(body)}, names[i].pos};
    return body;
  }

  Raw parseCmp() {
    Raw l = parseAdd();
    for (std::string_view op : {"=", "<>", "<=", ">=", "<", ">"}) {
      if (isOp(op)) {
        const std::size_t pos = take().pos;
        Raw r = parseAdd();
        return binary(std::string(op), std::move(l), std::move(r), pos);
      }
    }
    return l;
  }

  Raw parseAdd() {
    Raw l = parseMul();
    while (isOp("+")) {
      const std::size_t pos = take().pos;
      l = binary("+", std::move(l), parseMul(), pos);
    }
    return l;
  }

  Raw parseMul() {
    Raw l = parseApp();
    while (isOp("*")) {
      const std::size_t pos = take().pos;
      l = binary("*", std::move(l), parseApp(), pos);
    }
    return l;
  }

  Raw parseApp() {
    if (peek().kind == Lexeme::Ident && (peek().text == "SUC" || peek().text == "sum")) {
      const Lexeme f = take();
      return Raw{Raw::Op, f.text, {parseApp()}, f.pos};
    }
    return parseAtom();
  }

  Raw parseAtom() {
    const Lexeme& l = peek();
    if (l.kind == Lexeme::Ident) {
      take();
      return Raw{Raw::Ident, l.text, {}, l.pos};
    }
    if (l.kind == Lexeme::Number) {
      take();
      return Raw{Raw::Number, l.text, {}, l.pos};
    }
    if (isOp("(")) {
      take();
      Raw inner = parseIff();
      expect(")");
      return inner;
    }
    if (l.kind == Lexeme::End) error("unexpected end of term");
    error("unexpected '" + l.text + "'");
  }

  std::vector<Lexeme> lex_;
  std::size_t at_ = 0;
};

class Elaborator {
 public:
  Term run(const Raw& r, Sort expected) { return elaborate(r, expected); }

 private:
  [[noreturn]] static void sortError(const Raw& r, const std::string& msg) {
    fail(Errc::Sort, msg + " at " + std::to_string(r.pos));
  }

  Term elaborate(const Raw& r, Sort expected) {
    switch (r.kind) {
      case Raw::Number: {
        if (expected != Sort::Nat) sortError(r, "numeral " + r.text + " used as a proposition");
        if (r.text.size() > 6) sortError(r, "numeral " + r.text + " too large");
        return Term::numeral(std::stoull(r.text));
      }
      case Raw::Ident: return identifier(r, expected);
      case Raw::Quant: {
        if (expected != Sort::Bool) sortError(r, "quantifier used as a number");
        const bool forall = r.text[0] == '!';
        const std::string name = r.text.substr(1);
        bound_.push_back(name);
        Term body = elaborate(r.args[0], Sort::Bool);
        bound_.pop_back();
        return forall ? Term::forall(name, body) : Term::exists(name, body);
      }
      case Raw::Op: return op(r, expected);
    }
    sortError(r, "unknown construct");
  }

  Term identifier(const Raw& r, Sort expected) {
    if (r.text == "T" || r.text == "F") {
      if (expected != Sort::Bool) sortError(r, r.text + " used as a number");
      return r.text == "T" ? Term::truth() : Term::falsity();
    }
    if (r.text == "SUC" || r.text == "sum") sortError(r, r.text + " needs an argument");
    if (std::find(bound_.begin(), bound_.end(), r.text) != bound_.end()) {
      if (expected != Sort::Nat) sortError(r, "bound variable " + r.text + " used as a proposition");
      return Term::var(r.text, Sort::Nat);
    }
    auto [it, inserted] = freeSorts_.emplace(r.text, expected);
    if (!inserted && it->second != expected)
      sortError(r, "variable " + r.text + " used at two sorts");
    return Term::var(r.text, expected);
  }

  Term op(const Raw& r, Sort expected) {
    const std::string& o = r.text;
    auto need = [&](Sort s) {
      if (expected != s)
        sortError(r, "'" + o + "' yields " + (s == Sort::Nat ? "a number" : "a proposition"));
    };
    auto nat = [&](std::size_t i) { return elaborate(r.args[i], Sort::Nat); };
    auto boolean = [&](std::size_t i) { return elaborate(r.args[i], Sort::Bool); };
    if (o == "SUC") return need(Sort::Nat), Term::suc(nat(0));
    if (o == "sum") return need(Sort::Nat), Term::sum(nat(0));
    if (o == "+") return need(Sort::Nat), Term::add(nat(0), nat(1));
    if (o == "*") return need(Sort::Nat), Term::mul(nat(0), nat(1));
    need(Sort::Bool);
    if (o == "=") return Term::eq(nat(0), nat(1));
    if (o == "<>") return Term::neg(Term::eq(nat(0), nat(1)));
    if (o == "<") return Term::lt(nat(0), nat(1));
    if (o == "<=") return Term::le(nat(0), nat(1));
    if (o == ">") {
      Term a = nat(0);
      return Term::lt(nat(1), a);
    }
    if (o == ">=") {
      Term a = nat(0);
      return Term::le(nat(1), a);
    }
    if (o == "~") return Term::neg(boolean(0));
    if (o == "/\\") return Term::conj(boolean(0), boolean(1));
    if (o == "\\/") return Term::disj(boolean(0), boolean(1));
    if (o == "==>") return Term::imp(boolean(0), boolean(1));
    if (o == "<=>") return Term::iff(boolean(0), boolean(1));
    sortError(r, "unknown operator " + o);
  }

  std::vector<std::string> bound_;
  std::map<std::string, Sort> freeSorts_;
};

}  // namespace

Term parseTerm(std::string_view source, Sort expected) {
  RawParser parser(lexTerm(source));
  const Raw raw = parser.parseAll();
  return Elaborator{}.run(raw, expected);
}

}  // namespace exemplar
