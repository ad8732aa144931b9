#include "exemplar/arith.hpp"

#include <algorithm>
#include <limits>

#include "exemplar/error.hpp"

namespace exemplar::arith {

namespace {

std::uint64_t checkedAdd(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    fail(Errc::RuleMismatch, "arithmetic overflow");
  return a + b;
}

std::uint64_t checkedMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    fail(Errc::RuleMismatch, "arithmetic overflow");
  return a * b;
}

}  // namespace

Polynomial Polynomial::constant(std::uint64_t c) {
  Polynomial p;
  if (c != 0) p.coeffs_[{}] = c;
  return p;
}

Polynomial Polynomial::atom(const std::string& key, const Term& term) {
  Polynomial p;
  p.coeffs_[{key}] = 1;
  p.atoms_.emplace(key, term);
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [mono, c] : other.coeffs_) out.coeffs_[mono] = checkedAdd(out.coeffs_[mono], c);
  out.atoms_.insert(other.atoms_.begin(), other.atoms_.end());
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out;
  for (const auto& [ma, ca] : coeffs_) {
    for (const auto& [mb, cb] : other.coeffs_) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      out.coeffs_[m] = checkedAdd(out.coeffs_[m], checkedMul(ca, cb));
    }
  }
  out.atoms_ = atoms_;
  out.atoms_.insert(other.atoms_.begin(), other.atoms_.end());
  return out;
}

std::optional<std::uint64_t> Polynomial::constantValue() const {
  if (coeffs_.empty()) return 0;
  if (coeffs_.size() == 1 && coeffs_.begin()->first.empty()) return coeffs_.begin()->second;
  return std::nullopt;
}

std::optional<Polynomial> Polynomial::subtractFrom(const Polynomial& other) const {
  Polynomial out;
  out.atoms_ = other.atoms_;
  out.coeffs_ = other.coeffs_;
  for (const auto& [mono, c] : coeffs_) {
    auto it = out.coeffs_.find(mono);
    if (it == out.coeffs_.end() || it->second < c) return std::nullopt;
    it->second -= c;
    if (it->second == 0) out.coeffs_.erase(it);
  }
  return out;
}

std::string Polynomial::key() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [mono, c] : coeffs_) {
    if (!out.empty()) out += " + ";
    out += std::to_string(c);
    for (const std::string& a : mono) out += "*" + a;
  }
  return out;
}

Term Polynomial::toTerm() const {
  Term result;
  for (const auto& [mono, c] : coeffs_) {
    Term m;
    for (const std::string& a : mono) {
      const Term& t = atoms_.at(a);
      m = m ? Term::mul(m, t) : t;
    }
    if (!m) {
      m = Term::numeral(c);
    } else if (c != 1) {
      m = Term::mul(Term::numeral(c), m);
    }
    result = result ? Term::add(result, m) : m;
  }
  return result ? result : Term::zero();
}

Polynomial normalize(const Term& t) {
  if (auto n = t.numeralValue()) return Polynomial::constant(*n);
  switch (t.sym()) {
    case Sym::Var: return Polynomial::atom("v:" + t.name(), t);
    case Sym::Zero: return Polynomial::constant(0);
    case Sym::Suc: return normalize(t.arg(0)) + Polynomial::constant(1);
    case Sym::Add: return normalize(t.arg(0)) + normalize(t.arg(1));
    case Sym::Mul: return normalize(t.arg(0)) * normalize(t.arg(1));
    case Sym::Sum: {
      const Polynomial inner = normalize(t.arg(0));
      if (auto c = inner.constantValue()) {
        // sum k = k * (k + 1) / 2, computed without overflowing the product
        const std::uint64_t k = *c;
        const std::uint64_t v = (k % 2 == 0) ? checkedMul(k / 2, k + 1) : checkedMul(k, (k + 1) / 2);
        return Polynomial::constant(v);
      }
      return Polynomial::atom("sum(" + inner.key() + ")", t);
    }
    default: break;
  }
  fail(Errc::RuleMismatch, "not a number: " + render(t));
}

std::optional<std::uint64_t> evaluate(const Term& t) {
  if (!freeVars(t).empty()) return std::nullopt;
  return normalize(t).constantValue();
}

std::optional<bool> decideGround(const Term& atom) {
  if (!(atom.is(Sym::Eq) || atom.is(Sym::Lt) || atom.is(Sym::Le))) return std::nullopt;
  const auto a = evaluate(atom.arg(0));
  const auto b = evaluate(atom.arg(1));
  if (!a || !b) return std::nullopt;
  switch (atom.sym()) {
    case Sym::Eq: return *a == *b;
    case Sym::Lt: return *a < *b;
    default: return *a <= *b;
  }
}

}  // namespace exemplar::arith
