#include "exemplar/theorem_store.hpp"

#include <istream>
#include <sstream>

#include "exemplar/error.hpp"
#include "bundled_theorems.inc"

namespace exemplar {

namespace {

const std::vector<Rule> kPeanoRules = {Rule::SucInj, Rule::SucNonzero, Rule::AddZero, Rule::AddSuc,
                                       Rule::MulZero, Rule::MulSuc,     Rule::SumZero, Rule::SumSuc,
                                       Rule::LeDef,   Rule::LtDef};

// Strips leading universal quantifiers, keeping the bound names as free variables.
Thm specAllKernel(Thm thm) {
  while (thm.concl().is(Sym::Forall)) {
    const Term v = Term::var(thm.concl().name(), Sort::Nat);
    const Term args[] = {v};
    const Thm prem[] = {thm};
    thm = infer(Rule::ForallElim, prem, args);
  }
  return thm;
}

// Certifies one conjunct-free formula without admitting it, if possible.
std::optional<Thm> certifyAtom(const Term& formula) {
  for (Rule r : kPeanoRules) {
    Thm ax = specAllKernel(infer(r));
    if (alphaEqual(ax.concl(), formula)) return ax;
  }
  try {
    const Term args[] = {formula};
    return infer(Rule::Taut, {}, args);
  } catch (const Error&) {
  }
  if (formula.is(Sym::Eq)) {
    try {
      const Term args[] = {formula.arg(0), formula.arg(1)};
      return infer(Rule::NatRing, {}, args);
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

std::optional<Thm> certifyTerm(const Term& formula) {
  if (auto thm = certifyAtom(formula)) return thm;
  if (formula.is(Sym::And)) {
    auto l = certifyTerm(formula.arg(0));
    auto r = certifyTerm(formula.arg(1));
    if (l && r) {
      const Thm prem[] = {*l, *r};
      return infer(Rule::ConjIntro, prem);
    }
  }
  return std::nullopt;
}

Provenance provenanceOf(const Thm& thm) {
  switch (thm.certificate().rule) {
    case Rule::Taut: return Provenance::Tautology;
    case Rule::NatRing: return Provenance::Ring;
    case Rule::ConjIntro: return provenanceOf(thm.certificate().premises.front());
    default: return Provenance::KernelAxiom;
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string_view bundledTheoremText() { return kBundledTheorems; }

void TheoremStore::certify(const std::string& name, const Term& formula) {
  if (auto thm = certifyTerm(formula)) {
    entries_.insert_or_assign(name, Entry{*thm, provenanceOf(*thm)});
    return;
  }
  entries_.insert_or_assign(name, Entry{Kernel::admit(name, formula), Provenance::Admitted});
}

void TheoremStore::addKernelAxioms() {
  for (Rule r : kPeanoRules)
    entries_.insert_or_assign(std::string(ruleName(r)), Entry{infer(r), Provenance::KernelAxiom});
}

TheoremStore TheoremStore::parse(std::istream& in) {
  TheoremStore store;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto colon = t.find(" : ");
    if (colon == std::string::npos)
      fail(Errc::FormatError, "line " + std::to_string(lineNo) + ": expected `name : formula`");
    const std::string name = trim(t.substr(0, colon));
    if (name.empty() || name.find_first_of(" \t") != std::string::npos)
      fail(Errc::FormatError, "line " + std::to_string(lineNo) + ": bad theorem name");
    if (store.contains(name))
      fail(Errc::FormatError, "line " + std::to_string(lineNo) + ": duplicate theorem " + name);
    Term formula;
    try {
      formula = parseTerm(t.substr(colon + 3));
    } catch (const Error& e) {
      fail(Errc::FormatError, "line " + std::to_string(lineNo) + ": " + e.what());
    }
    store.certify(name, formula);
  }
  return store;
}

TheoremStore TheoremStore::bundled() {
  static const TheoremStore cached = [] {
    std::istringstream in{std::string(kBundledTheorems)};
    TheoremStore store = parse(in);
    store.addKernelAxioms();
    return store;
  }();
  return cached;
}

std::optional<Thm> TheoremStore::find(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second.thm;
}

const Thm& TheoremStore::get(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) fail(Errc::UnknownTheorem, "unknown theorem " + name, {name});
  return it->second.thm;
}

std::vector<std::string> TheoremStore::names() const {
  std::vector<std::string> out;
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

Provenance TheoremStore::provenance(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) fail(Errc::UnknownTheorem, "unknown theorem " + name, {name});
  return it->second.how;
}

void TheoremStore::add(const std::string& name, const Thm& thm, Provenance how) {
  entries_.insert_or_assign(name, Entry{thm, how});
}

}  // namespace exemplar
