#include "exemplar/registry.hpp"

#include "exemplar/derived.hpp"
#include "exemplar/error.hpp"
#include "exemplar/theorem_store.hpp"

namespace exemplar {

namespace d = derived;
namespace tl = tacticals;

namespace {

template <class T>
const T& as(const TacticValue& value, const char* what) {
  if (const T* p = std::get_if<T>(&value.v)) return *p;
  fail(Errc::TypeMismatch, std::string("tactic value is not a ") + what);
}

TacticFn tacTac(std::function<Tactic(Tactic)> f) {
  return [f](const TacticValue& a) -> TacticValue { return f(a.tactic()); };
}

TacticFn thmTac(std::function<Tactic(const Thm&)> f) {
  return [f](const TacticValue& a) -> TacticValue { return f(a.thm()); };
}

TacticFn thmlistTac(std::function<Tactic(std::vector<Thm>)> f) {
  return [f](const TacticValue& a) -> TacticValue { return f(a.thms()); };
}

TacticFn quotTac(std::function<Tactic(const std::string&)> f) {
  return [f](const TacticValue& a) -> TacticValue { return f(a.quot()); };
}

TacticFn thmtacTac(std::function<Tactic(ThmTactic)> f) {
  return [f](const TacticValue& a) -> TacticValue { return f(a.thmTactic()); };
}

}  // namespace

const Tactic& TacticValue::tactic() const { return as<Tactic>(*this, "tactic"); }
const Thm& TacticValue::thm() const { return as<Thm>(*this, "theorem"); }
const std::vector<Thm>& TacticValue::thms() const { return as<std::vector<Thm>>(*this, "theorem list"); }
const std::string& TacticValue::quot() const { return as<std::string>(*this, "quotation"); }
const std::vector<std::string>& TacticValue::quots() const {
  return as<std::vector<std::string>>(*this, "quotation list");
}
const TacticFn& TacticValue::fn() const { return as<TacticFn>(*this, "function"); }

ThmTactic TacticValue::thmTactic() const {
  TacticFn f = fn();
  return [f](const Thm& th) { return f(TacticValue(th)).tactic(); };
}

void Registry::add(const std::string& name, const TacticType& type, std::optional<TacticValue> impl) {
  if (index_.count(name)) fail(Errc::DuplicateCustom, "tactic '" + name + "' is already registered");
  index_[name] = entries_.size();
  entries_.push_back({name, type, std::move(impl)});
}

const RegistryEntry* Registry::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::vector<std::string> Registry::namesOfType(const TacticType& type) const {
  std::vector<std::string> out;
  for (const RegistryEntry& e : entries_)
    if (e.type == type) out.push_back(e.name);
  return out;
}

Registry builtinRegistry(const TheoremStore& store) {
  using namespace types;
  auto base = std::make_shared<const SimpSet>(basicSimpSet(store));
  Registry r;

  r.add("all_tac", TAC(), TacticValue(tl::allTac()));
  r.add("NO_TAC", TAC(), TacticValue(tl::noTac()));
  r.add("gen_tac", TAC(), TacticValue(tactics::genTac()));
  r.add("strip_tac", TAC(), TacticValue(tactics::stripTac()));
  r.add("conj_tac", TAC(), TacticValue(tactics::conjTac()));
  r.add("disj1_tac", TAC(), TacticValue(tactics::disj1Tac()));
  r.add("disj2_tac", TAC(), TacticValue(tactics::disj2Tac()));
  r.add("EQ_TAC", TAC(), TacticValue(tactics::eqTac()));
  r.add("CCONTR_TAC", TAC(), TacticValue(tactics::ccontrTac()));
  r.add("DECIDE_TAC", TAC(), TacticValue(tactics::decideTac(base)));

  r.add("fs", THMLIST_TAC(), TacticValue(thmlistTac([base](std::vector<Thm> ths) { return tactics::fs(base, std::move(ths)); })));
  r.add("rw", THMLIST_TAC(), TacticValue(thmlistTac([base](std::vector<Thm> ths) { return tactics::rw(base, std::move(ths)); })));
  r.add("simp", THMLIST_TAC(), TacticValue(thmlistTac([base](std::vector<Thm> ths) { return tactics::simp(base, std::move(ths)); })));
  r.add("rewrite_tac", THMLIST_TAC(), TacticValue(thmlistTac([](std::vector<Thm> ths) { return tactics::rewriteTac(std::move(ths)); })));
  r.add("metis_tac", THMLIST_TAC(),
        TacticValue(thmlistTac([base](std::vector<Thm> ths) { return tactics::metisTac(base, std::move(ths)); })));

  r.add("assume_tac", THM_TAC(), TacticValue(thmTac(tactics::assumeTac)));
  r.add("strip_assume_tac", THM_TAC(), TacticValue(thmTac(tactics::stripAssumeTac)));
  r.add("mp_tac", THM_TAC(), TacticValue(thmTac(tactics::mpTac)));
  r.add("irule", THM_TAC(), TacticValue(thmTac(tactics::irule)));
  r.add("imp_res_tac", THM_TAC(), TacticValue(thmTac(tactics::impResTac)));

  r.add("rpt", TAC_TAC(), TacticValue(tacTac(tl::repeat)));
  r.add("TRY", TAC_TAC(), TacticValue(tacTac(tl::tryTac)));

  r.add("Induct_on", QUOT_TAC(), TacticValue(quotTac(tactics::inductOn)));
  r.add("Cases_on", QUOT_TAC(), TacticValue(quotTac(tactics::casesOn)));
  r.add("qexists_tac", QUOT_TAC(), TacticValue(quotTac(tactics::qexistsTac)));

  r.add("first_x_assum", THMTAC_TAC(), TacticValue(thmtacTac(tactics::firstXAssum)));
  r.add("pop_assum", THMTAC_TAC(), TacticValue(thmtacTac(tactics::popAssum)));

  r.add("THEN1", TAC_TAC_TAC(), TacticValue(TacticFn([](const TacticValue& a) -> TacticValue {
          Tactic first = a.tactic();
          return tacTac([first](Tactic second) { return tl::then1(first, second); });
        })));

  r.add("qpat_x_assum", QUOT_THMTAC_TAC(), TacticValue(TacticFn([](const TacticValue& q) -> TacticValue {
          std::string pattern = q.quot();
          return thmtacTac([pattern](ThmTactic ttac) { return tactics::qpatXAssum(pattern, ttac); });
        })));

  r.add("qspec_then", QUOT_THMTAC_THM_TAC(), TacticValue(TacticFn([](const TacticValue& q) -> TacticValue {
          std::string quot = q.quot();
          return TacticFn([quot](const TacticValue& tt) -> TacticValue {
            ThmTactic ttac = tt.thmTactic();
            return thmTac([quot, ttac](const Thm& th) { return tactics::qspecThen(quot, ttac, th); });
          });
        })));

  r.add("qspecl_then", QUOTLIST_THMTAC_THM_TAC(), TacticValue(TacticFn([](const TacticValue& q) -> TacticValue {
          std::vector<std::string> quots = q.quots();
          return TacticFn([quots](const TacticValue& tt) -> TacticValue {
            ThmTactic ttac = tt.thmTactic();
            return thmTac([quots, ttac](const Thm& th) { return tactics::qspeclThen(quots, ttac, th); });
          });
        })));

  return r;
}

std::optional<TacticValue> knownCustom(const std::string& name, const TacticType& type, const TheoremStore& store) {
  if (type != types::TAC()) return std::nullopt;
  if (name == "NAT_ASM_ARITH_TAC" || name == "ARITH_TAC") {
    return TacticValue(tactics::decideTac(std::make_shared<const SimpSet>(basicSimpSet(store))));
  }
  return std::nullopt;
}

Thm gsymThm(const Thm& th) {
  const Term& c = th.concl();
  switch (c.sym()) {
    case Sym::Eq:
    case Sym::Iff: return d::sym(th);
    case Sym::Forall: {
      std::vector<std::string> avoid = d::thmVarNames(th);
      const Term v = Term::var(freshName(c.name(), avoid), Sort::Nat);
      return d::gen(v, gsymThm(d::spec(v, th)));
    }
    case Sym::And: {
      auto parts = d::conjuncts(th);
      Thm out = gsymThm(parts.back());
      for (std::size_t i = parts.size() - 1; i-- > 0;) out = d::conj(gsymThm(parts[i]), out);
      return out;
    }
    case Sym::Imp: {
      const Term& a = c.arg(0);
      return d::disch(a, gsymThm(d::mp(th, d::assume(a))));
    }
    default: return th;
  }
}

TacticValue evalTacticExpr(const TacticExpr& expr, const Registry& registry, const TheoremStore& store) {
  switch (expr.kind()) {
    case TacticExpr::Kind::Lookup: {
      const RegistryEntry* e = registry.find(expr.name());
      if (!e) fail(Errc::UnknownTactic, "unknown tactic '" + expr.name() + "'");
      if (!e->impl) fail(Errc::OpaqueTactic, "tactic '" + expr.name() + "' has no implementation");
      return *e->impl;
    }
    case TacticExpr::Kind::ThmRef: return TacticValue(store.get(expr.name()));
    case TacticExpr::Kind::Gsym: return TacticValue(gsymThm(evalTacticExpr(expr.child(0), registry, store).thm()));
    case TacticExpr::Kind::ThmList: {
      std::vector<Thm> ths;
      for (const TacticExpr& c : expr.children()) ths.push_back(evalTacticExpr(c, registry, store).thm());
      return TacticValue(std::move(ths));
    }
    case TacticExpr::Kind::Quot: return TacticValue(expr.name());
    case TacticExpr::Kind::QuotList: return TacticValue(expr.texts());
    case TacticExpr::Kind::Apply: {
      TacticValue fn = evalTacticExpr(expr.child(0), registry, store);
      return fn(evalTacticExpr(expr.child(1), registry, store));
    }
    case TacticExpr::Kind::Infix: {
      const TacticValue lhs = evalTacticExpr(expr.child(0), registry, store);
      const Tactic rhs = evalTacticExpr(expr.child(1), registry, store).tactic();
      switch (expr.op()) {
        case InfixOp::Then: return TacticValue(tl::then(lhs.tactic(), rhs));
        case InfixOp::ThenLt: return TacticValue(tl::thenFirst(lhs.tactic(), rhs));
        case InfixOp::Orelse: return TacticValue(tl::orelse(lhs.tactic(), rhs));
        case InfixOp::By: return TacticValue(tactics::by(lhs.quot(), rhs));
        case InfixOp::SufficesBy: return TacticValue(tactics::sufficesBy(lhs.quot(), rhs));
      }
      break;
    }
    case TacticExpr::Kind::Hole: fail(Errc::TypeMismatch, "cannot evaluate an unfilled hole");
  }
  fail(Errc::TypeMismatch, "malformed tactic expression");
}

}  // namespace exemplar
