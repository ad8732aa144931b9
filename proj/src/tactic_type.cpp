#include "exemplar/tactic_type.hpp"

#include <array>
#include <utility>

namespace exemplar {

TacticType TacticType::base(Kind kind) {
  TacticType t;
  t.kind_ = kind;
  return t;
}

TacticType TacticType::arrow(const TacticType& from, const TacticType& to) {
  TacticType t;
  t.kind_ = Kind::Arrow;
  t.from_ = std::make_shared<const TacticType>(from);
  t.to_ = std::make_shared<const TacticType>(to);
  return t;
}

bool TacticType::operator==(const TacticType& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ != Kind::Arrow) return true;
  return *from_ == *other.from_ && *to_ == *other.to_;
}

std::string TacticType::str() const {
  switch (kind_) {
    case Kind::Tactic: return "tactic";
    case Kind::Thm: return "thm";
    case Kind::ThmList: return "thm list";
    case Kind::Quot: return "term quotation";
    case Kind::QuotList: return "term quotation list";
    case Kind::Arrow: break;
  }
  std::string lhs = from_->str();
  if (from_->isArrow()) lhs = "(" + lhs + ")";
  return lhs + " -> " + to_->str();
}

namespace types {

namespace {
using K = TacticType::Kind;
TacticType arr(const TacticType& a, const TacticType& b) { return TacticType::arrow(a, b); }
}  // namespace

const TacticType& TAC() { static const TacticType t = TacticType::base(K::Tactic); return t; }
const TacticType& THM() { static const TacticType t = TacticType::base(K::Thm); return t; }
const TacticType& THMLIST() { static const TacticType t = TacticType::base(K::ThmList); return t; }
const TacticType& QUOT() { static const TacticType t = TacticType::base(K::Quot); return t; }
const TacticType& QUOTLIST() { static const TacticType t = TacticType::base(K::QuotList); return t; }
const TacticType& THM_TAC() { static const TacticType t = arr(THM(), TAC()); return t; }
const TacticType& THMLIST_TAC() { static const TacticType t = arr(THMLIST(), TAC()); return t; }
const TacticType& TAC_TAC() { static const TacticType t = arr(TAC(), TAC()); return t; }
const TacticType& QUOT_TAC() { static const TacticType t = arr(QUOT(), TAC()); return t; }
const TacticType& THMTAC_TAC() { static const TacticType t = arr(THM_TAC(), TAC()); return t; }
const TacticType& TAC_TAC_TAC() { static const TacticType t = arr(TAC(), TAC_TAC()); return t; }
const TacticType& QUOT_THMTAC_THM_TAC() {
  static const TacticType t = arr(QUOT(), arr(THM_TAC(), THM_TAC()));
  return t;
}
const TacticType& QUOTLIST_THMTAC_THM_TAC() {
  static const TacticType t = arr(QUOTLIST(), arr(THM_TAC(), THM_TAC()));
  return t;
}
const TacticType& QUOT_THMTAC_TAC() { static const TacticType t = arr(QUOT(), THMTAC_TAC()); return t; }

}  // namespace types

namespace {

const std::array<std::pair<const char*, const TacticType& (*)()>, 14>& table() {
  static const std::array<std::pair<const char*, const TacticType& (*)()>, 14> t = {{
      {"TAC", &types::TAC},
      {"THM", &types::THM},
      {"THMLIST", &types::THMLIST},
      {"QUOT", &types::QUOT},
      {"QUOTLIST", &types::QUOTLIST},
      {"THM_TAC", &types::THM_TAC},
      {"THMLIST_TAC", &types::THMLIST_TAC},
      {"TAC_TAC", &types::TAC_TAC},
      {"QUOT_TAC", &types::QUOT_TAC},
      {"THMTAC_TAC", &types::THMTAC_TAC},
      {"TAC_TAC_TAC", &types::TAC_TAC_TAC},
      {"QUOT_THMTAC_THM_TAC", &types::QUOT_THMTAC_THM_TAC},
      {"QUOTLIST_THMTAC_THM_TAC", &types::QUOTLIST_THMTAC_THM_TAC},
      {"QUOT_THMTAC_TAC", &types::QUOT_THMTAC_TAC},
  }};
  return t;
}

}  // namespace

std::string signatureName(const TacticType& type) {
  for (const auto& [name, get] : table())
    if (get() == type) return name;
  return {};
}

std::optional<TacticType> signatureByName(std::string_view name) {
  for (const auto& [n, get] : table())
    if (name == n) return get();
  return std::nullopt;
}

}  // namespace exemplar
