#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace exemplar {

/// Types of tactic-level values: the five base sorts and arrows between them.
/// The registry only ever hands out the named signatures below.
class TacticType {
 public:
  enum class Kind { Tactic, Thm, ThmList, Quot, QuotList, Arrow };

  static TacticType base(Kind kind);
  static TacticType arrow(const TacticType& from, const TacticType& to);

  Kind kind() const { return kind_; }
  bool isArrow() const { return kind_ == Kind::Arrow; }
  const TacticType& from() const { return *from_; }
  const TacticType& to() const { return *to_; }

  bool operator==(const TacticType& other) const;
  // HOL-style spelling, e.g. "thm list -> tactic".
  std::string str() const;

 private:
  TacticType() = default;
  Kind kind_ = Kind::Tactic;
  std::shared_ptr<const TacticType> from_, to_;
};

namespace types {
const TacticType& TAC();
const TacticType& THM();
const TacticType& THMLIST();
const TacticType& QUOT();
const TacticType& QUOTLIST();
const TacticType& THM_TAC();
const TacticType& THMLIST_TAC();
const TacticType& TAC_TAC();
const TacticType& QUOT_TAC();
const TacticType& THMTAC_TAC();
const TacticType& TAC_TAC_TAC();
const TacticType& QUOT_THMTAC_THM_TAC();
const TacticType& QUOTLIST_THMTAC_THM_TAC();
const TacticType& QUOT_THMTAC_TAC();
}  // namespace types

// Short signature names used by the grammar, the registry and the library
// format ("TAC", "THM_TAC", ...). Empty for unnamed types.
std::string signatureName(const TacticType& type);
std::optional<TacticType> signatureByName(std::string_view name);

}  // namespace exemplar
