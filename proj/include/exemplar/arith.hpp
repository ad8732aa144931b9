#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exemplar/term.hpp"

namespace exemplar::arith {

// A commutative-semiring normal form of a nat term: a sum of monomials with
// positive coefficients. Atoms are variables and `sum` applications whose
// argument is not ground; an atom is keyed by the printed normal form of its
// argument so that equal atoms coincide.
class Polynomial {
 public:
  using Monomial = std::vector<std::string>;  // sorted atom keys, repeated for powers

  static Polynomial constant(std::uint64_t c);
  static Polynomial atom(const std::string& key, const Term& term);

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  bool operator==(const Polynomial& other) const { return coeffs_ == other.coeffs_; }

  std::optional<std::uint64_t> constantValue() const;
  // other - *this when every coefficient of the result is non-negative.
  std::optional<Polynomial> subtractFrom(const Polynomial& other) const;

  std::string key() const;
  Term toTerm() const;

 private:
  std::map<Monomial, std::uint64_t> coeffs_;
  std::map<std::string, Term> atoms_;
};

Polynomial normalize(const Term& natTerm);

// Value of a variable-free nat term.
std::optional<std::uint64_t> evaluate(const Term& natTerm);

// Truth value of an EQ/LT/LE atom between variable-free terms.
std::optional<bool> decideGround(const Term& atom);

}  // namespace exemplar::arith
