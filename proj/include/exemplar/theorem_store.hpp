#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exemplar/kernel.hpp"

namespace exemplar {

// How a store entry was certified when the bundle was loaded.
enum class Provenance { KernelAxiom, Tautology, Ring, Admitted, Proved };

/// Name -> theorem map. Read-only once a session holds it; `run` works on a
/// copy so proved theorems can be added under their names.
class TheoremStore {
 public:
  // The bundled base set (data/theorems.txt compiled in) plus the kernel's
  // Peano axioms under their rule names.
  static TheoremStore bundled();
  // Parses `name : formula` lines. Throws Errc::FormatError with the line number.
  static TheoremStore parse(std::istream& in);

  std::optional<Thm> find(const std::string& name) const;
  const Thm& get(const std::string& name) const;  // throws Errc::UnknownTheorem
  bool contains(const std::string& name) const { return entries_.count(name) != 0; }
  std::vector<std::string> names() const;
  Provenance provenance(const std::string& name) const;

  void add(const std::string& name, const Thm& thm, Provenance how = Provenance::Proved);

 private:
  struct Entry {
    Thm thm;
    Provenance how;
  };
  void addKernelAxioms();
  void certify(const std::string& name, const Term& formula);

  std::map<std::string, Entry> entries_;
};

std::string_view bundledTheoremText();

}  // namespace exemplar
