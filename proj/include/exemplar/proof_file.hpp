#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "exemplar/induction.hpp"
#include "exemplar/session.hpp"

namespace exemplar {

struct TheoremBlock {
  std::string name;
  std::string goal;
  std::string script;
  int line = 0;
};

struct DefStatement {
  std::string utterance;
  std::string definition;
  int line = 0;
};

struct CustomStatement {
  std::string name;
  CustomKind kind = CustomKind::Tactic;
  int line = 0;
};

using ProofItem = std::variant<TheoremBlock, DefStatement, CustomStatement>;

// Throws Errc::FormatError naming the line.
std::vector<ProofItem> parseProofFile(const std::string& text);

struct ItemReport {
  std::string kind;  // "theorem", "def" or "custom"
  std::string name;
  bool ok = false;
  std::string code;
  std::string message;
  std::string sentence;
  std::string script;  // exported script of theorem blocks
  std::string conclusion;
};

struct FileReport {
  std::vector<ItemReport> items;
  bool ok() const;
  std::string str() const;
};

// Runs every item in order on `session`; proved theorems are stored
// under their names.
FileReport runProofs(Session& session, const std::vector<ProofItem>& items);
// Throws Errc::FileNotFound / Errc::FormatError.
FileReport runFile(const std::filesystem::path& path, const std::vector<std::filesystem::path>& libraries);

}  // namespace exemplar
