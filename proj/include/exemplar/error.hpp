#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exemplar {

// One code per failure mode that crosses a module boundary. The HTTP layer
// maps these one-to-one onto its error taxonomy.
enum class Errc {
  Syntax,
  Sort,
  RuleMismatch,
  TacticFails,
  UnknownTheorem,
  UnknownTactic,
  OpaqueTactic,
  MalformedRule,
  TypeMismatch,
  UnbalancedQuotation,
  NoParse,
  Ambiguous,
  DefinitionUnparsable,
  DefinitionAmbiguous,
  AlreadyDefined,
  WouldBeAmbiguous,
  DuplicateCustom,
  SessionBusy,
  NoProof,
  NotUnderstood,
  NoSuchSubgoal,
  DirectiveNotSupported,
  NothingToUndo,
  ProofIncomplete,
  ProofAlreadyComplete,
  JustificationInvalid,
  DuplicateLibrary,
  ReplayFailure,
  FileNotFound,
  FormatError,
  IoError,
  BindError,
  NoSuchSession,
};

std::string_view errcName(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  Errc code() const noexcept { return code_; }
  // Extra payload: ambiguous renderings, the offending sentence, etc.
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  Errc code_;
  std::vector<std::string> details_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message,
                              std::vector<std::string> details = {}) {
  throw Error(code, message, std::move(details));
}

}  // namespace exemplar
