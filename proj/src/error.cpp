#include "exemplar/error.hpp"

namespace exemplar {

std::string_view errcName(Errc code) {
  switch (code) {
    case Errc::Syntax: return "syntax_error";
    case Errc::Sort: return "sort_error";
    case Errc::RuleMismatch: return "rule_mismatch";
    case Errc::TacticFails: return "tactic_fails";
    case Errc::UnknownTheorem: return "unknown_theorem";
    case Errc::UnknownTactic: return "unknown_tactic";
    case Errc::OpaqueTactic: return "opaque_tactic";
    case Errc::MalformedRule: return "malformed_rule";
    case Errc::TypeMismatch: return "type_mismatch";
    case Errc::UnbalancedQuotation: return "unbalanced_quotation";
    case Errc::NoParse: return "no_parse";
    case Errc::Ambiguous: return "ambiguous";
    case Errc::DefinitionUnparsable: return "definition_unparsable";
    case Errc::DefinitionAmbiguous: return "definition_ambiguous";
    case Errc::AlreadyDefined: return "already_defined";
    case Errc::WouldBeAmbiguous: return "would_be_ambiguous";
    case Errc::DuplicateCustom: return "duplicate_custom";
    case Errc::SessionBusy: return "session_busy";
    case Errc::NoProof: return "no_proof";
    case Errc::NotUnderstood: return "not_understood";
    case Errc::NoSuchSubgoal: return "no_such_subgoal";
    case Errc::DirectiveNotSupported: return "directive_not_supported";
    case Errc::NothingToUndo: return "nothing_to_undo";
    case Errc::ProofIncomplete: return "proof_incomplete";
    case Errc::ProofAlreadyComplete: return "proof_already_complete";
    case Errc::JustificationInvalid: return "justification_invalid";
    case Errc::DuplicateLibrary: return "duplicate_library";
    case Errc::ReplayFailure: return "replay_failure";
    case Errc::FileNotFound: return "file_not_found";
    case Errc::FormatError: return "format_error";
    case Errc::IoError: return "io_error";
    case Errc::BindError: return "bind_error";
    case Errc::NoSuchSession: return "no_such_session";
  }
  return "unknown";
}

}  // namespace exemplar
