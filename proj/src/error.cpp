#include "smtkit/error.hpp"

namespace smtkit {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidSymbol: return "InvalidSymbol";
    case Errc::ReservedSymbol: return "ReservedSymbol";
    case Errc::EmptyDims: return "EmptyDims";
    case Errc::BitWidthOverflow: return "BitWidthOverflow";
    case Errc::SortMismatch: return "SortMismatch";
    case Errc::ArityError: return "ArityError";
    case Errc::ExtractOutOfRange: return "ExtractOutOfRange";
    case Errc::FoldDomainError: return "FoldDomainError";
    case Errc::EvalDomainError: return "EvalDomainError";
    case Errc::UnboundName: return "UnboundName";
    case Errc::UnsupportedTheory: return "UnsupportedTheory";
    case Errc::TooManyVariables: return "TooManyVariables";
    case Errc::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case Errc::SortConflict: return "SortConflict";
    case Errc::NonBoolAssert: return "NonBoolAssert";
    case Errc::StreamWrite: return "StreamWrite";
    case Errc::UnterminatedString: return "UnterminatedString";
    case Errc::UnterminatedQuotedSymbol: return "UnterminatedQuotedSymbol";
    case Errc::UnbalancedParens: return "UnbalancedParens";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::UnrecognizedResponse: return "UnrecognizedResponse";
    case Errc::MalformedModel: return "MalformedModel";
    case Errc::UnsupportedValueForm: return "UnsupportedValueForm";
    case Errc::SpawnFailure: return "SpawnFailure";
    case Errc::HandshakeTimeout: return "HandshakeTimeout";
    case Errc::ReadTimeout: return "ReadTimeout";
    case Errc::SolverError: return "SolverError";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::DeadSession: return "DeadSession";
    case Errc::StackUnderflow: return "StackUnderflow";
    case Errc::InvalidGraph: return "InvalidGraph";
  }
  return "Unknown";
}

}  // namespace smtkit
