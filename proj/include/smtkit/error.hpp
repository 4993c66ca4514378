#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smtkit {

/// Failure categories raised by the library. Every thrown smtkit::Error
/// carries exactly one of these.
enum class Errc {
  // term construction
  InvalidSymbol,
  ReservedSymbol,
  EmptyDims,
  BitWidthOverflow,
  SortMismatch,
  ArityError,
  ExtractOutOfRange,
  // folding / evaluation
  FoldDomainError,
  EvalDomainError,
  UnboundName,
  UnsupportedTheory,
  TooManyVariables,
  SearchSpaceTooLarge,
  // emission
  SortConflict,
  NonBoolAssert,
  StreamWrite,
  // reading
  UnterminatedString,
  UnterminatedQuotedSymbol,
  UnbalancedParens,
  EmptyInput,
  UnrecognizedResponse,
  MalformedModel,
  UnsupportedValueForm,
  // solver process
  SpawnFailure,
  HandshakeTimeout,
  ReadTimeout,
  SolverError,
  FileNotFound,
  DeadSession,
  StackUnderflow,
  // input files
  InvalidGraph,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  Errc code() const noexcept { return code_; }
  /// The message without the category prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace smtkit
