#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smtkit/emit.hpp"
#include "smtkit/response.hpp"
#include "smtkit/term.hpp"

namespace smtkit {

/// How to launch a solver that speaks SMT-LIB 2.6 on stdin/stdout.
struct SolverConfig {
  std::string command;
  std::vector<std::string> args;
  std::chrono::milliseconds read_timeout{60'000};
  std::optional<std::string> logic;
  /// Called with every command sent and the raw reply received. Empty
  /// replies are not reported.
  std::function<void(std::string_view command, std::string_view reply)> on_exchange;

  static SolverConfig z3();
  static SolverConfig cvc5();
  /// Splits on whitespace: the first word is the program.
  static SolverConfig from_command_line(std::string_view line);
  /// SMTKIT_SOLVER when set, otherwise z3.
  static SolverConfig from_env();
};

/// Whether `config.command` names an executable file, directly or on PATH.
bool solver_available(const SolverConfig& config);

/// A live solver process. Single owner: one thread at a time may use it,
/// except that close() may be called from another thread to abort a
/// pending read. Move-only.
class Session {
 public:
  /// Spawns the solver and performs the handshake (print-success,
  /// produce-models, optional set-logic). Throws SpawnFailure,
  /// HandshakeTimeout or SolverError.
  explicit Session(SolverConfig config);
  ~Session();

  Session(Session&&) noexcept;
  Session& operator=(Session&&) noexcept;

  /// Declares any names not yet visible in the current frame, then asserts
  /// each term. Throws NonBoolAssert, SortConflict, SolverError,
  /// DeadSession.
  void assert_terms(std::span<const Term> terms);
  void assert_terms(std::initializer_list<Term> terms);

  void push(std::uint32_t n = 1);
  /// Throws StackUnderflow when n exceeds the current depth. Both throw
  /// ArityError for n = 0.
  void pop(std::uint32_t n = 1);

  /// check-sat, plus get-model when sat. Solver `(error ...)` replies are
  /// reported in CheckOutcome::error; the session stays open.
  CheckOutcome check();

  /// get-value for ground or declared terms after a sat check.
  std::vector<std::pair<SExpr, ConstVal>> get_value(std::span<const Term> terms);

  /// Sends `command_text` verbatim and returns the raw replies, one per
  /// top-level command, joined by newlines. No interpretation.
  std::string raw_send(std::string_view command_text);

  /// Sends (exit), waits briefly, then kills the process. Idempotent.
  void close() noexcept;

  bool alive() const noexcept;
  std::uint32_t stack_depth() const noexcept;
  /// Everything the solver wrote to stderr so far.
  std::string stderr_text() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline Session open_session(SolverConfig config) { return Session(std::move(config)); }

/// One-shot: fresh session, assert, check, get-model on sat, close.
CheckOutcome check(std::span<const Term> terms, const SolverConfig& config);

/// Runs an SMT-LIB file in a fresh session, appending (check-sat) when the
/// file has none, and returns the status of the last check-sat. Throws
/// FileNotFound, SolverError, ReadTimeout.
CheckStatus check_file(const std::filesystem::path& path, const SolverConfig& config);

}  // namespace smtkit
