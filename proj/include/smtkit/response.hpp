#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smtkit/emit.hpp"
#include "smtkit/model.hpp"
#include "smtkit/sexpr.hpp"

namespace smtkit {

enum class CheckStatus { Sat, Unsat, Unknown };

std::string_view to_string(CheckStatus status);

/// Result of a satisfiability check. `model` is present only for Sat;
/// `error` holds a solver `(error ...)` message when one was reported.
struct CheckOutcome {
  CheckStatus status = CheckStatus::Unknown;
  std::optional<Model> model;
  std::optional<std::string> error;
};

/// Names and signatures known to the reader. Built from the declarations
/// we emitted, or incrementally while reading a script.
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(std::span<const Command> decls);

  void declare(const cmd::DeclareFun& decl);
  const cmd::DeclareFun* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  bool empty() const { return table_.empty(); }

 private:
  std::map<std::string, cmd::DeclareFun, std::less<>> table_;
};

/// "sat" / "unsat" / "unknown". An `(error "...")` reply throws
/// SolverError carrying the message; anything else throws
/// UnrecognizedResponse.
CheckStatus parse_check_sat(std::string_view text);

/// If `reply` is an `(error "...")` form, returns its message.
std::optional<std::string> error_message(const SExpr& reply);

Sort parse_sort(const SExpr& e);

/// Ground value forms: numerals, decimals, (- v), (/ p q), #x/#b literals,
/// (_ bvN w), true/false. `expected` coerces Int-looking literals to Real.
/// Throws UnsupportedValueForm.
ConstVal parse_value(const SExpr& e, std::optional<Sort> expected = std::nullopt);

/// Decodes a get-model reply. Solver-internal symbols (containing '!')
/// that are not in `decls` are skipped. Entries that cannot be decoded are
/// recorded in Model::issues. Throws MalformedModel only when the reply is
/// not a list of entries at all.
Model parse_model(const SExpr& reply, const SymbolTable& decls = {});

/// Decodes a get-value reply `((t1 v1) (t2 v2) ...)`.
std::vector<std::pair<SExpr, ConstVal>> parse_get_value(const SExpr& reply);

/// Rebuilds a term from its SMT-LIB form. Constant literals such as
/// `(- 5)` and `(/ 7.0 2.0)` are read as constants. Throws
/// UnrecognizedResponse for unknown heads and UnboundName for undeclared
/// symbols; sort errors propagate from term construction.
Term parse_term(const SExpr& e, const SymbolTable& symbols);

/// Reads a script into commands. Unknown commands become cmd::Raw.
std::vector<Command> parse_script(std::string_view text);

}  // namespace smtkit
