#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "smtkit/term.hpp"

namespace smtkit {

namespace cmd {
struct SetOption {
  std::string key;  // without the leading ':'
  std::string value;
  friend bool operator==(const SetOption&, const SetOption&) = default;
};
struct SetLogic {
  std::string name;
  friend bool operator==(const SetLogic&, const SetLogic&) = default;
};
struct DeclareFun {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result;
  friend bool operator==(const DeclareFun&, const DeclareFun&) = default;
};
struct Assert {
  Term term;
  friend bool operator==(const Assert&, const Assert&) = default;
};
struct CheckSat {
  friend bool operator==(const CheckSat&, const CheckSat&) = default;
};
struct GetModel {
  friend bool operator==(const GetModel&, const GetModel&) = default;
};
struct GetValue {
  std::vector<Term> terms;
  friend bool operator==(const GetValue&, const GetValue&) = default;
};
struct Push {
  std::uint32_t n = 1;
  friend bool operator==(const Push&, const Push&) = default;
};
struct Pop {
  std::uint32_t n = 1;
  friend bool operator==(const Pop&, const Pop&) = default;
};
struct Exit {
  friend bool operator==(const Exit&, const Exit&) = default;
};
/// Verbatim command text, emitted unchanged.
struct Raw {
  std::string text;
  friend bool operator==(const Raw&, const Raw&) = default;
};
}  // namespace cmd

using Command = std::variant<cmd::SetOption, cmd::SetLogic, cmd::DeclareFun, cmd::Assert,
                             cmd::CheckSat, cmd::GetModel, cmd::GetValue, cmd::Push, cmd::Pop,
                             cmd::Exit, cmd::Raw>;

/// Asserted terms must be Bool; push/pop counts must be positive.
Command make_assert(Term term);
Command make_push(std::uint32_t n);
Command make_pop(std::uint32_t n);

struct EmitOptions {
  std::optional<std::string> logic;
  bool models = true;
};

std::string emit_sort(const Sort& s);
std::string emit_value(const ConstVal& v);
std::string emit_term(const Term& t);
std::string emit_command(const Command& c);

/// One DeclareFun per distinct variable and uninterpreted function, in
/// first-occurrence order (leftmost-innermost). Throws SortConflict when a
/// name is used with two different signatures.
std::vector<Command> collect_decls(std::span<const Term> terms);

/// Options, declarations and one assert per term, one command per line.
/// No check-sat is appended.
std::string script_for(std::span<const Term> terms, const EmitOptions& options = {});

/// script_for followed by "(check-sat)". Throws StreamWrite when the sink
/// rejects the write.
void save_script(std::span<const Term> terms, const EmitOptions& options, std::ostream& sink);

}  // namespace smtkit
