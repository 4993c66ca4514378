#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smtkit/error.hpp"
#include "smtkit/sort.hpp"
#include "smtkit/value.hpp"

namespace smtkit {

/// Point-wise interpretation of an uninterpreted function: explicit cases
/// checked in order, then a default.
struct FuncInterp {
  struct Case {
    std::vector<ConstVal> args;
    ConstVal result;
    friend bool operator==(const Case&, const Case&) = default;
  };

  std::vector<std::pair<std::string, Sort>> params;
  std::vector<Case> cases;
  ConstVal fallback = ConstVal::boolean(false);

  const ConstVal& apply(std::span<const ConstVal> args) const;

  friend bool operator==(const FuncInterp&, const FuncInterp&) = default;
};

/// A satisfying assignment. Entries the reader could not decode are kept
/// in `issues` instead of failing the whole model.
struct Model {
  struct Issue {
    Errc code;
    std::string message;
  };

  std::map<std::string, ConstVal, std::less<>> consts;
  std::map<std::string, FuncInterp, std::less<>> funcs;
  std::map<std::string, Issue, std::less<>> issues;

  const ConstVal* find_const(std::string_view name) const;
  const FuncInterp* find_func(std::string_view name) const;
  bool complete() const { return issues.empty(); }
};

}  // namespace smtkit
