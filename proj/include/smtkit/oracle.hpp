#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smtkit/model.hpp"
#include "smtkit/response.hpp"
#include "smtkit/term.hpp"

namespace smtkit::oracle {

// Reference semantics used to check the rest of the library. The
// arithmetic here is written independently of fold_const: bitvectors are
// evaluated bit by bit, integer division from floor/ceil quotients.

/// Value of `t` under `m`. Only the taken branch of an ite is evaluated.
/// Throws UnboundName for a variable or function missing from `m`, and
/// EvalDomainError for a zero divisor in div, mod or /.
ConstVal evaluate(const Term& t, const Model& m);

/// Distinct variables of `terms`, sorted by name. Throws SortConflict if a
/// name occurs with two sorts.
std::vector<std::pair<std::string, Sort>> free_variables(std::span<const Term> terms);

/// Truth table of a Core-only Boolean term over `vars`. Row k assigns
/// variable i the bit (n-1-i) of k, so the first variable is the most
/// significant and false precedes true. Throws UnsupportedTheory or
/// TooManyVariables (> 20).
std::vector<bool> truth_table(const Term& t, std::span<const std::string> vars);

inline constexpr std::size_t kMaxBruteForceVars = 20;

/// Exhaustive truth-table search over the terms' Boolean variables in
/// lexicographic order, false before true. Returns the first satisfying
/// assignment (every variable bound) or Unsat.
CheckOutcome brute_force_sat(std::span<const Term> terms);

/// Candidate values per variable, enumerated in map (name) order with the
/// last variable varying fastest.
using DomainSpec = std::map<std::string, std::vector<ConstVal>>;

inline constexpr std::size_t kMaxEnumeration = 1'000'000;

/// Every assignment over `domains` under which all terms are true.
/// Throws UnboundName, SortMismatch, EmptyDims (empty domain) or
/// SearchSpaceTooLarge.
std::vector<Model> enumerate_models(std::span<const Term> terms, const DomainSpec& domains);

}  // namespace smtkit::oracle
