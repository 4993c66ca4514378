#pragma once

#include <span>

#include "smtkit/term.hpp"
#include "smtkit/value.hpp"

namespace smtkit {

/// Exact evaluation of one operator over constant operands. Int operands
/// are promoted when mixed with Real ones. Integer div/mod follow the
/// Euclidean convention; bitvector arithmetic wraps modulo 2^width.
/// Throws FoldDomainError on a zero divisor for rdiv, div and mod.
ConstVal fold_const(OpKind op, std::span<const ConstVal> args);

/// Rewrites `t` to a fixpoint of: double-negation elimination,
/// and/or flattening (operand order preserved), constant folding, and
/// Boolean absorption / neutral-element removal. The result has the same
/// sort and meaning as `t`.
Term simplify(const Term& t);

}  // namespace smtkit
