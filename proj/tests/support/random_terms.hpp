#pragma once

#include <random>
#include <string>
#include <vector>

#include "smtkit/term.hpp"

namespace smtkit::testutil {

/// Random Core-only Boolean terms built without constant folding, so the
/// simplifier has double negations, nested and/or and constant subterms
/// to work on.
class RandomBoolTerms {
 public:
  RandomBoolTerms(std::uint32_t seed, int max_vars, int max_depth)
      : rng_(seed), max_depth_(max_depth) {
    for (int i = 0; i < max_vars; ++i) vars_.push_back(mk_var("p" + std::to_string(i), Sort::boolean()));
  }

  Term next() { return gen(max_depth_); }

  const std::vector<Term>& vars() const { return vars_; }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Term leaf() {
    if (pick(8) == 0) return pick(2) ? mk_true() : mk_false();
    return vars_[static_cast<std::size_t>(pick(static_cast<int>(vars_.size())))];
  }

  Term gen(int depth) {
    if (depth <= 0 || pick(5) == 0) return leaf();
    switch (pick(9)) {
      case 0: return mk_app_raw(Op::Not, {gen(depth - 1)});
      case 1: return mk_app_raw(Op::Not, {mk_app_raw(Op::Not, {gen(depth - 1)})});
      case 2: case 3: return nary(Op::And, depth);
      case 4: case 5: return nary(Op::Or, depth);
      case 6: return mk_app_raw(pick(2) ? Op::Xor : Op::Implies, {gen(depth - 1), gen(depth - 1)});
      case 7: return mk_app_raw(pick(2) ? Op::Iff : Op::Distinct, {gen(depth - 1), gen(depth - 1)});
      default: return mk_app_raw(Op::Ite, {gen(depth - 1), gen(depth - 1), gen(depth - 1)});
    }
  }

  Term nary(Op op, int depth) {
    std::vector<Term> args;
    const int n = 2 + pick(2);
    for (int i = 0; i < n; ++i) args.push_back(gen(depth - 1));
    return mk_app_raw(op, args);
  }

  std::mt19937 rng_;
  int max_depth_;
  std::vector<Term> vars_;
};

}  // namespace smtkit::testutil
