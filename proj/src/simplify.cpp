#include "smtkit/simplify.hpp"

#include <algorithm>

#include "smtkit/error.hpp"

namespace smtkit {

namespace {

Rational to_rational(const ConstVal& v) {
  return v.is_real() ? v.as_real() : Rational(v.as_int());
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
  // den > 0
  if (num >= 0) return num / den;
  return -((-num + den - 1) / den);
}

// Euclidean remainder: 0 <= r < |divisor|.
BigInt euclid_mod(const BigInt& m, const BigInt& n) {
  BigInt r = m % n;  // sign follows m
  if (r < 0) r += abs(n);
  return r;
}

BigInt euclid_div(const BigInt& m, const BigInt& n) { return (m - euclid_mod(m, n)) / n; }

BigInt arith_shift_right(const BigInt& s, unsigned amount) {
  if (s >= 0) return s >> amount;
  BigInt neg = -s - 1;
  return -(neg >> amount) - 1;
}

bool compare(Op op, const Rational& a, const Rational& b) {
  switch (op) {
    case Op::Lt: return a < b;
    case Op::Le: return a <= b;
    case Op::Gt: return a > b;
    default: return a >= b;
  }
}

bool compare_int(Op op, const BigInt& a, const BigInt& b) {
  switch (op) {
    case Op::Lt: case Op::BvUlt: case Op::BvSlt: return a < b;
    case Op::Le: case Op::BvUle: case Op::BvSle: return a <= b;
    case Op::Gt: case Op::BvUgt: case Op::BvSgt: return a > b;
    default: return a >= b;
  }
}

[[noreturn]] void domain_error(Op op) {
  throw Error(Errc::FoldDomainError, std::string(op_symbol(op)) + " by zero");
}

ConstVal fold_numeric(OpKind op, std::span<const ConstVal> args, bool real) {
  auto make = [real](const Rational& r) {
    return real ? ConstVal::real(r) : ConstVal::integer(numerator(r));
  };
  switch (op.op) {
    case Op::Add: {
      Rational acc = 0;
      for (const ConstVal& a : args) acc += to_rational(a);
      return make(acc);
    }
    case Op::Mul: {
      Rational acc = 1;
      for (const ConstVal& a : args) acc *= to_rational(a);
      return make(acc);
    }
    case Op::Sub: {
      Rational acc = to_rational(args[0]);
      for (std::size_t i = 1; i < args.size(); ++i) acc -= to_rational(args[i]);
      return make(acc);
    }
    case Op::Neg: return make(-to_rational(args[0]));
    case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
      return ConstVal::boolean(compare(op.op, to_rational(args[0]), to_rational(args[1])));
    default: break;
  }
  throw Error(Errc::SortMismatch, "not a numeric operator");
}

ConstVal fold_bitvec(OpKind op, std::span<const ConstVal> args) {
  const BitVecValue& x = args[0].as_bitvec();
  const std::uint32_t w = x.width;
  auto wrap = [w](const BigInt& v) { return ConstVal::bitvec(BitVecValue::wrap(v, w)); };
  switch (op.op) {
    case Op::BvNot: return wrap(pow2(w) - 1 - x.value);
    case Op::BvNeg: return wrap(-x.value);
    case Op::Extract: {
      BigInt shifted = x.value >> op.p1;
      return ConstVal::bitvec(BitVecValue::wrap(shifted, op.p0 - op.p1 + 1));
    }
    case Op::ZeroExtend: return ConstVal::bitvec(BitVecValue{x.value, w + op.p0});
    case Op::SignExtend: return ConstVal::bitvec(BitVecValue::wrap(x.as_signed(), w + op.p0));
    default: break;
  }
  const BitVecValue& y = args[1].as_bitvec();
  switch (op.op) {
    case Op::Concat:
      return ConstVal::bitvec(BitVecValue{(x.value << y.width) | y.value, w + y.width});
    case Op::BvAnd: return wrap(x.value & y.value);
    case Op::BvOr: return wrap(x.value | y.value);
    case Op::BvXor: return wrap(x.value ^ y.value);
    case Op::BvAdd: return wrap(x.value + y.value);
    case Op::BvSub: return wrap(x.value - y.value);
    case Op::BvMul: return wrap(x.value * y.value);
    case Op::BvUdiv: return y.value == 0 ? wrap(pow2(w) - 1) : wrap(x.value / y.value);
    case Op::BvUrem: return y.value == 0 ? wrap(x.value) : wrap(x.value % y.value);
    case Op::BvShl:
      return y.value >= w ? wrap(0) : wrap(x.value << static_cast<unsigned>(y.value));
    case Op::BvLshr:
      return y.value >= w ? wrap(0) : wrap(x.value >> static_cast<unsigned>(y.value));
    case Op::BvAshr: {
      const BigInt s = x.as_signed();
      if (y.value >= w) return wrap(s < 0 ? BigInt(-1) : BigInt(0));
      return wrap(arith_shift_right(s, static_cast<unsigned>(y.value)));
    }
    case Op::BvUlt: case Op::BvUle: case Op::BvUgt: case Op::BvUge:
      return ConstVal::boolean(compare_int(op.op, x.value, y.value));
    case Op::BvSlt: case Op::BvSle: case Op::BvSgt: case Op::BvSge:
      return ConstVal::boolean(compare_int(op.op, x.as_signed(), y.as_signed()));
    default: break;
  }
  throw Error(Errc::SortMismatch, "not a bitvector operator");
}

}  // namespace

ConstVal fold_const(OpKind op, std::span<const ConstVal> raw) {
  std::vector<ConstVal> args(raw.begin(), raw.end());

  // Int -> Real promotion mirrors mk_app.
  bool mixed = false;
  switch (op.op) {
    case Op::Add: case Op::Sub: case Op::Mul: case Op::Lt: case Op::Le: case Op::Gt:
    case Op::Ge: case Op::Eq: case Op::Distinct:
      mixed = std::any_of(args.begin(), args.end(), [](const ConstVal& v) { return v.is_real(); });
      break;
    case Op::RealDiv: mixed = true; break;
    case Op::Ite:
      mixed = args.size() == 3 && (args[1].is_real() || args[2].is_real());
      break;
    default: break;
  }
  if (mixed) {
    for (std::size_t i = (op.op == Op::Ite ? 1 : 0); i < args.size(); ++i) {
      if (args[i].is_int()) args[i] = ConstVal::real(Rational(args[i].as_int()));
    }
  }

  std::vector<Sort> sorts;
  for (const ConstVal& v : args) sorts.push_back(v.sort());
  const Sort result = result_sort(op, sorts);

  switch (op.op) {
    case Op::Not: return ConstVal::boolean(!args[0].as_bool());
    case Op::And:
      return ConstVal::boolean(
          std::all_of(args.begin(), args.end(), [](const ConstVal& v) { return v.as_bool(); }));
    case Op::Or:
      return ConstVal::boolean(
          std::any_of(args.begin(), args.end(), [](const ConstVal& v) { return v.as_bool(); }));
    case Op::Xor: {
      bool acc = false;
      for (const ConstVal& v : args) acc = acc != v.as_bool();
      return ConstVal::boolean(acc);
    }
    case Op::Implies: return ConstVal::boolean(!args[0].as_bool() || args[1].as_bool());
    case Op::Iff:
    case Op::Eq: return ConstVal::boolean(args[0] == args[1]);
    case Op::Distinct:
      for (std::size_t i = 0; i < args.size(); ++i) {
        for (std::size_t j = i + 1; j < args.size(); ++j) {
          if (args[i] == args[j]) return ConstVal::boolean(false);
        }
      }
      return ConstVal::boolean(true);
    case Op::Ite: return args[0].as_bool() ? args[1] : args[2];

    case Op::Add: case Op::Sub: case Op::Mul: case Op::Neg: case Op::Lt: case Op::Le:
    case Op::Gt: case Op::Ge:
      return fold_numeric(op, args, result.is_real() || args[0].is_real());
    case Op::Abs: return ConstVal::integer(abs(args[0].as_int()));
    case Op::IntDiv:
    case Op::Mod: {
      const BigInt& d = args[1].as_int();
      if (d == 0) domain_error(op.op);
      return ConstVal::integer(op.op == Op::IntDiv ? euclid_div(args[0].as_int(), d)
                                                   : euclid_mod(args[0].as_int(), d));
    }
    case Op::RealDiv: {
      const Rational& d = args[1].as_real();
      if (d == 0) domain_error(op.op);
      return ConstVal::real(args[0].as_real() / d);
    }
    case Op::ToReal: return ConstVal::real(Rational(args[0].as_int()));
    case Op::ToInt: {
      const Rational& r = args[0].as_real();
      return ConstVal::integer(floor_div(numerator(r), denominator(r)));
    }
    default: return fold_bitvec(op, args);
  }
}

namespace {

Term simplify_once(const Term& t);

Term simplify_app(const Term::App& app) {
  std::vector<Term> args;
  args.reserve(app.args.size());
  for (const Term& a : app.args) args.push_back(simplify_once(a));

  const Op op = app.op.op;
  if (op == Op::Not && args[0].is_app(Op::Not)) {
    return args[0].app().args[0];
  }
  if (op == Op::And || op == Op::Or) {
    const bool absorbing = op == Op::Or;  // and: false absorbs; or: true absorbs
    std::vector<Term> flat;
    for (const Term& a : args) {
      if (a.is_app(op)) {
        flat.insert(flat.end(), a.app().args.begin(), a.app().args.end());
      } else {
        flat.push_back(a);
      }
    }
    std::vector<Term> kept;
    for (const Term& a : flat) {
      if (a.is_const()) {
        if (a.const_value().as_bool() == absorbing) return mk_const(ConstVal::boolean(absorbing));
        continue;  // neutral element
      }
      kept.push_back(a);
    }
    if (kept.empty()) return mk_const(ConstVal::boolean(!absorbing));
    if (kept.size() == 1) return kept.front();
    return mk_app(app.op, kept);
  }
  return mk_app(app.op, args);
}

Term simplify_once(const Term& t) {
  if (t.is_app()) return simplify_app(t.app());
  if (t.is_uapp()) {
    const Term::UApp& u = t.uapp();
    std::vector<Term> args;
    for (const Term& a : u.args) args.push_back(simplify_once(a));
    return apply_ufunc(u.decl, args);
  }
  return t;
}

}  // namespace

Term simplify(const Term& t) {
  Term current = simplify_once(t);
  for (;;) {
    Term next = simplify_once(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

}  // namespace smtkit
