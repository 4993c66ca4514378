#include "smtkit/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include "smtkit/error.hpp"

namespace smtkit::oracle {

namespace {

// Bitvectors as little-endian bit vectors.
using Bits = std::vector<bool>;

Bits to_bits(const ConstVal& v) {
  const BitVecValue& bv = v.as_bitvec();
  Bits bits(bv.width);
  for (std::uint32_t i = 0; i < bv.width; ++i) bits[i] = bit_test(bv.value, i);
  return bits;
}

ConstVal from_bits(const Bits& bits) {
  BigInt v = 0;
  for (std::size_t i = bits.size(); i-- > 0;) {
    v <<= 1;
    if (bits[i]) v |= 1;
  }
  return ConstVal::bitvec(v, static_cast<std::uint32_t>(bits.size()));
}

Bits add_bits(const Bits& a, const Bits& b, bool carry = false) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int s = a[i] + b[i] + carry;
    out[i] = s & 1;
    carry = s >= 2;
  }
  return out;
}

Bits not_bits(Bits a) {
  a.flip();
  return a;
}

Bits neg_bits(const Bits& a) { return add_bits(not_bits(a), Bits(a.size()), true); }

Bits shl_bits(const Bits& a, std::size_t k) {
  Bits out(a.size());
  for (std::size_t i = k; i < a.size(); ++i) out[i] = a[i - k];
  return out;
}

Bits lshr_bits(const Bits& a, std::size_t k, bool fill = false) {
  Bits out(a.size(), fill);
  for (std::size_t i = 0; i + k < a.size(); ++i) out[i] = a[i + k];
  return out;
}

Bits mul_bits(const Bits& a, const Bits& b) {
  Bits acc(a.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i]) acc = add_bits(acc, shl_bits(a, i));
  }
  return acc;
}

// -1 / 0 / 1 comparing as unsigned.
int ucmp(const Bits& a, const Bits& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] ? 1 : -1;
  }
  return 0;
}

int scmp(Bits a, Bits b) {
  a.back() = !a.back();
  b.back() = !b.back();
  return ucmp(a, b);
}

bool is_zero(const Bits& a) { return std::none_of(a.begin(), a.end(), [](bool x) { return x; }); }

// Restoring division; quotient and remainder.
std::pair<Bits, Bits> udivrem_bits(const Bits& a, const Bits& b) {
  const std::size_t w = a.size();
  if (is_zero(b)) return {Bits(w, true), a};
  Bits q(w), r(w);
  for (std::size_t i = w; i-- > 0;) {
    r = shl_bits(r, 1);
    r[0] = a[i];
    if (ucmp(r, b) >= 0) {
      r = add_bits(r, neg_bits(b));
      q[i] = true;
    }
  }
  return {q, r};
}

// Shift distance, saturated at the width.
std::size_t shift_amount(const Bits& b) {
  std::size_t k = 0;
  for (std::size_t i = b.size(); i-- > 0;) {
    k = k * 2 + b[i];
    if (k >= b.size()) return b.size();
  }
  return k;
}

BigInt floor_quotient(const BigInt& m, const BigInt& n) {
  BigInt q = m / n;  // truncates
  if ((m % n != 0) && ((m < 0) != (n < 0))) q -= 1;
  return q;
}

BigInt ceil_quotient(const BigInt& m, const BigInt& n) {
  BigInt q = m / n;
  if ((m % n != 0) && ((m < 0) == (n < 0))) q += 1;
  return q;
}

// SMT-LIB: n > 0 gives floor(m/n), n < 0 gives ceil(m/n).
BigInt smt_div(const BigInt& m, const BigInt& n) {
  return n > 0 ? floor_quotient(m, n) : ceil_quotient(m, n);
}

Rational as_rational(const ConstVal& v) { return v.is_real() ? v.as_real() : Rational(v.as_int()); }

ConstVal numeric(const Rational& r, bool real) {
  return real ? ConstVal::real(r) : ConstVal::integer(numerator(r));
}

[[noreturn]] void zero_divisor(const Term& t) {
  throw Error(Errc::EvalDomainError, "division by zero in " + std::string(op_symbol(t.app().op.op)));
}

class Evaluator {
 public:
  explicit Evaluator(const Model& m) : model_(m) {}

  ConstVal eval(const Term& t) {
    if (t.is_const()) return t.const_value();
    if (t.is_var()) {
      const ConstVal* v = model_.find_const(t.var_name());
      if (!v) throw Error(Errc::UnboundName, "no value for '" + t.var_name() + "'");
      return *v;
    }
    if (t.is_uapp()) {
      const Term::UApp& u = t.uapp();
      const FuncInterp* f = model_.find_func(u.decl.name());
      if (!f) throw Error(Errc::UnboundName, "no interpretation for '" + u.decl.name() + "'");
      std::vector<ConstVal> args;
      for (const Term& a : u.args) args.push_back(eval(a));
      return f->apply(args);
    }
    return eval_app(t);
  }

 private:
  ConstVal eval_app(const Term& t) {
    const Term::App& app = t.app();
    const std::vector<Term>& a = app.args;

    switch (app.op.op) {
      case Op::Ite: return eval(a[0]).as_bool() ? eval(a[1]) : eval(a[2]);
      case Op::Not: return ConstVal::boolean(!eval(a[0]).as_bool());
      case Op::And: {
        bool r = true;
        for (const Term& x : a) r = eval(x).as_bool() && r;
        return ConstVal::boolean(r);
      }
      case Op::Or: {
        bool r = false;
        for (const Term& x : a) r = eval(x).as_bool() || r;
        return ConstVal::boolean(r);
      }
      case Op::Xor: {
        int ones = 0;
        for (const Term& x : a) ones += eval(x).as_bool();
        return ConstVal::boolean(ones % 2 == 1);
      }
      case Op::Implies: {
        const bool p = eval(a[0]).as_bool();
        const bool q = eval(a[1]).as_bool();
        return ConstVal::boolean(p ? q : true);
      }
      case Op::Iff: case Op::Eq: return ConstVal::boolean(eval(a[0]) == eval(a[1]));
      case Op::Distinct: {
        std::vector<ConstVal> vs;
        for (const Term& x : a) vs.push_back(eval(x));
        for (std::size_t i = 0; i < vs.size(); ++i) {
          if (std::count(vs.begin(), vs.end(), vs[i]) > 1) return ConstVal::boolean(false);
        }
        return ConstVal::boolean(true);
      }
      default: break;
    }

    std::vector<ConstVal> v;
    for (const Term& x : a) v.push_back(eval(x));
    const bool real = t.sort().is_real() || (!v.empty() && v[0].is_real());

    switch (app.op.op) {
      case Op::Neg: return numeric(-as_rational(v[0]), real);
      case Op::Add: case Op::Sub: case Op::Mul: {
        Rational acc = as_rational(v[0]);
        for (std::size_t i = 1; i < v.size(); ++i) {
          const Rational x = as_rational(v[i]);
          if (app.op.op == Op::Add) acc = acc + x;
          else if (app.op.op == Op::Sub) acc = acc - x;
          else acc = acc * x;
        }
        return numeric(acc, real);
      }
      case Op::Abs: return ConstVal::integer(v[0].as_int() < 0 ? -v[0].as_int() : v[0].as_int());
      case Op::IntDiv: case Op::Mod: {
        const BigInt& m = v[0].as_int();
        const BigInt& n = v[1].as_int();
        if (n == 0) zero_divisor(t);
        const BigInt q = smt_div(m, n);
        return ConstVal::integer(app.op.op == Op::IntDiv ? q : m - n * q);
      }
      case Op::RealDiv: {
        if (v[1].as_real() == 0) zero_divisor(t);
        return ConstVal::real(v[0].as_real() / v[1].as_real());
      }
      case Op::Lt: return ConstVal::boolean(as_rational(v[0]) < as_rational(v[1]));
      case Op::Le: return ConstVal::boolean(!(as_rational(v[1]) < as_rational(v[0])));
      case Op::Gt: return ConstVal::boolean(as_rational(v[1]) < as_rational(v[0]));
      case Op::Ge: return ConstVal::boolean(!(as_rational(v[0]) < as_rational(v[1])));
      case Op::ToReal: return ConstVal::real(Rational(v[0].as_int()));
      case Op::ToInt: {
        const Rational& r = v[0].as_real();
        return ConstVal::integer(floor_quotient(numerator(r), denominator(r)));
      }
      default: return eval_bits(app.op, v);
    }
  }

  static ConstVal eval_bits(OpKind op, const std::vector<ConstVal>& v) {
    const Bits x = to_bits(v[0]);
    switch (op.op) {
      case Op::BvNot: return from_bits(not_bits(x));
      case Op::BvNeg: return from_bits(neg_bits(x));
      case Op::Extract: return from_bits(Bits(x.begin() + op.p1, x.begin() + op.p0 + 1));
      case Op::ZeroExtend: {
        Bits out = x;
        out.resize(x.size() + op.p0, false);
        return from_bits(out);
      }
      case Op::SignExtend: {
        Bits out = x;
        out.resize(x.size() + op.p0, x.back());
        return from_bits(out);
      }
      default: break;
    }
    const Bits y = to_bits(v[1]);
    auto elementwise = [&](auto f) {
      Bits out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i], y[i]);
      return from_bits(out);
    };
    switch (op.op) {
      case Op::Concat: {
        Bits out = y;  // low part
        out.insert(out.end(), x.begin(), x.end());
        return from_bits(out);
      }
      case Op::BvAnd: return elementwise([](bool p, bool q) { return p && q; });
      case Op::BvOr: return elementwise([](bool p, bool q) { return p || q; });
      case Op::BvXor: return elementwise([](bool p, bool q) { return p != q; });
      case Op::BvAdd: return from_bits(add_bits(x, y));
      case Op::BvSub: return from_bits(add_bits(x, neg_bits(y)));
      case Op::BvMul: return from_bits(mul_bits(x, y));
      case Op::BvUdiv: return from_bits(udivrem_bits(x, y).first);
      case Op::BvUrem: return from_bits(udivrem_bits(x, y).second);
      case Op::BvShl: return from_bits(shl_bits(x, shift_amount(y)));
      case Op::BvLshr: return from_bits(lshr_bits(x, shift_amount(y)));
      case Op::BvAshr: return from_bits(lshr_bits(x, shift_amount(y), x.back()));
      case Op::BvUlt: return ConstVal::boolean(ucmp(x, y) < 0);
      case Op::BvUle: return ConstVal::boolean(ucmp(x, y) <= 0);
      case Op::BvUgt: return ConstVal::boolean(ucmp(x, y) > 0);
      case Op::BvUge: return ConstVal::boolean(ucmp(x, y) >= 0);
      case Op::BvSlt: return ConstVal::boolean(scmp(x, y) < 0);
      case Op::BvSle: return ConstVal::boolean(scmp(x, y) <= 0);
      case Op::BvSgt: return ConstVal::boolean(scmp(x, y) > 0);
      case Op::BvSge: return ConstVal::boolean(scmp(x, y) >= 0);
      default: break;
    }
    throw Error(Errc::UnsupportedTheory, std::string("cannot evaluate ") + std::string(op_symbol(op.op)));
  }

  const Model& model_;
};

void collect_vars(const Term& t, std::map<std::string, Sort>& out) {
  if (t.is_var()) {
    auto [it, inserted] = out.emplace(t.var_name(), t.sort());
    if (!inserted && it->second != t.sort()) {
      throw Error(Errc::SortConflict, "'" + t.var_name() + "' occurs with two sorts");
    }
  } else if (t.is_app()) {
    for (const Term& a : t.app().args) collect_vars(a, out);
  } else if (t.is_uapp()) {
    for (const Term& a : t.uapp().args) collect_vars(a, out);
  }
}

// Bit-parallel truth tables: one bit per assignment row.
class TableBuilder {
 public:
  TableBuilder(std::span<const std::string> vars) : vars_(vars.begin(), vars.end()) {
    if (vars_.size() > kMaxBruteForceVars) {
      throw Error(Errc::TooManyVariables, std::to_string(vars_.size()) + " variables exceed the limit of " +
                                              std::to_string(kMaxBruteForceVars));
    }
    rows_ = std::size_t{1} << vars_.size();
    words_ = (rows_ + 63) / 64;
  }

  using Table = std::vector<std::uint64_t>;

  Table build(const Term& t) {
    if (!t.sort().is_bool()) unsupported(t);
    if (t.is_const()) return constant(t.const_value().as_bool());
    if (t.is_var()) return variable(t.var_name());
    if (!t.is_app()) unsupported(t);
    const Term::App& app = t.app();
    std::vector<Table> kids;
    for (const Term& a : app.args) kids.push_back(build(a));
    Table out(words_);
    switch (app.op.op) {
      case Op::Not:
        for (std::size_t w = 0; w < words_; ++w) out[w] = ~kids[0][w];
        break;
      case Op::And:
        out = constant(true);
        for (const Table& k : kids) for (std::size_t w = 0; w < words_; ++w) out[w] &= k[w];
        break;
      case Op::Or:
        for (const Table& k : kids) for (std::size_t w = 0; w < words_; ++w) out[w] |= k[w];
        break;
      case Op::Xor:
        for (const Table& k : kids) for (std::size_t w = 0; w < words_; ++w) out[w] ^= k[w];
        break;
      case Op::Implies:
        for (std::size_t w = 0; w < words_; ++w) out[w] = ~kids[0][w] | kids[1][w];
        break;
      case Op::Iff: case Op::Eq:
        for (std::size_t w = 0; w < words_; ++w) out[w] = ~(kids[0][w] ^ kids[1][w]);
        break;
      case Op::Ite:
        for (std::size_t w = 0; w < words_; ++w) {
          out[w] = (kids[0][w] & kids[1][w]) | (~kids[0][w] & kids[2][w]);
        }
        break;
      case Op::Distinct:
        // Over Bool, more than two arguments can never be pairwise distinct.
        if (kids.size() == 2) {
          for (std::size_t w = 0; w < words_; ++w) out[w] = kids[0][w] ^ kids[1][w];
        }
        break;
      default: unsupported(t);
    }
    return out;
  }

  std::vector<bool> expand(const Table& table) const {
    std::vector<bool> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (table[r / 64] >> (r % 64)) & 1;
    return out;
  }

 private:
  [[noreturn]] static void unsupported(const Term& t) {
    throw Error(Errc::UnsupportedTheory, "truth tables cover Core Boolean terms only (sort " +
                                             t.sort().to_string() + ")");
  }

  Table constant(bool b) const { return Table(words_, b ? ~std::uint64_t{0} : 0); }

  Table variable(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw Error(Errc::UnboundName, "'" + name + "' is not a table variable");
    const std::size_t bit = vars_.size() - 1 - static_cast<std::size_t>(it - vars_.begin());
    Table out(words_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if ((r >> bit) & 1) out[r / 64] |= std::uint64_t{1} << (r % 64);
    }
    return out;
  }

  std::vector<std::string> vars_;
  std::size_t rows_ = 1;
  std::size_t words_ = 1;
};

}  // namespace

ConstVal evaluate(const Term& t, const Model& m) { return Evaluator(m).eval(t); }

std::vector<std::pair<std::string, Sort>> free_variables(std::span<const Term> terms) {
  std::map<std::string, Sort> vars;
  for (const Term& t : terms) collect_vars(t, vars);
  return {vars.begin(), vars.end()};
}

std::vector<bool> truth_table(const Term& t, std::span<const std::string> vars) {
  TableBuilder builder(vars);
  return builder.expand(builder.build(t));
}

CheckOutcome brute_force_sat(std::span<const Term> terms) {
  std::vector<std::string> names;
  for (const auto& [name, sort] : free_variables(terms)) {
    if (!sort.is_bool()) {
      throw Error(Errc::UnsupportedTheory, "'" + name + "' is not Boolean");
    }
    names.push_back(name);
  }
  TableBuilder builder(names);
  std::vector<bool> all(std::size_t{1} << names.size(), true);
  for (const Term& t : terms) {
    const std::vector<bool> rows = builder.expand(builder.build(t));
    for (std::size_t r = 0; r < all.size(); ++r) all[r] = all[r] && rows[r];
  }
  auto first = std::find(all.begin(), all.end(), true);
  if (first == all.end()) return CheckOutcome{CheckStatus::Unsat, std::nullopt, std::nullopt};

  const std::size_t row = static_cast<std::size_t>(first - all.begin());
  Model model;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::size_t bit = names.size() - 1 - i;
    model.consts.emplace(names[i], ConstVal::boolean((row >> bit) & 1));
  }
  return CheckOutcome{CheckStatus::Sat, std::move(model), std::nullopt};
}

std::vector<Model> enumerate_models(std::span<const Term> terms, const DomainSpec& domains) {
  for (const auto& [name, sort] : free_variables(terms)) {
    auto it = domains.find(name);
    if (it == domains.end()) throw Error(Errc::UnboundName, "no domain for '" + name + "'");
    for (const ConstVal& v : it->second) {
      if (v.sort() != sort) {
        throw Error(Errc::SortMismatch, "domain of '" + name + "' holds a " + v.sort().to_string() +
                                            " value");
      }
    }
  }
  std::size_t space = 1;
  for (const auto& [name, values] : domains) {
    if (values.empty()) throw Error(Errc::EmptyDims, "empty domain for '" + name + "'");
    if (space > kMaxEnumeration / values.size()) {
      throw Error(Errc::SearchSpaceTooLarge, "more than " + std::to_string(kMaxEnumeration) +
                                                 " assignments");
    }
    space *= values.size();
  }

  std::vector<std::pair<std::string, const std::vector<ConstVal>*>> order;
  for (const auto& [name, values] : domains) order.emplace_back(name, &values);
  std::vector<std::size_t> digits(order.size(), 0);

  std::vector<Model> out;
  for (std::size_t n = 0; n < space; ++n) {
    Model m;
    for (std::size_t i = 0; i < order.size(); ++i) {
      m.consts.emplace(order[i].first, (*order[i].second)[digits[i]]);
    }
    const bool ok = std::all_of(terms.begin(), terms.end(),
                                [&m](const Term& t) { return evaluate(t, m).as_bool(); });
    if (ok) out.push_back(std::move(m));
    for (std::size_t i = order.size(); i-- > 0;) {
      if (++digits[i] < order[i].second->size()) break;
      digits[i] = 0;
    }
  }
  return out;
}

}  // namespace smtkit::oracle
