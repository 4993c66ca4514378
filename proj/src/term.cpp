#include "smtkit/term.hpp"

#include <algorithm>
#include <array>

#include "smtkit/error.hpp"
#include "smtkit/simplify.hpp"

namespace smtkit {

namespace {

// SMT-LIB 2.6 reserved words, command names, and the function symbols of
// the supported theories. Declaring any of these would shadow or clash
// with the solver's own vocabulary.
constexpr std::array kReserved = {
    "!", "_", "as", "BINARY", "DECIMAL", "exists", "forall", "HEXADECIMAL", "let", "match",
    "NUMERAL", "par", "STRING",
    "assert", "check-sat", "check-sat-assuming", "declare-const", "declare-datatype",
    "declare-datatypes", "declare-fun", "declare-sort", "define-fun", "define-fun-rec",
    "define-funs-rec", "define-sort", "echo", "exit", "get-assertions", "get-assignment",
    "get-info", "get-model", "get-option", "get-proof", "get-unsat-assumptions",
    "get-unsat-core", "get-value", "pop", "push", "reset", "reset-assertions", "set-info",
    "set-logic", "set-option",
    "true", "false", "not", "and", "or", "xor", "ite", "distinct", "div", "mod", "abs",
    "to_real", "to_int", "is_int", "concat", "extract", "bvnot", "bvand", "bvor", "bvxor",
    "bvneg", "bvadd", "bvsub", "bvmul", "bvudiv", "bvurem", "bvshl", "bvlshr", "bvashr",
    "bvult", "bvule", "bvugt", "bvuge", "bvslt", "bvsle", "bvsgt", "bvsge", "zero_extend",
    "sign_extend", "Bool", "Int", "Real", "BitVec",
};

bool symbol_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool symbol_rest(char c) {
  return symbol_start(c) || (c >= '0' && c <= '9') || c == '.' || c == '!';
}

bool numeric_op(Op op) {
  switch (op) {
    case Op::Add: case Op::Sub: case Op::Mul: case Op::Lt: case Op::Le: case Op::Gt:
    case Op::Ge: case Op::Eq: case Op::Distinct: case Op::RealDiv:
      return true;
    default:
      return false;
  }
}

[[noreturn]] void mismatch(OpKind op, const std::string& what) {
  throw Error(Errc::SortMismatch, std::string(op_symbol(op.op)) + ": " + what);
}

void require_arity(OpKind op, std::size_t n, std::size_t lo, std::size_t hi) {
  if (n < lo || n > hi) {
    throw Error(Errc::ArityError, std::string(op_symbol(op.op)) + " takes " +
                                      (lo == hi ? std::to_string(lo)
                                                : "at least " + std::to_string(lo)) +
                                      " argument(s), got " + std::to_string(n));
  }
}

constexpr std::size_t kMany = static_cast<std::size_t>(-1);

void require_all(OpKind op, std::span<const Sort> sorts, auto pred, const char* what) {
  for (const Sort& s : sorts) {
    if (!pred(s)) mismatch(op, std::string("expected ") + what + ", got " + s.to_string());
  }
}

void require_same(OpKind op, std::span<const Sort> sorts) {
  for (const Sort& s : sorts) {
    if (s != sorts.front()) {
      mismatch(op, "operands " + sorts.front().to_string() + " and " + s.to_string() +
                       " differ");
    }
  }
}

}  // namespace

Sort result_sort(OpKind op, std::span<const Sort> s) {
  auto is_bool = [](const Sort& x) { return x.is_bool(); };
  auto is_int = [](const Sort& x) { return x.is_int(); };
  auto is_real = [](const Sort& x) { return x.is_real(); };
  auto is_num = [](const Sort& x) { return x.is_numeric(); };
  auto is_bv = [](const Sort& x) { return x.is_bitvec(); };
  const std::size_t n = s.size();

  switch (op.op) {
    case Op::Not:
      require_arity(op, n, 1, 1);
      require_all(op, s, is_bool, "Bool");
      return Sort::boolean();
    case Op::And: case Op::Or: case Op::Xor:
      require_arity(op, n, 2, kMany);
      require_all(op, s, is_bool, "Bool");
      return Sort::boolean();
    case Op::Implies: case Op::Iff:
      require_arity(op, n, 2, 2);
      require_all(op, s, is_bool, "Bool");
      return Sort::boolean();
    case Op::Ite:
      require_arity(op, n, 3, 3);
      if (!s[0].is_bool()) mismatch(op, "condition must be Bool, got " + s[0].to_string());
      require_same(op, s.subspan(1));
      return s[1];
    case Op::Distinct:
      require_arity(op, n, 2, kMany);
      require_same(op, s);
      return Sort::boolean();
    case Op::Eq:
      require_arity(op, n, 2, 2);
      require_same(op, s);
      return Sort::boolean();
    case Op::Neg:
      require_arity(op, n, 1, 1);
      require_all(op, s, is_num, "Int or Real");
      return s[0];
    case Op::Abs:
      require_arity(op, n, 1, 1);
      require_all(op, s, is_int, "Int");
      return s[0];
    case Op::Add: case Op::Sub: case Op::Mul:
      require_arity(op, n, 2, kMany);
      require_all(op, s, is_num, "Int or Real");
      require_same(op, s);
      return s[0];
    case Op::IntDiv: case Op::Mod:
      require_arity(op, n, 2, 2);
      require_all(op, s, is_int, "Int");
      return Sort::integer();
    case Op::RealDiv:
      require_arity(op, n, 2, 2);
      require_all(op, s, is_real, "Real");
      return Sort::real();
    case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
      require_arity(op, n, 2, 2);
      require_all(op, s, is_num, "Int or Real");
      require_same(op, s);
      return Sort::boolean();
    case Op::ToReal:
      require_arity(op, n, 1, 1);
      require_all(op, s, is_int, "Int");
      return Sort::real();
    case Op::ToInt:
      require_arity(op, n, 1, 1);
      require_all(op, s, is_real, "Real");
      return Sort::integer();
    case Op::Concat:
      require_arity(op, n, 2, 2);
      require_all(op, s, is_bv, "bitvector");
      return Sort::bitvec(s[0].width() + s[1].width());
    case Op::Extract:
      require_arity(op, n, 1, 1);
      require_all(op, s, is_bv, "bitvector");
      if (op.p0 >= s[0].width()) {
        throw Error(Errc::ExtractOutOfRange,
                    "extract " + std::to_string(op.p0) + " " + std::to_string(op.p1) +
                        " from " + s[0].to_string());
      }
      return Sort::bitvec(op.p0 - op.p1 + 1);
    case Op::ZeroExtend: case Op::SignExtend:
      require_arity(op, n, 1, 1);
      require_all(op, s, is_bv, "bitvector");
      return Sort::bitvec(s[0].width() + op.p0);
    case Op::BvNot: case Op::BvNeg:
      require_arity(op, n, 1, 1);
      require_all(op, s, is_bv, "bitvector");
      return s[0];
    case Op::BvAnd: case Op::BvOr: case Op::BvXor: case Op::BvAdd: case Op::BvSub:
    case Op::BvMul: case Op::BvUdiv: case Op::BvUrem: case Op::BvShl: case Op::BvLshr:
    case Op::BvAshr:
      require_arity(op, n, 2, 2);
      require_all(op, s, is_bv, "bitvector");
      require_same(op, s);
      return s[0];
    case Op::BvUlt: case Op::BvUle: case Op::BvUgt: case Op::BvUge: case Op::BvSlt:
    case Op::BvSle: case Op::BvSgt: case Op::BvSge:
      require_arity(op, n, 2, 2);
      require_all(op, s, is_bv, "bitvector");
      require_same(op, s);
      return Sort::boolean();
  }
  mismatch(op, "unknown operator");
}

namespace {

std::vector<Sort> sorts_of(std::span<const Term> args) {
  std::vector<Sort> out;
  out.reserve(args.size());
  for (const Term& a : args) out.push_back(a.sort());
  return out;
}

// Wraps Int operands in to_real when the operator mixes Int and Real.
std::vector<Term> promote(OpKind op, std::span<const Term> args, bool fold) {
  std::vector<Term> out(args.begin(), args.end());
  auto to_real = [fold](const Term& t) {
    std::array<Term, 1> one{t};
    return fold ? mk_app(Op::ToReal, one) : mk_app_raw(Op::ToReal, one);
  };
  auto any_real = [](std::span<const Term> ts) {
    return std::any_of(ts.begin(), ts.end(), [](const Term& t) { return t.sort().is_real(); });
  };
  if (op.op == Op::RealDiv) {
    for (Term& t : out) {
      if (t.sort().is_int()) t = to_real(t);
    }
  } else if (numeric_op(op.op) && any_real(out)) {
    for (Term& t : out) {
      if (t.sort().is_int()) t = to_real(t);
    }
  } else if (op.op == Op::Ite && out.size() == 3 &&
             any_real(std::span<const Term>(out).subspan(1))) {
    for (std::size_t i = 1; i < 3; ++i) {
      if (out[i].sort().is_int()) out[i] = to_real(out[i]);
    }
  }
  return out;
}

Term build_app(OpKind op, std::span<const Term> args, bool fold) {
  if (args.empty()) {
    throw Error(Errc::ArityError, std::string(op_symbol(op.op)) + " needs arguments");
  }
  if (op.op == Op::Distinct && args.size() == 1) {
    return mk_distinct(args);
  }
  if (op.op == Op::Eq && args.front().sort().is_bool()) {
    op = OpKind(Op::Iff);  // Boolean equality has a single canonical form
  }
  std::vector<Term> promoted = promote(op, args, fold);
  std::vector<Sort> sorts = sorts_of(promoted);
  Sort result = result_sort(op, sorts);

  if (fold && std::all_of(promoted.begin(), promoted.end(),
                          [](const Term& t) { return t.is_const(); })) {
    std::vector<ConstVal> values;
    values.reserve(promoted.size());
    for (const Term& t : promoted) values.push_back(t.const_value());
    try {
      return mk_const(fold_const(op, values));
    } catch (const Error& e) {
      if (e.code() != Errc::FoldDomainError) throw;
    }
  }
  return Term::make(Term::App{op, std::move(promoted)}, result);
}

}  // namespace

OpKind OpKind::extract(std::uint32_t hi, std::uint32_t lo) {
  if (hi < lo) {
    throw Error(Errc::ExtractOutOfRange,
                "extract requires hi >= lo, got " + std::to_string(hi) + " " + std::to_string(lo));
  }
  return OpKind(Op::Extract, hi, lo);
}

std::string_view op_symbol(Op op) {
  switch (op) {
    case Op::Not: return "not";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Xor: return "xor";
    case Op::Implies: return "=>";
    case Op::Iff: return "=";
    case Op::Ite: return "ite";
    case Op::Distinct: return "distinct";
    case Op::Eq: return "=";
    case Op::Neg: return "-";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::IntDiv: return "div";
    case Op::Mod: return "mod";
    case Op::Abs: return "abs";
    case Op::RealDiv: return "/";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::ToReal: return "to_real";
    case Op::ToInt: return "to_int";
    case Op::Concat: return "concat";
    case Op::Extract: return "extract";
    case Op::BvNot: return "bvnot";
    case Op::BvAnd: return "bvand";
    case Op::BvOr: return "bvor";
    case Op::BvXor: return "bvxor";
    case Op::BvNeg: return "bvneg";
    case Op::BvAdd: return "bvadd";
    case Op::BvSub: return "bvsub";
    case Op::BvMul: return "bvmul";
    case Op::BvUdiv: return "bvudiv";
    case Op::BvUrem: return "bvurem";
    case Op::BvShl: return "bvshl";
    case Op::BvLshr: return "bvlshr";
    case Op::BvAshr: return "bvashr";
    case Op::BvUlt: return "bvult";
    case Op::BvUle: return "bvule";
    case Op::BvUgt: return "bvugt";
    case Op::BvUge: return "bvuge";
    case Op::BvSlt: return "bvslt";
    case Op::BvSle: return "bvsle";
    case Op::BvSgt: return "bvsgt";
    case Op::BvSge: return "bvsge";
    case Op::ZeroExtend: return "zero_extend";
    case Op::SignExtend: return "sign_extend";
  }
  return "?";
}

// Term --------------------------------------------------------------------

Term Term::make(Node node, Sort sort) {
  return Term(std::make_shared<const detail::TermNode>(detail::TermNode{std::move(node), sort}));
}

Sort Term::sort() const { return node_->sort; }
const Term::Node& Term::node() const { return node_->node; }

bool Term::is_app(Op op) const { return is_app() && app().op.op == op; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.sort() != b.sort() || a.node().index() != b.node().index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node());
        if constexpr (std::is_same_v<T, Term::Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Term::Const>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Term::App>) {
          return x.op == y.op && x.args == y.args;
        } else {
          return x.decl == y.decl && x.args == y.args;
        }
      },
      a.node());
}

// Symbols -----------------------------------------------------------------

bool is_reserved_symbol(std::string_view name) {
  return std::find(kReserved.begin(), kReserved.end(), name) != kReserved.end();
}

void check_symbol(std::string_view name) {
  if (name.empty() || !symbol_start(name.front()) ||
      !std::all_of(name.begin() + 1, name.end(), symbol_rest)) {
    throw Error(Errc::InvalidSymbol, "'" + std::string(name) + "' is not a valid symbol");
  }
  if (is_reserved_symbol(name)) {
    throw Error(Errc::ReservedSymbol, "'" + std::string(name) + "' is reserved");
  }
}

// Constructors ------------------------------------------------------------

Term mk_var(std::string name, Sort sort) {
  check_symbol(name);
  return Term::make(Term::Var{std::move(name)}, sort);
}

Term mk_const(ConstVal value) {
  if (value.is_bitvec()) {
    // re-validate: BitVecValue is an aggregate and may be built directly
    const BitVecValue& bv = value.as_bitvec();
    BitVecValue::make(bv.value, bv.width);
  }
  Sort s = value.sort();
  return Term::make(Term::Const{std::move(value)}, s);
}

Term mk_true() { return mk_const(ConstVal::boolean(true)); }
Term mk_false() { return mk_const(ConstVal::boolean(false)); }
Term mk_int(long long v) { return mk_const(ConstVal::integer(v)); }
Term mk_real(long long num, long long den) {
  return mk_const(ConstVal::real(BigInt(num), BigInt(den)));
}
Term mk_bv(std::uint64_t value, std::uint32_t width) {
  return mk_const(ConstVal::bitvec(BigInt(value), width));
}

Term mk_app(OpKind op, std::span<const Term> args) { return build_app(op, args, true); }
Term mk_app(OpKind op, std::initializer_list<Term> args) {
  return build_app(op, std::span<const Term>(args.begin(), args.size()), true);
}
Term mk_app_raw(OpKind op, std::span<const Term> args) { return build_app(op, args, false); }
Term mk_app_raw(OpKind op, std::initializer_list<Term> args) {
  return build_app(op, std::span<const Term>(args.begin(), args.size()), false);
}

Term mk_distinct(std::span<const Term> args) {
  if (args.empty()) throw Error(Errc::ArityError, "distinct needs at least one argument");
  if (args.size() == 1) return mk_true();
  return mk_app(Op::Distinct, args);
}

UFuncDecl declare_ufunc(std::string name, std::vector<Sort> arg_sorts, Sort result_sort) {
  check_symbol(name);
  if (arg_sorts.empty()) {
    throw Error(Errc::ArityError, "uninterpreted function '" + name + "' needs an argument");
  }
  return UFuncDecl(std::move(name), std::move(arg_sorts), result_sort);
}

Term apply_ufunc(const UFuncDecl& decl, std::span<const Term> args) {
  if (args.size() != decl.arg_sorts().size()) {
    throw Error(Errc::ArityError, decl.name() + " takes " +
                                      std::to_string(decl.arg_sorts().size()) +
                                      " argument(s), got " + std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].sort() != decl.arg_sorts()[i]) {
      throw Error(Errc::SortMismatch, decl.name() + " argument " + std::to_string(i + 1) +
                                          " expects " + decl.arg_sorts()[i].to_string() +
                                          ", got " + args[i].sort().to_string());
    }
  }
  return Term::make(Term::UApp{decl, std::vector<Term>(args.begin(), args.end())},
                    decl.result_sort());
}

Term apply_ufunc(const UFuncDecl& decl, std::initializer_list<Term> args) {
  return apply_ufunc(decl, std::span<const Term>(args.begin(), args.size()));
}

Sort recompute_sort(const Term& t) {
  return std::visit(
      [](const auto& x) -> Sort {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Term::Const>) {
          return x.value.sort();
        } else if constexpr (std::is_same_v<T, Term::Var>) {
          throw Error(Errc::UnboundName, "variable sorts are declared, not computed");
        } else if constexpr (std::is_same_v<T, Term::App>) {
          std::vector<Sort> sorts;
          for (const Term& a : x.args) sorts.push_back(a.is_var() ? a.sort() : recompute_sort(a));
          return result_sort(x.op, sorts);
        } else {
          for (std::size_t i = 0; i < x.args.size(); ++i) {
            const Term& a = x.args[i];
            Sort s = a.is_var() ? a.sort() : recompute_sort(a);
            if (s != x.decl.arg_sorts().at(i)) {
              throw Error(Errc::SortMismatch, "argument sort differs from declaration");
            }
          }
          return x.decl.result_sort();
        }
      },
      t.node());
}

// Arrays ------------------------------------------------------------------

TermArray::TermArray(std::vector<std::size_t> dims, std::vector<Term> elems)
    : dims_(std::move(dims)), elems_(std::move(elems)) {}

const Term& TermArray::at(std::size_t i, std::size_t j) const {
  if (rank() != 2) throw std::out_of_range("TermArray::at(i, j) on a rank-1 array");
  if (i >= dims_[0] || j >= dims_[1]) throw std::out_of_range("TermArray index out of range");
  return elems_[i * dims_[1] + j];
}

std::vector<Term> TermArray::row(std::size_t i) const {
  if (rank() == 1) return elems_;
  std::vector<Term> out;
  for (std::size_t j = 0; j < dims_[1]; ++j) out.push_back(at(i, j));
  return out;
}

std::vector<Term> TermArray::col(std::size_t j) const {
  if (rank() == 1) return {elems_.at(j)};
  std::vector<Term> out;
  for (std::size_t i = 0; i < dims_[0]; ++i) out.push_back(at(i, j));
  return out;
}

TermArray mk_var_array(const std::string& base, const std::vector<std::size_t>& dims, Sort sort) {
  check_symbol(base);
  if (dims.empty() || std::find(dims.begin(), dims.end(), 0u) != dims.end()) {
    throw Error(Errc::EmptyDims, "array '" + base + "' needs positive dimensions");
  }
  if (dims.size() > 2) {
    throw Error(Errc::ArityError, "arrays of rank " + std::to_string(dims.size()) +
                                      " are not supported");
  }
  std::vector<Term> elems;
  if (dims.size() == 1) {
    for (std::size_t i = 1; i <= dims[0]; ++i) {
      elems.push_back(mk_var(base + "_" + std::to_string(i), sort));
    }
  } else {
    for (std::size_t i = 1; i <= dims[0]; ++i) {
      for (std::size_t j = 1; j <= dims[1]; ++j) {
        elems.push_back(mk_var(base + "_" + std::to_string(i) + "_" + std::to_string(j), sort));
      }
    }
  }
  return TermArray(dims, std::move(elems));
}

// Builders ----------------------------------------------------------------

Term not_(const Term& a) { return mk_app(Op::Not, {a}); }
Term and_(std::span<const Term> args) { return mk_app(Op::And, args); }
Term and_(std::initializer_list<Term> args) { return mk_app(Op::And, args); }
Term or_(std::span<const Term> args) { return mk_app(Op::Or, args); }
Term or_(std::initializer_list<Term> args) { return mk_app(Op::Or, args); }
Term implies(const Term& a, const Term& b) { return mk_app(Op::Implies, {a, b}); }
Term iff(const Term& a, const Term& b) { return mk_app(Op::Iff, {a, b}); }
Term ite(const Term& c, const Term& a, const Term& b) { return mk_app(Op::Ite, {c, a, b}); }
Term eq(const Term& a, const Term& b) { return mk_app(Op::Eq, {a, b}); }
Term neq(const Term& a, const Term& b) { return not_(eq(a, b)); }
Term lt(const Term& a, const Term& b) { return mk_app(Op::Lt, {a, b}); }
Term le(const Term& a, const Term& b) { return mk_app(Op::Le, {a, b}); }
Term gt(const Term& a, const Term& b) { return mk_app(Op::Gt, {a, b}); }
Term ge(const Term& a, const Term& b) { return mk_app(Op::Ge, {a, b}); }
Term add(const Term& a, const Term& b) { return mk_app(Op::Add, {a, b}); }
Term sub(const Term& a, const Term& b) { return mk_app(Op::Sub, {a, b}); }
Term mul(const Term& a, const Term& b) { return mk_app(Op::Mul, {a, b}); }
Term extract(const Term& a, std::uint32_t hi, std::uint32_t lo) {
  return mk_app(OpKind::extract(hi, lo), {a});
}

namespace {
Term fold_collection(Op op, std::span<const Term> terms, const char* name) {
  if (terms.empty()) throw Error(Errc::ArityError, std::string(name) + " of an empty collection");
  if (terms.size() == 1) return terms.front();
  return mk_app(op, terms);
}
}  // namespace

Term sum(std::span<const Term> terms) { return fold_collection(Op::Add, terms, "sum"); }
Term prod(std::span<const Term> terms) { return fold_collection(Op::Mul, terms, "prod"); }

Term all(std::span<const Term> terms) {
  if (terms.empty()) return mk_true();
  return fold_collection(Op::And, terms, "all");
}

Term any(std::span<const Term> terms) {
  if (terms.empty()) return mk_false();
  return fold_collection(Op::Or, terms, "any");
}

std::vector<Term> map_ge(std::span<const Term> terms, const Term& bound) {
  std::vector<Term> out;
  for (const Term& t : terms) out.push_back(ge(t, bound));
  return out;
}

std::vector<Term> map_le(std::span<const Term> terms, const Term& bound) {
  std::vector<Term> out;
  for (const Term& t : terms) out.push_back(le(t, bound));
  return out;
}

std::vector<Term> map_eq(std::span<const Term> terms, std::span<const ConstVal> values) {
  if (terms.size() != values.size()) {
    throw Error(Errc::ArityError, "map_eq needs equally many terms and values");
  }
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i) out.push_back(eq(terms[i], mk_const(values[i])));
  return out;
}

}  // namespace smtkit
