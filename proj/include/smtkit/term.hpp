#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "smtkit/sort.hpp"
#include "smtkit/value.hpp"

namespace smtkit {

enum class Op : std::uint8_t {
  // Core
  Not, And, Or, Xor, Implies, Iff, Ite, Distinct, Eq,
  // Ints / Reals
  Neg, Add, Sub, Mul, IntDiv, Mod, Abs, RealDiv, Lt, Le, Gt, Ge, ToReal, ToInt,
  // FixedSizeBitVectors
  Concat, Extract, BvNot, BvAnd, BvOr, BvXor, BvNeg, BvAdd, BvSub, BvMul,
  BvUdiv, BvUrem, BvShl, BvLshr, BvAshr, BvUlt, BvUle, BvUgt, BvUge,
  BvSlt, BvSle, BvSgt, BvSge, ZeroExtend, SignExtend,
};

/// An operator tag plus its index parameters. Only Extract (hi, lo) and
/// ZeroExtend/SignExtend (k, unused) carry parameters.
struct OpKind {
  Op op;
  std::uint32_t p0 = 0;
  std::uint32_t p1 = 0;

  OpKind(Op o) : op(o) {}  // NOLINT(google-explicit-constructor)

  static OpKind extract(std::uint32_t hi, std::uint32_t lo);
  static OpKind zero_extend(std::uint32_t k) { return OpKind(Op::ZeroExtend, k, 0); }
  static OpKind sign_extend(std::uint32_t k) { return OpKind(Op::SignExtend, k, 0); }

  bool indexed() const noexcept {
    return op == Op::Extract || op == Op::ZeroExtend || op == Op::SignExtend;
  }

  friend bool operator==(const OpKind&, const OpKind&) = default;

 private:
  OpKind(Op o, std::uint32_t a, std::uint32_t b) : op(o), p0(a), p1(b) {}
};

/// SMT-LIB spelling of the operator head ("and", "=>", "bvadd", "extract"...).
std::string_view op_symbol(Op op);

class UFuncDecl {
 public:
  UFuncDecl(std::string name, std::vector<Sort> arg_sorts, Sort result)
      : name_(std::move(name)), args_(std::move(arg_sorts)), result_(result) {}

  const std::string& name() const noexcept { return name_; }
  const std::vector<Sort>& arg_sorts() const noexcept { return args_; }
  Sort result_sort() const noexcept { return result_; }

  friend bool operator==(const UFuncDecl&, const UFuncDecl&) = default;

 private:
  std::string name_;
  std::vector<Sort> args_;
  Sort result_;
};

class Term;

namespace detail {
struct TermNode;
}

/// Immutable, sort-annotated SMT term. Copies share the underlying node.
class Term {
 public:
  struct Var {
    std::string name;
  };
  struct Const {
    ConstVal value;
  };
  struct App {
    OpKind op;
    std::vector<Term> args;
  };
  struct UApp {
    UFuncDecl decl;
    std::vector<Term> args;
  };
  using Node = std::variant<Var, Const, App, UApp>;

  Sort sort() const;
  const Node& node() const;

  bool is_var() const { return std::holds_alternative<Var>(node()); }
  bool is_const() const { return std::holds_alternative<Const>(node()); }
  bool is_app() const { return std::holds_alternative<App>(node()); }
  bool is_uapp() const { return std::holds_alternative<UApp>(node()); }
  /// True when this is an App with the given operator.
  bool is_app(Op op) const;

  const std::string& var_name() const { return std::get<Var>(node()).name; }
  const ConstVal& const_value() const { return std::get<Const>(node()).value; }
  const App& app() const { return std::get<App>(node()); }
  const UApp& uapp() const { return std::get<UApp>(node()); }

  /// Structural equality.
  friend bool operator==(const Term& a, const Term& b);

  /// Identity of the shared node; equal ids imply structural equality.
  const void* id() const noexcept { return node_.get(); }

  static Term make(Node node, Sort sort);

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

namespace detail {
struct TermNode {
  Term::Node node;
  Sort sort;
};
}  // namespace detail

/// Throws InvalidSymbol or ReservedSymbol when `name` cannot name a
/// user declaration.
void check_symbol(std::string_view name);
bool is_reserved_symbol(std::string_view name);

Term mk_var(std::string name, Sort sort);
Term mk_const(ConstVal value);
Term mk_true();
Term mk_false();
Term mk_int(long long v);
Term mk_real(long long num, long long den = 1);
Term mk_bv(std::uint64_t value, std::uint32_t width);

/// Sort-checked application with Int->Real promotion. When every argument
/// is a constant and the operator can be evaluated, the folded constant
/// is returned instead.
Term mk_app(OpKind op, std::span<const Term> args);
Term mk_app(OpKind op, std::initializer_list<Term> args);

/// Like mk_app but never folds constants.
Term mk_app_raw(OpKind op, std::span<const Term> args);
Term mk_app_raw(OpKind op, std::initializer_list<Term> args);

/// Pairwise-distinct constraint; a single argument yields `true`.
Term mk_distinct(std::span<const Term> args);

UFuncDecl declare_ufunc(std::string name, std::vector<Sort> arg_sorts, Sort result_sort);
/// Arguments must match the declared sorts exactly (no promotion).
Term apply_ufunc(const UFuncDecl& decl, std::span<const Term> args);
Term apply_ufunc(const UFuncDecl& decl, std::initializer_list<Term> args);

/// Rank-1 or rank-2 array of terms, row-major. Indices are 0-based here;
/// generated variable names use 1-based indices (`P_1_1`).
class TermArray {
 public:
  TermArray() = default;
  TermArray(std::vector<std::size_t> dims, std::vector<Term> elems);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t rank() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return elems_.size(); }

  const Term& operator[](std::size_t i) const { return elems_.at(i); }
  const Term& at(std::size_t i, std::size_t j) const;

  std::vector<Term> row(std::size_t i) const;
  std::vector<Term> col(std::size_t j) const;
  const std::vector<Term>& flat() const noexcept { return elems_; }

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

 private:
  std::vector<std::size_t> dims_;
  std::vector<Term> elems_;
};

TermArray mk_var_array(const std::string& base, const std::vector<std::size_t>& dims, Sort sort);

// Convenience builders over mk_app.
Term not_(const Term& a);
Term and_(std::span<const Term> args);
Term and_(std::initializer_list<Term> args);
Term or_(std::span<const Term> args);
Term or_(std::initializer_list<Term> args);
Term implies(const Term& a, const Term& b);
Term iff(const Term& a, const Term& b);
Term ite(const Term& c, const Term& a, const Term& b);
Term eq(const Term& a, const Term& b);
Term neq(const Term& a, const Term& b);
Term lt(const Term& a, const Term& b);
Term le(const Term& a, const Term& b);
Term gt(const Term& a, const Term& b);
Term ge(const Term& a, const Term& b);
Term add(const Term& a, const Term& b);
Term sub(const Term& a, const Term& b);
Term mul(const Term& a, const Term& b);
Term extract(const Term& a, std::uint32_t hi, std::uint32_t lo);

/// Sum and product over a collection. One element returns that element;
/// an empty collection throws ArityError.
Term sum(std::span<const Term> terms);
Term prod(std::span<const Term> terms);
/// Conjunction/disjunction over a collection; empty gives the neutral
/// constant, one element returns it.
Term all(std::span<const Term> terms);
Term any(std::span<const Term> terms);

/// Elementwise helpers standing in for broadcasting.
std::vector<Term> map_ge(std::span<const Term> terms, const Term& bound);
std::vector<Term> map_le(std::span<const Term> terms, const Term& bound);
std::vector<Term> map_eq(std::span<const Term> terms, std::span<const ConstVal> values);

/// Signature table lookup over already-promoted operand sorts. Throws
/// ArityError, SortMismatch or ExtractOutOfRange.
Sort result_sort(OpKind op, std::span<const Sort> arg_sorts);

/// Sort computed bottom-up from the signature table, ignoring the stored
/// sort of the root. Throws the same errors as mk_app.
Sort recompute_sort(const Term& t);

}  // namespace smtkit
