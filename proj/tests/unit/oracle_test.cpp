#include <gtest/gtest.h>

#include <cstdint>
#include <sstream>

#include "smtkit/benchmarks.hpp"
#include "smtkit/error.hpp"
#include "smtkit/oracle.hpp"

using namespace smtkit;

namespace {

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::SolverError;
}

const Term x = mk_var("x", Sort::boolean());
const Term y = mk_var("y", Sort::boolean());

Model with(std::initializer_list<std::pair<const char*, ConstVal>> consts) {
  Model m;
  for (const auto& [k, v] : consts) m.consts.emplace(k, v);
  return m;
}

std::uint8_t native_bv(Op op, std::uint8_t a, std::uint8_t b) {
  const auto sa = static_cast<std::int8_t>(a);
  switch (op) {
    case Op::BvAdd: return static_cast<std::uint8_t>(a + b);
    case Op::BvSub: return static_cast<std::uint8_t>(a - b);
    case Op::BvMul: return static_cast<std::uint8_t>(a * b);
    case Op::BvUdiv: return b == 0 ? 0xFF : static_cast<std::uint8_t>(a / b);
    case Op::BvUrem: return b == 0 ? a : static_cast<std::uint8_t>(a % b);
    case Op::BvShl: return b >= 8 ? 0 : static_cast<std::uint8_t>(a << b);
    case Op::BvLshr: return b >= 8 ? 0 : static_cast<std::uint8_t>(a >> b);
    case Op::BvAshr: return static_cast<std::uint8_t>(sa >> (b >= 8 ? 7 : b));
    case Op::BvAnd: return a & b;
    case Op::BvOr: return a | b;
    case Op::BvXor: return a ^ b;
    default: return 0;
  }
}

}  // namespace

TEST(EvaluateTest, Basics) {
  const Model m = with({{"x", ConstVal::boolean(true)}, {"y", ConstVal::boolean(false)}});
  EXPECT_EQ(oracle::evaluate(or_({not_(x), and_({not_(x), y})}), m), ConstVal::boolean(false));
  EXPECT_EQ(oracle::evaluate(implies(y, x), m), ConstVal::boolean(true));

  const Term n = mk_var("n", Sort::integer());
  const Model mn = with({{"n", ConstVal::integer(-7)}});
  EXPECT_EQ(oracle::evaluate(mk_app(Op::Mod, {n, mk_int(3)}), mn), ConstVal::integer(2));
  EXPECT_EQ(oracle::evaluate(mk_app(Op::IntDiv, {n, mk_int(3)}), mn), ConstVal::integer(-3));
  EXPECT_EQ(oracle::evaluate(mk_app(Op::IntDiv, {n, mk_int(-3)}), mn), ConstVal::integer(3));
  EXPECT_EQ(oracle::evaluate(mk_app(Op::Abs, {n}), mn), ConstVal::integer(7));
  EXPECT_EQ(oracle::evaluate(add(mk_int(1), mk_real(5, 2)), {}), ConstVal::real(Rational(7, 2)));
}

TEST(EvaluateTest, Errors) {
  EXPECT_EQ(error_of([] { oracle::evaluate(x, {}); }), Errc::UnboundName);
  const Term n = mk_var("n", Sort::integer());
  const Model mn = with({{"n", ConstVal::integer(0)}});
  EXPECT_EQ(error_of([&] { oracle::evaluate(mk_app(Op::IntDiv, {mk_int(1), n}), mn); }),
            Errc::EvalDomainError);
  // The untaken ite branch is never evaluated.
  const Term guarded = ite(eq(n, mk_int(0)), mk_int(0), mk_app(Op::IntDiv, {mk_int(1), n}));
  EXPECT_EQ(oracle::evaluate(guarded, mn), ConstVal::integer(0));
}

TEST(EvaluateTest, UninterpretedFunctions) {
  UFuncDecl f = declare_ufunc("f", {Sort::integer()}, Sort::boolean());
  Model m;
  FuncInterp interp;
  interp.params = {{"a", Sort::integer()}};
  interp.cases.push_back({{ConstVal::integer(1)}, ConstVal::boolean(true)});
  interp.fallback = ConstVal::boolean(false);
  m.funcs.emplace("f", interp);
  EXPECT_EQ(oracle::evaluate(apply_ufunc(f, {mk_int(1)}), m), ConstVal::boolean(true));
  EXPECT_EQ(oracle::evaluate(apply_ufunc(f, {mk_int(-1)}), m), ConstVal::boolean(false));
}

TEST(EvaluateTest, BitvectorsMatchNativeArithmetic) {
  const Term a = mk_var("a", Sort::bitvec(8));
  const Term b = mk_var("b", Sort::bitvec(8));
  const Op ops[] = {Op::BvAdd, Op::BvSub, Op::BvMul, Op::BvUdiv, Op::BvUrem, Op::BvShl,
                    Op::BvLshr, Op::BvAshr, Op::BvAnd, Op::BvOr, Op::BvXor};
  for (Op op : ops) {
    const Term t = mk_app(op, {a, b});
    for (unsigned va = 0; va < 256; va += 7) {
      for (unsigned vb = 0; vb < 256; vb += 5) {
        const Model m = with({{"a", ConstVal::bitvec(va, 8)}, {"b", ConstVal::bitvec(vb, 8)}});
        const auto expected = native_bv(op, static_cast<std::uint8_t>(va), static_cast<std::uint8_t>(vb));
        ASSERT_EQ(oracle::evaluate(t, m), ConstVal::bitvec(expected, 8))
            << op_symbol(op) << ' ' << va << ' ' << vb;
      }
    }
  }
  const Model m = with({{"a", ConstVal::bitvec(0x80, 8)}, {"b", ConstVal::bitvec(1, 8)}});
  EXPECT_EQ(oracle::evaluate(mk_app(Op::BvSlt, {a, b}), m), ConstVal::boolean(true));
  EXPECT_EQ(oracle::evaluate(mk_app(Op::BvUlt, {a, b}), m), ConstVal::boolean(false));
  EXPECT_EQ(oracle::evaluate(mk_app(OpKind::sign_extend(8), {a}), m), ConstVal::bitvec(0xFF80, 16));
}

TEST(TruthTableTest, RowOrder) {
  const std::vector<std::string> vars{"x", "y"};
  EXPECT_EQ(oracle::truth_table(and_({x, not_(y)}), vars),
            (std::vector<bool>{false, false, true, false}));
  EXPECT_EQ(oracle::truth_table(implies(x, y), vars),
            (std::vector<bool>{true, true, false, true}));
  EXPECT_EQ(oracle::truth_table(mk_true(), {}), (std::vector<bool>{true}));
  EXPECT_EQ(error_of([] {
              oracle::truth_table(eq(mk_var("n", Sort::integer()), mk_int(0)),
                                  std::vector<std::string>{"n"});
            }),
            Errc::UnsupportedTheory);
  std::vector<std::string> many;
  for (int i = 0; i < 21; ++i) many.push_back("v" + std::to_string(i));
  EXPECT_EQ(error_of([&] { oracle::truth_table(x, many); }), Errc::TooManyVariables);
}

TEST(TruthTableTest, AgreesWithEvaluate) {
  const Term z = mk_var("z", Sort::boolean());
  const Term t = ite(x, mk_app(Op::Xor, {y, z}), mk_distinct(std::vector<Term>{y, z, x}));
  const std::vector<std::string> vars{"x", "y", "z"};
  const auto table = oracle::truth_table(t, vars);
  for (unsigned row = 0; row < 8; ++row) {
    const Model m = with({{"x", ConstVal::boolean(row & 4)},
                          {"y", ConstVal::boolean(row & 2)},
                          {"z", ConstVal::boolean(row & 1)}});
    EXPECT_EQ(oracle::evaluate(t, m).as_bool(), table[row]) << row;
  }
}

TEST(BruteForceTest, Examples) {
  auto r = oracle::brute_force_sat(std::vector<Term>{or_({x, not_(x)})});
  ASSERT_EQ(r.status, CheckStatus::Sat);
  EXPECT_EQ(*r.model->find_const("x"), ConstVal::boolean(false));

  EXPECT_EQ(oracle::brute_force_sat(std::vector<Term>{x, not_(x)}).status, CheckStatus::Unsat);

  auto both = oracle::brute_force_sat(std::vector<Term>{or_({x, y})});
  ASSERT_EQ(both.status, CheckStatus::Sat);
  EXPECT_EQ(*both.model->find_const("x"), ConstVal::boolean(false));
  EXPECT_EQ(*both.model->find_const("y"), ConstVal::boolean(true));

  std::vector<Term> wide;
  for (int i = 0; i < 21; ++i) wide.push_back(mk_var("w" + std::to_string(i), Sort::boolean()));
  EXPECT_EQ(error_of([&] { oracle::brute_force_sat(std::vector<Term>{or_(wide)}); }),
            Errc::TooManyVariables);
}

TEST(FreeVariablesTest, SortedAndChecked) {
  const Term n = mk_var("n", Sort::integer());
  auto vars = oracle::free_variables(std::vector<Term>{and_({y, x}), eq(n, mk_int(1))});
  ASSERT_EQ(vars.size(), 3u);
  EXPECT_EQ(vars[0].first, "n");
  EXPECT_EQ(vars[1].first, "x");
  EXPECT_EQ(vars[2].first, "y");
  EXPECT_EQ(error_of([] {
              oracle::free_variables(
                  std::vector<Term>{mk_var("x", Sort::boolean()), eq(mk_var("x", Sort::integer()), mk_int(0))});
            }),
            Errc::SortConflict);
}

TEST(EnumerateTest, TriangleColorings) {
  std::istringstream in("3\n1 2\n2 3\n1 3\n");
  const GraphSpec g = parse_graph(in);
  for (std::size_t k : {3u, 2u}) {
    const ColoringProblem p = coloring_constraints(g, k);
    std::vector<Term> terms = p.limits;
    terms.insert(terms.end(), p.conns.begin(), p.conns.end());
    std::vector<ConstVal> domain;
    for (std::size_t c = 1; c <= k; ++c) domain.push_back(ConstVal::integer(static_cast<long long>(c)));
    oracle::DomainSpec domains;
    for (const Term& v : p.nodes) domains[v.var_name()] = domain;
    EXPECT_EQ(oracle::enumerate_models(terms, domains).size(), k == 3 ? 6u : 0u);
  }
}

TEST(EnumerateTest, EdgeCases) {
  const Term v = mk_var("v", Sort::integer());
  const std::vector<Term> terms{ge(v, mk_int(1))};
  auto models = oracle::enumerate_models(terms, {{"v", {ConstVal::integer(1)}}});
  ASSERT_EQ(models.size(), 1u);
  EXPECT_EQ(*models[0].find_const("v"), ConstVal::integer(1));

  EXPECT_EQ(error_of([&] { oracle::enumerate_models(terms, {{"v", {}}}); }), Errc::EmptyDims);
  EXPECT_EQ(error_of([&] { oracle::enumerate_models(terms, {}); }), Errc::UnboundName);
  EXPECT_EQ(error_of([&] { oracle::enumerate_models(terms, {{"v", {ConstVal::boolean(true)}}}); }),
            Errc::SortMismatch);

  std::vector<ConstVal> big(1001, ConstVal::integer(0));
  const Term w = mk_var("w", Sort::integer());
  EXPECT_EQ(error_of([&] {
              oracle::enumerate_models(std::vector<Term>{eq(v, w), eq(w, mk_int(0))},
                                       {{"v", big}, {"w", big}});
            }),
            Errc::SearchSpaceTooLarge);
}
