#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include "../support/solvers.hpp"
#include "smtkit/benchmarks.hpp"
#include "smtkit/emit.hpp"
#include "smtkit/error.hpp"
#include "smtkit/solver.hpp"

using namespace smtkit;
using namespace std::chrono_literals;

namespace {

Error error_from(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error thrown";
  return Error(Errc::SolverError, "none");
}

const Term x = mk_var("x", Sort::boolean());

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

#define REQUIRE_SOLVER(var)                                 \
  auto var##_opt = testutil::external_solver();             \
  if (!var##_opt) GTEST_SKIP() << "no SMT solver on PATH"; \
  const SolverConfig var = *var##_opt

}  // namespace

TEST(SolverConfigTest, Defaults) {
  const SolverConfig z = SolverConfig::z3();
  EXPECT_EQ(z.command, "z3");
  EXPECT_EQ(z.args, (std::vector<std::string>{"-smt2", "-in"}));
  const SolverConfig c = SolverConfig::cvc5();
  EXPECT_EQ(c.command, "cvc5");
  EXPECT_EQ(c.args, (std::vector<std::string>{"--interactive", "--produce-models"}));
  const SolverConfig custom = SolverConfig::from_command_line("  yices-smt2   --incremental ");
  EXPECT_EQ(custom.command, "yices-smt2");
  EXPECT_EQ(custom.args, (std::vector<std::string>{"--incremental"}));
  EXPECT_TRUE(solver_available(SolverConfig::from_command_line("/bin/sh")));
  EXPECT_FALSE(solver_available(SolverConfig::from_command_line("no_such_bin")));
}

TEST(SessionTest, SpawnFailures) {
  EXPECT_EQ(error_from([] { Session s(SolverConfig::from_command_line("no_such_bin")); }).code(),
            Errc::SpawnFailure);
  EXPECT_EQ(error_from([] { Session s(SolverConfig::from_command_line("/bin/true")); }).code(),
            Errc::SpawnFailure);
}

TEST(SessionTest, HandshakeTimeout) {
  SolverConfig silent = SolverConfig::from_command_line("/bin/sh -c 'sleep 30'");
  silent.args = {"-c", "sleep 30"};
  silent.read_timeout = 300ms;
  const auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(error_from([&] { Session s(silent); }).code(), Errc::HandshakeTimeout);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 5s);
}

TEST(SessionTest, ScriptedStatuses) {
  {
    Session s(testutil::scripted_solver("echo unsat"));
    s.assert_terms({x});
    const CheckOutcome r = s.check();
    EXPECT_EQ(r.status, CheckStatus::Unsat);
    EXPECT_FALSE(r.model);
  }
  {
    Session s(testutil::scripted_solver("echo sat"));
    const CheckOutcome r = s.check();
    EXPECT_EQ(r.status, CheckStatus::Sat);
    ASSERT_TRUE(r.model);
    EXPECT_TRUE(r.model->consts.empty());
  }
  {
    Session s(testutil::scripted_solver("echo unknown"));
    EXPECT_EQ(s.check().status, CheckStatus::Unknown);
  }
  {
    Session s(testutil::scripted_solver("echo '(error \"boom\")'"));
    const CheckOutcome r = s.check();
    ASSERT_TRUE(r.error);
    EXPECT_EQ(*r.error, "boom");
    EXPECT_TRUE(s.alive());
  }
}

TEST(SessionTest, StackDiscipline) {
  Session s(testutil::scripted_solver("echo sat"));
  EXPECT_EQ(s.stack_depth(), 0u);
  EXPECT_EQ(error_from([&] { s.pop(); }).code(), Errc::StackUnderflow);
  s.push(2);
  EXPECT_EQ(s.stack_depth(), 2u);
  EXPECT_EQ(error_from([&] { s.pop(3); }).code(), Errc::StackUnderflow);
  s.pop();
  EXPECT_EQ(s.stack_depth(), 1u);
  EXPECT_EQ(error_from([&] { s.push(0); }).code(), Errc::ArityError);
}

TEST(SessionTest, DeclarationsFollowFrames) {
  std::vector<std::string> sent;
  SolverConfig c = testutil::scripted_solver("echo sat");
  c.on_exchange = [&sent](std::string_view cmd, std::string_view) { sent.emplace_back(cmd); };
  Session s(c);
  auto declares_x = [&sent] {
    return std::count(sent.begin(), sent.end(), "(declare-fun x () Bool)");
  };
  s.push();
  s.assert_terms({x});
  s.assert_terms({x});
  EXPECT_EQ(declares_x(), 1);
  EXPECT_EQ(error_from([&] { s.assert_terms({eq(mk_var("x", Sort::integer()), mk_int(1))}); }).code(),
            Errc::SortConflict);
  s.pop();
  s.assert_terms({eq(mk_var("x", Sort::integer()), mk_int(1))});
  EXPECT_EQ(declares_x(), 1);
  EXPECT_EQ(std::count(sent.begin(), sent.end(), "(declare-fun x () Int)"), 1);
  EXPECT_EQ(error_from([&] { s.assert_terms({mk_int(3)}); }).code(), Errc::NonBoolAssert);
}

TEST(SessionTest, CloseIsIdempotent) {
  Session s(testutil::scripted_solver("echo sat"));
  EXPECT_TRUE(s.alive());
  s.close();
  s.close();
  EXPECT_FALSE(s.alive());
  EXPECT_EQ(error_from([&] { s.check(); }).code(), Errc::DeadSession);
  EXPECT_EQ(error_from([&] { s.assert_terms({x}); }).code(), Errc::DeadSession);
  EXPECT_EQ(error_from([&] { s.raw_send("(check-sat)"); }).code(), Errc::DeadSession);
}

TEST(SessionTest, ReadTimeoutKillsSession) {
  SolverConfig c = testutil::scripted_solver("sleep 30");
  c.read_timeout = 400ms;
  Session s(c);
  const auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(error_from([&] { s.check(); }).code(), Errc::ReadTimeout);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 5s);
  EXPECT_FALSE(s.alive());
  EXPECT_EQ(error_from([&] { s.check(); }).code(), Errc::DeadSession);
}

TEST(SessionTest, CloseFromAnotherThreadAbortsRead) {
  SolverConfig c = testutil::scripted_solver("sleep 30");
  c.read_timeout = 60s;
  Session s(c);
  std::thread closer([&s] {
    std::this_thread::sleep_for(300ms);
    s.close();
  });
  const auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(error_from([&] { s.check(); }).code(), Errc::DeadSession);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 5s);
  closer.join();
  EXPECT_FALSE(s.alive());
}

TEST(SessionTest, MoveKeepsSession) {
  Session a(testutil::scripted_solver("echo unsat"));
  Session b(std::move(a));
  EXPECT_EQ(b.check().status, CheckStatus::Unsat);
}

TEST(CheckFileTest, MissingFile) {
  EXPECT_EQ(error_from([] { check_file("/nonexistent/problem.smt2", SolverConfig::z3()); }).code(),
            Errc::FileNotFound);
}

TEST(ExternalSolverTest, EchoAndIncremental) {
  REQUIRE_SOLVER(cfg);
  Session s(cfg);
  const std::string echoed = s.raw_send("(echo \"hello\")");
  EXPECT_TRUE(echoed == "\"hello\"" || echoed == "hello") << echoed;
  s.assert_terms({x});
  EXPECT_EQ(s.check().status, CheckStatus::Sat);
  s.push();
  s.assert_terms({not_(x)});
  EXPECT_EQ(s.check().status, CheckStatus::Unsat);
  s.pop();
  const CheckOutcome r = s.check();
  ASSERT_EQ(r.status, CheckStatus::Sat);
  EXPECT_EQ(*r.model->find_const("x"), ConstVal::boolean(true));
}

TEST(ExternalSolverTest, UninterpretedFunctionModel) {
  REQUIRE_SOLVER(cfg);
  UFuncDecl f = declare_ufunc("f", {Sort::integer()}, Sort::boolean());
  const Term fm1 = apply_ufunc(f, {mk_int(-1)});
  const Term f1 = apply_ufunc(f, {mk_int(1)});
  const std::vector<Term> terms{and_({not_(fm1), f1})};
  const CheckOutcome r = check(terms, cfg);
  ASSERT_EQ(r.status, CheckStatus::Sat);
  ASSERT_TRUE(r.model && r.model->complete());
  const FuncInterp* interp = r.model->find_func("f");
  ASSERT_NE(interp, nullptr);
  std::vector<ConstVal> a{ConstVal::integer(-1)}, b{ConstVal::integer(1)};
  EXPECT_EQ(interp->apply(a), ConstVal::boolean(false));
  EXPECT_EQ(interp->apply(b), ConstVal::boolean(true));
}

TEST(ExternalSolverTest, SolverErrorIsReported) {
  REQUIRE_SOLVER(cfg);
  Session s(cfg);
  const std::string reply = s.raw_send("(assert undefined_name)");
  EXPECT_NE(reply.find("error"), std::string::npos);
  EXPECT_TRUE(s.alive());
  EXPECT_EQ(s.check().status, CheckStatus::Sat);
}

TEST(ExternalSolverTest, GetValue) {
  REQUIRE_SOLVER(cfg);
  Session s(cfg);
  const Term r = mk_var("r", Sort::real());
  s.assert_terms({eq(r, mk_real(7, 2))});
  const CheckOutcome out = s.check();
  ASSERT_EQ(out.status, CheckStatus::Sat);
  EXPECT_EQ(*out.model->find_const("r"), ConstVal::real(Rational(7, 2)));
  const Term v = mk_var("v", Sort::integer());
  s.assert_terms({eq(v, mk_int(-1))});
  ASSERT_EQ(s.check().status, CheckStatus::Sat);
  auto values = s.get_value(std::vector<Term>{v, mk_app_raw(Op::BvAdd, {mk_bv(255, 8), mk_bv(1, 8)})});
  ASSERT_EQ(values.size(), 2u);
  EXPECT_EQ(values[0].second, ConstVal::integer(-1));
  EXPECT_EQ(values[1].second, ConstVal::bitvec(0, 8));
}

TEST(ExternalSolverTest, CheckFile) {
  REQUIRE_SOLVER(cfg);
  EXPECT_EQ(check_file(temp_file("smtkit_true.smt2", "(assert true)(check-sat)"), cfg),
            CheckStatus::Sat);
  EXPECT_EQ(check_file(temp_file("smtkit_nocheck.smt2", "(declare-fun b () Bool)(assert (and b (not b)))"), cfg),
            CheckStatus::Unsat);

  std::ostringstream script;
  save_script(pigeonhole(2), {}, script);
  const auto path = temp_file("smtkit_php2.smt2", script.str());
  EXPECT_EQ(check_file(path, cfg), CheckStatus::Unsat);
  EXPECT_EQ(check(pigeonhole(2), cfg).status, CheckStatus::Unsat);

  EXPECT_EQ(error_from([&] {
              check_file(temp_file("smtkit_bad.smt2", "(assert undefined_name)(check-sat)"), cfg);
            }).code(),
            Errc::SolverError);
}

TEST(ExternalSolverTest, TriangleColorings) {
  REQUIRE_SOLVER(cfg);
  std::istringstream in("3\n1 2\n2 3\n1 3\n");
  const GraphSpec g = parse_graph(in);
  {
    Session s(cfg);
    auto found = find_colorings(s, g, 3, 10);
    EXPECT_EQ(found.size(), 6u);
    std::set<std::vector<long long>> distinct(found.begin(), found.end());
    EXPECT_EQ(distinct.size(), 6u);
  }
  {
    Session s(cfg);
    EXPECT_TRUE(find_colorings(s, g, 2, 10).empty());
  }
}
