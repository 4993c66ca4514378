#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/random_terms.hpp"
#include "smtkit/smtkit.hpp"

using namespace smtkit;
using Clock = std::chrono::steady_clock;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Result {
  Verdict verdict;
  std::string detail;
};

Result pass(std::string d) { return {Verdict::Pass, std::move(d)}; }
Result fail(std::string d) { return {Verdict::Fail, std::move(d)}; }
Result skip(std::string d) { return {Verdict::Skip, std::move(d)}; }

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// Every command/reply pair seen by any solver session, for the parser check.
struct Exchange {
  std::string command;
  std::string reply;
};
std::vector<Exchange> g_exchanges;

std::optional<SolverConfig> g_solver;

SolverConfig solver(std::chrono::milliseconds timeout = std::chrono::seconds(60)) {
  SolverConfig c = *g_solver;
  c.read_timeout = timeout;
  c.on_exchange = [](std::string_view cmd, std::string_view reply) {
    g_exchanges.push_back({std::string(cmd), std::string(reply)});
  };
  return c;
}

// Assignments the solver left out are don't-cares; bind them to false so
// the assertions can be evaluated.
Model completed(const Model& m, std::span<const Term> terms) {
  Model out = m;
  for (const auto& [name, sort] : oracle::free_variables(terms)) {
    if (!out.find_const(name) && sort.is_bool()) out.consts.emplace(name, ConstVal::boolean(false));
  }
  return out;
}

bool satisfies(const Model& m, std::span<const Term> terms) {
  const Model full = completed(m, terms);
  for (const Term& t : terms) {
    if (!oracle::evaluate(t, full).as_bool()) return false;
  }
  return true;
}

Result criterion1() {
  if (!g_solver) return skip("z3 not installed");
  std::ostringstream d;
  bool ok = true;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto start = Clock::now();
    CheckOutcome r = check(pigeonhole(n), solver(std::chrono::minutes(10)));
    const double t = seconds_since(start);
    d << "n=" << n << ":" << to_string(r.status) << "/" << fmt_seconds(t) << " ";
    if (r.status != CheckStatus::Unsat || r.error) ok = false;
    if (n <= 5 && t >= 10.0) ok = false;
  }
  return ok ? pass(d.str()) : fail(d.str());
}

Result criterion2() {
  if (!g_solver) return skip("z3 not installed");
  UFuncDecl f = declare_ufunc("f", {Sort::integer()}, Sort::boolean());
  const Term fm1 = apply_ufunc(f, {mk_int(-1)});
  const Term f1 = apply_ufunc(f, {mk_int(1)});
  const std::vector<Term> terms{not_(fm1), f1};
  const CheckOutcome r = check(terms, solver());
  if (r.status != CheckStatus::Sat || !r.model) return fail("status " + std::string(to_string(r.status)));
  const ConstVal a = oracle::evaluate(fm1, *r.model);
  const ConstVal b = oracle::evaluate(f1, *r.model);
  std::ostringstream d;
  d << "f(-1)=" << a << " f(1)=" << b;
  if (a == ConstVal::boolean(false) && b == ConstVal::boolean(true)) return pass(d.str());
  return fail(d.str());
}

Result criterion3() {
  const Term x = mk_var("x", Sort::boolean());
  const Term y = mk_var("y", Sort::boolean());
  const std::string script = script_for(std::vector<Term>{or_({not_(x), and_({not_(x), y})})});
  const std::vector<Command> commands = parse_script(script);

  std::vector<cmd::DeclareFun> decls;
  std::vector<Term> asserted;
  SymbolTable table;
  for (const Command& c : commands) {
    if (auto* d = std::get_if<cmd::DeclareFun>(&c)) {
      decls.push_back(*d);
      table.declare(*d);
    }
    if (auto* a = std::get_if<cmd::Assert>(&c)) asserted.push_back(a->term);
  }
  const std::vector<cmd::DeclareFun> expected_decls{{"x", {}, Sort::boolean()},
                                                     {"y", {}, Sort::boolean()}};
  if (decls != expected_decls) return fail("declarations differ");
  if (asserted.size() != 1) return fail("expected one assert");

  const Term reference = parse_term(parse_one("(or (and (not x) y) (not x))"), table);
  const std::vector<std::string> vars{"x", "y"};
  const auto got = oracle::truth_table(asserted[0], vars);
  const auto want = oracle::truth_table(reference, vars);
  std::string rows;
  for (bool b : got) rows += b ? '1' : '0';
  if (got == want) return pass("4-row table " + rows + " matches reference");
  return fail("table " + rows + " differs from reference");
}

Result criterion4() {
  const auto start = Clock::now();
  testutil::RandomBoolTerms gen(4242, 12, 6);
  std::vector<std::string> names;
  for (const Term& v : gen.vars()) names.push_back(v.var_name());
  int mismatched = 0, not_idempotent = 0;
  for (int i = 0; i < 1000; ++i) {
    const Term t = gen.next();
    const Term s = simplify(t);
    if (oracle::truth_table(t, names) != oracle::truth_table(s, names)) ++mismatched;
    if (!(simplify(s) == s)) ++not_idempotent;
  }
  const double elapsed = seconds_since(start);

  const Term folded = simplify(mk_app_raw(Op::Add, {mk_int(1), mk_real(5, 2)}));
  const bool fold_ok = folded.is_const() && folded.const_value() == ConstVal::real(Rational(7, 2));

  std::ostringstream d;
  d << "1000 terms, table mismatches=" << mismatched << ", non-idempotent=" << not_idempotent
    << ", " << fmt_seconds(elapsed) << ", 1+5/2 -> " << emit_term(folded);
  const bool ok = mismatched == 0 && not_idempotent == 0 && elapsed < 30.0 && fold_ok;
  return ok ? pass(d.str()) : fail(d.str());
}

std::vector<Term> random_conjunction(testutil::RandomBoolTerms& gen, std::mt19937& rng) {
  std::vector<Term> terms;
  const int n = 2 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) terms.push_back(gen.next());
  return terms;
}

Result criterion5() {
  if (!g_solver) return skip("z3 not installed");
  const auto start = Clock::now();
  testutil::RandomBoolTerms gen(555, 6, 4);
  std::mt19937 rng(555);
  int sat = 0, unsat = 0, disagree = 0, bad_models = 0;
  for (int i = 0; i < 500; ++i) {
    const std::vector<Term> terms = random_conjunction(gen, rng);
    const CheckOutcome brute = oracle::brute_force_sat(terms);
    const CheckOutcome z3 = check(terms, solver());
    if (brute.status != z3.status) ++disagree;
    if (z3.status == CheckStatus::Sat) {
      ++sat;
      if (!z3.model || !satisfies(*z3.model, terms)) ++bad_models;
      if (brute.model && !satisfies(*brute.model, terms)) ++bad_models;
    } else {
      ++unsat;
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << "500 formulae (" << sat << " sat, " << unsat << " unsat), disagreements=" << disagree
    << ", invalid models=" << bad_models << ", " << fmt_seconds(elapsed);
  const bool ok = disagree == 0 && bad_models == 0 && elapsed < 120.0;
  return ok ? pass(d.str()) : fail(d.str());
}

Result criterion6() {
  if (!g_solver) return skip("z3 not installed");
  testutil::RandomBoolTerms gen(66, 6, 4);
  std::mt19937 rng(66);
  int mismatches = 0;
  std::map<std::string, int> shapes;
  for (int i = 0; i < 100; ++i) {
    const std::vector<Term> a = random_conjunction(gen, rng);
    const std::vector<Term> b = random_conjunction(gen, rng);
    Session s(solver());
    s.assert_terms(a);
    s.push();
    s.assert_terms(b);
    const CheckStatus both = s.check().status;
    s.pop();
    const CheckStatus only_a = s.check().status;
    s.close();

    std::vector<Term> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const CheckStatus one_shot_both = check(ab, solver()).status;
    const CheckStatus one_shot_a = check(a, solver()).status;
    if (both != one_shot_both || only_a != one_shot_a) ++mismatches;
    shapes[std::string(to_string(both)) + "/" + std::string(to_string(only_a))]++;
  }
  std::ostringstream d;
  d << "100 pairs, mismatches=" << mismatches << " (";
  for (const auto& [k, v] : shapes) d << k << ":" << v << " ";
  d << ")";
  return mismatches == 0 ? pass(d.str()) : fail(d.str());
}

Result criterion7() {
  if (!g_solver) return skip("z3 not installed");
  std::istringstream in("3\n1 2\n2 3\n1 3\n");
  const GraphSpec k3 = parse_graph(in);
  std::ostringstream d;
  bool ok = true;
  for (std::size_t k : {3u, 2u}) {
    Session s(solver());
    const std::size_t solver_count = find_colorings(s, k3, k, 10).size();
    s.close();

    const ColoringProblem p = coloring_constraints(k3, k);
    std::vector<Term> terms = p.limits;
    terms.insert(terms.end(), p.conns.begin(), p.conns.end());
    oracle::DomainSpec domains;
    for (const Term& v : p.nodes) {
      for (std::size_t c = 1; c <= k; ++c) domains[v.var_name()].push_back(ConstVal::integer(static_cast<long long>(c)));
    }
    const std::size_t oracle_count = oracle::enumerate_models(terms, domains).size();
    const std::size_t expected = k == 3 ? 6 : 0;
    d << "k=" << k << ": solver=" << solver_count << " oracle=" << oracle_count << " ";
    if (solver_count != expected || oracle_count != expected) ok = false;
  }
  return ok ? pass(d.str()) : fail(d.str());
}

struct BvCase {
  Term term;
  ConstVal folded;
};

Result criterion8() {
  std::vector<BvCase> cases;
  auto add_case = [&cases](OpKind op, std::vector<ConstVal> args) {
    std::vector<Term> terms;
    for (const ConstVal& a : args) terms.push_back(mk_const(a));
    cases.push_back({mk_app_raw(op, terms), fold_const(op, args)});
  };

  for (unsigned v = 0; v < 256; ++v) {
    const ConstVal c = ConstVal::bitvec(v, 8);
    add_case(Op::BvNot, {c});
    add_case(Op::BvNeg, {c});
    add_case(OpKind::extract(7, 4), {c});
    add_case(OpKind::extract(3, 0), {c});
    add_case(OpKind::extract(6, 2), {c});
    add_case(OpKind::extract(0, 0), {c});
  }
  std::mt19937 rng(8);
  for (int i = 0; i < 256; ++i) {
    const ConstVal a = ConstVal::bitvec(rng() % 256, 8);
    const ConstVal b = ConstVal::bitvec(rng() % 256, 8);
    for (Op op : {Op::BvAdd, Op::BvMul, Op::BvAnd, Op::BvOr, Op::BvXor, Op::BvUlt, Op::Concat}) {
      add_case(op, {a, b});
    }
  }

  // Width law, independent of any solver.
  int width_violations = 0;
  const Sort bv8 = Sort::bitvec(8);
  for (std::uint32_t hi = 0; hi < 8; ++hi) {
    for (std::uint32_t lo = 0; lo <= hi; ++lo) {
      const Sort s = result_sort(OpKind::extract(hi, lo), std::span(&bv8, 1));
      const Term t = extract(mk_var("z", bv8), hi, lo);
      const ConstVal folded = fold_const(OpKind::extract(hi, lo), std::vector{ConstVal::bitvec(0xA5, 8)});
      if (s.width() != hi - lo + 1 || t.sort().width() != hi - lo + 1 ||
          folded.as_bitvec().width != hi - lo + 1) {
        ++width_violations;
      }
    }
  }

  if (!g_solver) {
    return skip("z3 not installed; width law violations=" + std::to_string(width_violations));
  }

  Session s(solver());
  if (s.check().status != CheckStatus::Sat) return fail("empty stack is not sat");
  int disagreements = 0;
  std::string first_bad;
  const std::size_t batch = 64;
  for (std::size_t i = 0; i < cases.size(); i += batch) {
    std::vector<Term> terms;
    for (std::size_t j = i; j < std::min(cases.size(), i + batch); ++j) terms.push_back(cases[j].term);
    const auto values = s.get_value(terms);
    if (values.size() != terms.size()) return fail("get-value returned the wrong number of pairs");
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (!(values[j].second == cases[i + j].folded)) {
        if (first_bad.empty()) {
          first_bad = emit_term(terms[j]) + " solver=" + values[j].second.to_string() +
                      " fold=" + cases[i + j].folded.to_string();
        }
        ++disagreements;
      }
    }
  }
  s.close();
  std::ostringstream d;
  d << cases.size() << " ground terms, disagreements=" << disagreements
    << ", width law violations=" << width_violations << " over 36 (hi,lo)";
  if (!first_bad.empty()) d << ", first: " << first_bad;
  return disagreements == 0 && width_violations == 0 ? pass(d.str()) : fail(d.str());
}

Result criterion9() {
  if (!g_solver) return skip("z3 not installed");
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_bad;
  auto bad = [&](const Exchange& e, const std::string& why) {
    ++failures;
    if (first_bad.empty()) first_bad = e.command.substr(0, 40) + " -> " + why;
  };
  for (const Exchange& e : g_exchanges) {
    ++checked;
    try {
      if (e.command == "(check-sat)") {
        parse_check_sat(e.reply);
      } else if (e.command == "(get-model)") {
        const Model m = parse_model(parse_one(e.reply));
        for (const auto& [name, issue] : m.issues) {
          if (issue.code == Errc::MalformedModel) bad(e, name + ": " + issue.message);
        }
      } else if (e.command.starts_with("(get-value")) {
        parse_get_value(parse_one(e.reply));
      } else if (e.command.starts_with("(exit")) {
        // The solver may exit without replying.
      } else if (e.reply != "success") {
        bad(e, "unexpected reply " + e.reply.substr(0, 40));
      }
    } catch (const Error& err) {
      if (err.code() == Errc::MalformedModel || err.code() == Errc::UnrecognizedResponse ||
          err.code() == Errc::UnbalancedParens || err.code() == Errc::EmptyInput) {
        bad(e, err.what());
      } else {
        bad(e, std::string("other error: ") + err.what());
      }
    }
  }
  std::ostringstream d;
  d << checked << " replies, parse failures=" << failures;
  if (!first_bad.empty()) d << ", first: " << first_bad;
  if (checked == 0) return fail("no replies were recorded");
  return failures == 0 ? pass(d.str()) : fail(d.str());
}

}  // namespace

int main() {
  if (solver_available(SolverConfig::z3())) g_solver = SolverConfig::z3();

  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"pigeonhole n=1..6 unsat", criterion1},
      {"uninterpreted function model", criterion2},
      {"emission equivalence", criterion3},
      {"simplifier soundness", criterion4},
      {"oracle/solver agreement", criterion5},
      {"incremental semantics", criterion6},
      {"graph coloring counts", criterion7},
      {"bitvector semantics", criterion8},
      {"response parser totality", criterion9},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = fail(std::string("exception: ") + e.what());
    }
    const char* tag = r.verdict == Verdict::Pass ? "PASS" : r.verdict == Verdict::Fail ? "FAIL" : "SKIP";
    std::cout << tag << " " << (i + 1) << " " << criteria[i].first << ": " << r.detail << std::endl;
    if (r.verdict == Verdict::Fail) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
