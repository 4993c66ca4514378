#include "smtkit/benchmarks.hpp"

#include <sstream>
#include <string>

#include "smtkit/error.hpp"

namespace smtkit {

std::vector<Term> pigeonhole(std::size_t n) {
  if (n == 0) throw Error(Errc::ArityError, "pigeonhole needs n >= 1");
  const TermArray p = mk_var_array("P", {n + 1, n}, Sort::integer());
  std::vector<Term> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(ge(sum(p.row(i)), mk_int(1)));
  for (std::size_t j = 0; j < n; ++j) out.push_back(le(sum(p.col(j)), mk_int(1)));
  for (const Term& t : map_ge(p.flat(), mk_int(0))) out.push_back(t);
  for (const Term& t : map_le(p.flat(), mk_int(1))) out.push_back(t);
  return out;
}

void validate_graph(const GraphSpec& g) {
  if (g.n == 0) throw Error(Errc::InvalidGraph, "graph needs at least one node");
  for (const auto& [i, j] : g.edges) {
    if (i < 1 || j < 1 || i > g.n || j > g.n) {
      throw Error(Errc::InvalidGraph, "edge " + std::to_string(i) + " " + std::to_string(j) +
                                          " references a node outside 1.." + std::to_string(g.n));
    }
    if (i == j) throw Error(Errc::InvalidGraph, "self-loop on node " + std::to_string(i));
  }
}

GraphSpec parse_graph(std::istream& in) {
  GraphSpec g;
  bool have_n = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<long long> nums;
    std::string word;
    while (fields >> word) {
      try {
        std::size_t used = 0;
        nums.push_back(std::stoll(word, &used));
        if (used != word.size()) throw std::invalid_argument(word);
      } catch (const std::exception&) {
        throw Error(Errc::InvalidGraph, "line " + std::to_string(lineno) + ": not a number: " + word);
      }
    }
    if (nums.empty()) continue;
    const bool bad_count = have_n ? nums.size() != 2 : nums.size() != 1;
    const bool negative = std::any_of(nums.begin(), nums.end(), [](long long v) { return v < 0; });
    if (bad_count || negative) {
      throw Error(Errc::InvalidGraph, "line " + std::to_string(lineno) + ": expected " +
                                          (have_n ? "an edge 'i j'" : "the node count"));
    }
    if (!have_n) {
      g.n = static_cast<std::size_t>(nums[0]);
      have_n = true;
    } else {
      g.edges.emplace_back(static_cast<std::size_t>(nums[0]), static_cast<std::size_t>(nums[1]));
    }
  }
  if (!have_n) throw Error(Errc::InvalidGraph, "missing node count");
  validate_graph(g);
  return g;
}

ColoringProblem coloring_constraints(const GraphSpec& g, std::size_t colors) {
  validate_graph(g);
  if (colors == 0) throw Error(Errc::ArityError, "need at least one color");
  ColoringProblem p;
  p.nodes = mk_var_array("color", {g.n}, Sort::integer());
  const Term lo = mk_int(1);
  const Term hi = mk_int(static_cast<long long>(colors));
  for (const Term& v : p.nodes) p.limits.push_back(and_({ge(v, lo), le(v, hi)}));
  for (const auto& [i, j] : g.edges) p.conns.push_back(neq(p.nodes[i - 1], p.nodes[j - 1]));
  return p;
}

std::vector<std::vector<long long>> find_colorings(Session& session, const GraphSpec& g,
                                                   std::size_t colors, std::size_t max_count) {
  const ColoringProblem p = coloring_constraints(g, colors);
  session.assert_terms(p.limits);
  session.assert_terms(p.conns);

  std::vector<std::vector<long long>> found;
  while (found.size() < max_count) {
    const CheckOutcome outcome = session.check();
    if (outcome.error) throw Error(Errc::SolverError, *outcome.error);
    if (outcome.status != CheckStatus::Sat) break;
    if (!outcome.model) throw Error(Errc::MalformedModel, "sat without a model");

    std::vector<long long> coloring;
    std::vector<Term> same;
    for (const Term& v : p.nodes) {
      const ConstVal* value = outcome.model->find_const(v.var_name());
      if (!value || !value->is_int()) {
        throw Error(Errc::MalformedModel, "model has no integer value for " + v.var_name());
      }
      coloring.push_back(value->as_int().convert_to<long long>());
      same.push_back(eq(v, mk_const(*value)));
    }
    found.push_back(std::move(coloring));
    session.assert_terms({not_(all(same))});
  }
  return found;
}

}  // namespace smtkit
