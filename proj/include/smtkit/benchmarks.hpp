#pragma once

#include <cstddef>
#include <istream>
#include <utility>
#include <vector>

#include "smtkit/solver.hpp"
#include "smtkit/term.hpp"

namespace smtkit {

/// Pigeonhole over an (n+1) x n Int matrix P: every cell in {0, 1}, each
/// of the n+1 row sums >= 1, each of the n column sums <= 1. Always
/// unsatisfiable. Throws ArityError for n = 0.
std::vector<Term> pigeonhole(std::size_t n);

/// Undirected graph with 1-based node numbers.
struct GraphSpec {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// First non-comment line holds n, then one "i j" edge per line; `#`
/// starts a comment. Throws InvalidGraph.
GraphSpec parse_graph(std::istream& in);
void validate_graph(const GraphSpec& g);

struct ColoringProblem {
  TermArray nodes;           // Int variable color_i per node
  std::vector<Term> limits;  // 1 <= color_i <= k
  std::vector<Term> conns;   // color_i != color_j per edge
};

ColoringProblem coloring_constraints(const GraphSpec& g, std::size_t colors);

/// Asserts the coloring constraints in `session`, then repeatedly checks
/// and blocks each found coloring, up to `max_count` times. Each coloring
/// lists the color of nodes 1..n in order.
std::vector<std::vector<long long>> find_colorings(Session& session, const GraphSpec& g,
                                                   std::size_t colors, std::size_t max_count);

}  // namespace smtkit
