// Generalized Büchi emptiness with accepting-lasso extraction.
//
// The search works on a bare edge-labelled graph so that it can run on
// automata as well as on the explicit threshold products built during
// valuation.  Counters are ignored.

#ifndef CLTL_EMPTINESS_HPP
#define CLTL_EMPTINESS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "cltl/automaton.hpp"

namespace cltl {

struct AccGraph {
  std::size_t num_nodes = 0;
  std::size_t initial = 0;
  std::size_t num_sets = 0;
  // Edge e goes from src[e] to dst[e] and belongs to the acceptance sets
  // label_acc[label[e]].  Labels let many edges share one bitset.
  std::vector<std::size_t> src;
  std::vector<std::size_t> dst;
  std::vector<std::size_t> label;
  std::vector<AccSet> label_acc;

  void add_edge(std::size_t s, std::size_t d, std::size_t l) {
    src.push_back(s);
    dst.push_back(d);
    label.push_back(l);
  }
};

/// Edge indices: a path from the initial node, then a nonempty cycle.
struct GraphLasso {
  std::vector<std::size_t> stem;
  std::vector<std::size_t> loop;
};

/// Finds a reachable cycle that visits every acceptance set.  The first
/// accepting SCC met in breadth-first order anchors the lasso; the stem is
/// a shortest path to it, and the loop threads one member edge per set.
std::optional<GraphLasso> find_accepting_cycle(const AccGraph& g);

AccGraph to_acc_graph(const CounterAutomaton& a);

struct Witness {
  LassoRun run;
  LassoWord word;  // cubes completed with unspecified => false
};

std::optional<Witness> find_accepting_lasso(const CounterAutomaton& a);
bool is_empty(const CounterAutomaton& a);

/// States from which some accepting run starts, computed via SCCs.
std::vector<bool> live_states(const CounterAutomaton& a);

}  // namespace cltl

#endif  // CLTL_EMPTINESS_HPP
