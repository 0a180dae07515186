#include "cltl/emptiness.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace cltl {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Adjacency {
  std::vector<std::size_t> start;  // CSR offsets, size num_nodes + 1
  std::vector<std::size_t> edges;

  Adjacency(std::size_t n, const std::vector<std::size_t>& from) {
    start.assign(n + 1, 0);
    for (std::size_t s : from) ++start[s + 1];
    for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
    edges.resize(from.size());
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t e = 0; e < from.size(); ++e) edges[fill[from[e]]++] = e;
  }

  auto of(std::size_t v) const {
    struct Range {
      const std::size_t* b;
      const std::size_t* e;
      const std::size_t* begin() const { return b; }
      const std::size_t* end() const { return e; }
    };
    return Range{edges.data() + start[v], edges.data() + start[v + 1]};
  }
};

// Iterative Tarjan over the nodes reachable from `roots`.  Unvisited nodes
// keep scc id kNone.
std::vector<std::size_t> tarjan(const AccGraph& g, const Adjacency& adj,
                                const std::vector<std::size_t>& roots,
                                std::size_t& num_sccs) {
  std::vector<std::size_t> index(g.num_nodes, kNone), low(g.num_nodes, 0),
      scc(g.num_nodes, kNone);
  std::vector<bool> on_stack(g.num_nodes, false);
  std::vector<std::size_t> stack;
  struct Frame {
    std::size_t v;
    std::size_t next;  // position in adjacency
  };
  std::vector<Frame> call;
  std::size_t counter = 0;
  num_sccs = 0;

  for (std::size_t root : roots) {
    if (index[root] != kNone) continue;
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    call.push_back({root, adj.start[root]});
    while (!call.empty()) {
      Frame& f = call.back();
      std::size_t v = f.v;
      if (f.next < adj.start[v + 1]) {
        std::size_t w = g.dst[adj.edges[f.next++]];
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, adj.start[w]});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          scc[w] = num_sccs;
        } while (w != v);
        ++num_sccs;
      }
      call.pop_back();
      if (!call.empty()) {
        std::size_t u = call.back().v;
        low[u] = std::min(low[u], low[v]);
      }
    }
  }
  return scc;
}

std::vector<bool> accepting_sccs(const AccGraph& g,
                                 const std::vector<std::size_t>& scc,
                                 std::size_t num_sccs) {
  std::vector<bool> internal(num_sccs, false);
  std::vector<AccSet> cover(num_sccs, AccSet(g.num_sets));
  for (std::size_t e = 0; e < g.src.size(); ++e) {
    std::size_t c = scc[g.src[e]];
    if (c == kNone || c != scc[g.dst[e]]) continue;
    internal[c] = true;
    cover[c] |= g.label_acc[g.label[e]];
  }
  std::vector<bool> acc(num_sccs);
  for (std::size_t c = 0; c < num_sccs; ++c)
    acc[c] = internal[c] && cover[c].all();
  return acc;
}

// Breadth-first search inside one SCC from `from`.  Stops at the first edge
// satisfying `goal`; returns the edge path ending with it, or nullopt.
template <typename Goal>
std::optional<std::vector<std::size_t>> bfs_to_edge(
    const AccGraph& g, const Adjacency& adj, const std::vector<std::size_t>& scc,
    std::size_t from, Goal goal) {
  std::size_t comp = scc[from];
  std::vector<std::size_t> parent_edge(g.num_nodes, kNone);
  std::vector<bool> seen(g.num_nodes, false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : adj.of(v)) {
      std::size_t w = g.dst[e];
      if (scc[w] != comp) continue;
      if (goal(e)) {
        std::vector<std::size_t> path{e};
        for (std::size_t x = v; x != from;) {
          std::size_t pe = parent_edge[x];
          path.push_back(pe);
          x = g.src[pe];
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (!seen[w]) {
        seen[w] = true;
        parent_edge[w] = e;
        queue.push_back(w);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<GraphLasso> find_accepting_cycle(const AccGraph& g) {
  if (g.num_nodes == 0) return std::nullopt;
  Adjacency adj(g.num_nodes, g.src);
  std::size_t num_sccs = 0;
  auto scc = tarjan(g, adj, {g.initial}, num_sccs);
  auto acc = accepting_sccs(g, scc, num_sccs);
  if (std::none_of(acc.begin(), acc.end(), [](bool b) { return b; }))
    return std::nullopt;

  // Breadth-first from the initial node; the first node in an accepting SCC
  // anchors the lasso.
  std::vector<std::size_t> parent_edge(g.num_nodes, kNone);
  std::vector<bool> seen(g.num_nodes, false);
  std::deque<std::size_t> queue{g.initial};
  seen[g.initial] = true;
  std::size_t anchor = kNone;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (acc[scc[v]]) {
      anchor = v;
      break;
    }
    for (std::size_t e : adj.of(v)) {
      std::size_t w = g.dst[e];
      if (seen[w]) continue;
      seen[w] = true;
      parent_edge[w] = e;
      queue.push_back(w);
    }
  }

  GraphLasso out;
  for (std::size_t x = anchor; x != g.initial;) {
    std::size_t pe = parent_edge[x];
    out.stem.push_back(pe);
    x = g.src[pe];
  }
  std::reverse(out.stem.begin(), out.stem.end());

  AccSet covered(g.num_sets);
  std::size_t cur = anchor;
  for (std::size_t j = 0; j < g.num_sets; ++j) {
    if (covered.test(j)) continue;
    auto path = bfs_to_edge(g, adj, scc, cur, [&](std::size_t e) {
      return g.label_acc[g.label[e]].test(j);
    });
    for (std::size_t e : *path) {
      covered |= g.label_acc[g.label[e]];
      out.loop.push_back(e);
    }
    cur = g.dst[out.loop.back()];
  }
  if (cur != anchor || out.loop.empty()) {
    auto path = bfs_to_edge(g, adj, scc, cur,
                            [&](std::size_t e) { return g.dst[e] == anchor; });
    out.loop.insert(out.loop.end(), path->begin(), path->end());
  }
  return out;
}

AccGraph to_acc_graph(const CounterAutomaton& a) {
  AccGraph g;
  g.num_nodes = a.num_states();
  g.initial = a.initial();
  g.num_sets = a.num_acc_sets();
  for (std::size_t i = 0; i < a.transitions().size(); ++i) {
    const Transition& t = a.transition(i);
    g.add_edge(t.src, t.dst, i);
    g.label_acc.push_back(t.acc);
  }
  return g;
}

std::optional<Witness> find_accepting_lasso(const CounterAutomaton& a) {
  auto lasso = find_accepting_cycle(to_acc_graph(a));
  if (!lasso) return std::nullopt;
  Witness w;
  w.run.stem = lasso->stem;
  w.run.loop = lasso->loop;
  for (std::size_t e : w.run.stem)
    w.word.prefix.push_back(a.transition(e).cube.complete());
  for (std::size_t e : w.run.loop)
    w.word.cycle.push_back(a.transition(e).cube.complete());
  return w;
}

bool is_empty(const CounterAutomaton& a) {
  return !find_accepting_cycle(to_acc_graph(a)).has_value();
}

std::vector<bool> live_states(const CounterAutomaton& a) {
  AccGraph g = to_acc_graph(a);
  Adjacency adj(g.num_nodes, g.src);
  std::vector<std::size_t> roots(g.num_nodes);
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = i;
  std::size_t num_sccs = 0;
  auto scc = tarjan(g, adj, roots, num_sccs);
  auto acc = accepting_sccs(g, scc, num_sccs);

  std::vector<bool> live(g.num_nodes, false);
  Adjacency rev(g.num_nodes, g.dst);
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < g.num_nodes; ++v) {
    if (acc[scc[v]]) {
      live[v] = true;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t e : rev.of(v)) {
      std::size_t u = g.src[e];
      if (!live[u]) {
        live[u] = true;
        stack.push_back(u);
      }
    }
  }
  return live;
}

}  // namespace cltl
