#include "reference.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <vector>

namespace cltl::testing {

// ── Direct semantics ────────────────────────────────────────────────────────

namespace {

class DirectEval {
 public:
  DirectEval(const LassoWord& u, std::uint64_t n) : u_(u), n_(n) {}

  bool at(Formula f, std::size_t p) {
    auto key = std::make_pair(f.node(), p);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool v = compute(f, p);
    memo_[key] = v;
    return v;
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<const void*, std::size_t>& k) const {
      return std::hash<const void*>()(k.first) * 31 + k.second;
    }
  };

  // Walking far enough that every (position, count) pair repeats.
  std::uint64_t walk_limit() const { return u_.size() * (n_ + 2) + 1; }

  bool compute(Formula f, std::size_t p) {
    switch (f.op()) {
      case Op::True: return true;
      case Op::False: return false;
      case Op::Literal: return u_.at(p).holds(f.prop()) == f.positive();
      case Op::And: return at(f.lhs(), p) && at(f.rhs(), p);
      case Op::Or: return at(f.lhs(), p) || at(f.rhs(), p);
      case Op::Next: return at(f.child(), u_.succ(p));
      case Op::Until: {
        std::size_t q = p;
        for (std::size_t i = 0; i <= u_.size(); ++i, q = u_.succ(q)) {
          if (at(f.rhs(), q)) return true;
          if (!at(f.lhs(), q)) return false;
        }
        return false;
      }
      case Op::Release: {
        std::size_t q = p;
        for (std::size_t i = 0; i <= u_.size(); ++i, q = u_.succ(q)) {
          if (!at(f.rhs(), q)) return false;
          if (at(f.lhs(), q)) return true;
        }
        return true;
      }
      case Op::CostUntil: {
        // Some later position satisfies rhs, with at most n failures of
        // lhs strictly before it.
        std::size_t q = p;
        std::uint64_t failures = 0;
        for (std::uint64_t i = 0; i < walk_limit(); ++i, q = u_.succ(q)) {
          if (at(f.rhs(), q)) return true;
          if (!at(f.lhs(), q) && ++failures > n_) return false;
        }
        return false;
      }
      case Op::CostRelease: {
        // Every position satisfies rhs unless more than n positions
        // satisfying lhs precede it.
        std::size_t q = p;
        std::uint64_t seen = 0;
        for (std::uint64_t i = 0; i < walk_limit(); ++i, q = u_.succ(q)) {
          if (!at(f.rhs(), q)) return false;
          if (at(f.lhs(), q) && ++seen > n_) return true;
        }
        return true;
      }
    }
    return false;
  }

  const LassoWord& u_;
  std::uint64_t n_;
  std::unordered_map<std::pair<const void*, std::size_t>, bool, KeyHash> memo_;
};

}  // namespace

bool holds_direct(Formula phi, const LassoWord& u, std::uint64_t n) {
  return DirectEval(u, n).at(phi, 0);
}

CappedValue direct_value_inf(Formula phi, const LassoWord& u,
                             std::uint64_t cap) {
  for (std::uint64_t n = 0; n <= cap; ++n)
    if (holds_direct(phi, u, n)) return CappedValue::exact(n);
  return CappedValue::above_cap();
}

CappedValue direct_value_sup(Formula phi, const LassoWord& u,
                             std::uint64_t cap) {
  if (holds_direct(phi, u, cap)) return CappedValue::above_cap();
  for (std::uint64_t n = 0; n < cap; ++n)
    if (!holds_direct(phi, u, n)) return CappedValue::exact(n == 0 ? 0 : n - 1);
  return CappedValue::exact(cap - 1);
}

// ── Emptiness by definition ─────────────────────────────────────────────────

namespace {

struct Edge {
  std::size_t src, dst;
  AccSet acc;
};

bool naive_nonempty(std::size_t n, std::size_t init, std::size_t m,
                    const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& e : edges) succ[e.src].push_back(e.dst);
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : succ[v])
        if (!reach[s][w]) {
          reach[s][w] = true;
          stack.push_back(w);
        }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!reach[init][v]) continue;
    auto same = [&](std::size_t x) { return reach[v][x] && reach[x][v]; };
    bool internal = false;
    AccSet cover(m);
    for (const auto& e : edges) {
      if (same(e.src) && same(e.dst)) {
        internal = true;
        cover |= e.acc;
      }
    }
    if (internal && cover.count() == m) return true;
  }
  return false;
}

}  // namespace

bool naive_nonempty(const CounterAutomaton& a) {
  std::vector<Edge> edges;
  for (const auto& t : a.transitions()) edges.push_back({t.src, t.dst, t.acc});
  return naive_nonempty(a.num_states(), a.initial(), a.num_acc_sets(), edges);
}

bool accepts(const CounterAutomaton& a, const LassoWord& u) {
  const std::size_t len = u.size();
  std::vector<Edge> edges;
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (std::size_t p = 0; p < len; ++p)
      for (std::size_t e : a.out(static_cast<State>(q))) {
        const Transition& t = a.transition(e);
        if (t.cube.admits(u.at(p)))
          edges.push_back({q * len + p, t.dst * len + u.succ(p), t.acc});
      }
  return naive_nonempty(a.num_states() * len, a.initial() * len,
                        a.num_acc_sets(), edges);
}

// ── Witness check ───────────────────────────────────────────────────────────

std::optional<std::string> check_witness(const CounterAutomaton& a,
                                         const Witness& w) {
  const auto& ts = a.transitions();
  if (w.run.loop.empty()) return "loop is empty";
  if (w.word.prefix.size() != w.run.stem.size() ||
      w.word.cycle.size() != w.run.loop.size())
    return "word and run lengths differ";
  std::size_t state = a.initial();
  for (std::size_t i = 0; i < w.run.stem.size(); ++i) {
    std::size_t e = w.run.stem[i];
    if (e >= ts.size()) return "bad transition index";
    if (ts[e].src != state) return "stem not chained";
    if (!ts[e].cube.admits(w.word.prefix[i])) return "stem letter rejected";
    state = ts[e].dst;
  }
  const std::size_t anchor = state;
  AccSet cover(a.num_acc_sets());
  for (std::size_t i = 0; i < w.run.loop.size(); ++i) {
    std::size_t e = w.run.loop[i];
    if (e >= ts.size()) return "bad transition index";
    if (ts[e].src != state) return "loop not chained";
    if (!ts[e].cube.admits(w.word.cycle[i])) return "loop letter rejected";
    cover |= ts[e].acc;
    state = ts[e].dst;
  }
  if (state != anchor) return "loop does not return to its start";
  if (cover.count() != a.num_acc_sets()) return "loop misses an acceptance set";
  return std::nullopt;
}

// ── Run enumeration ─────────────────────────────────────────────────────────

namespace {

// inf of observed values over stem + loop^omega.  The loop is replayed
// until the counter vector at the loop start repeats.
ExtNat simulate(const CounterAutomaton& a, const std::vector<std::size_t>& stem,
                const std::vector<std::size_t>& loop) {
  std::vector<std::uint64_t> cnt(a.num_counters(), 0);
  ExtNat best = ExtNat::infinity();
  auto step = [&](std::size_t e) {
    for (std::size_t c = 0; c < cnt.size(); ++c)
      for (char op : a.transition(e).actions[c].str()) {
        if (op == 'i') ++cnt[c];
        if (op == 'r') cnt[c] = 0;
        if (op == 'o' && ExtNat(cnt[c]) < best) best = ExtNat(cnt[c]);
      }
  };
  for (auto e : stem) step(e);
  // Counters not reset in the loop only grow, so later observations are
  // larger; three passes settle every other counter.
  for (int pass = 0; pass < 3; ++pass)
    for (auto e : loop) step(e);
  return best;
}

}  // namespace

std::optional<ExtNat> best_enumerated_run(const CounterAutomaton& a,
                                          const LassoWord& u, int max_len) {
  std::optional<ExtNat> best;
  std::vector<std::size_t> stem, loop;
  const std::size_t m = a.num_acc_sets();

  std::function<void(State, std::size_t, State, std::size_t)> grow_loop =
      [&](State q, std::size_t pos, State q0, std::size_t pos0) {
        if (!loop.empty() && q == q0 && pos == pos0) {
          AccSet cover(m);
          for (auto e : loop) cover |= a.transition(e).acc;
          if (cover.count() == m) {
            ExtNat v = simulate(a, stem, loop);
            if (!best || *best < v) best = v;
          }
          return;
        }
        if (static_cast<int>(loop.size()) >= max_len) return;
        for (std::size_t e : a.out(q)) {
          if (!a.transition(e).cube.admits(u.at(pos))) continue;
          loop.push_back(e);
          grow_loop(a.transition(e).dst, u.succ(pos), q0, pos0);
          loop.pop_back();
        }
      };
  std::function<void(State, std::size_t)> grow_stem = [&](State q,
                                                          std::size_t pos) {
    grow_loop(q, pos, q, pos);
    if (static_cast<int>(stem.size()) >= max_len) return;
    for (std::size_t e : a.out(q)) {
      if (!a.transition(e).cube.admits(u.at(pos))) continue;
      stem.push_back(e);
      grow_stem(a.transition(e).dst, u.succ(pos));
      stem.pop_back();
    }
  };
  grow_stem(a.initial(), 0);
  return best;
}

std::vector<std::string> edge_signatures(const CounterAutomaton& a,
                                         const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& t : a.transitions()) {
    std::string s = names.at(t.src) + " -" + t.cube.to_string() + "/";
    for (std::size_t c = 0; c < t.actions.size(); ++c) {
      if (c) s += ',';
      s += t.actions[c].empty() ? "eps" : t.actions[c].str();
    }
    s += " {";
    for (std::size_t j = 0; j < t.acc.size(); ++j)
      if (t.acc.test(j)) s += std::to_string(j);
    s += "}-> " + names.at(t.dst);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cltl::testing
