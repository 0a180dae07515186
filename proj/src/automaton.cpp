#include "cltl/automaton.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "cltl/emptiness.hpp"

namespace cltl {

// ── Cube ────────────────────────────────────────────────────────────────────

namespace {

bool normalize(std::vector<CubeLiteral>& lits) {
  std::sort(lits.begin(), lits.end(), [](const auto& x, const auto& y) {
    return x.prop != y.prop ? x.prop < y.prop : x.positive < y.positive;
  });
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i)
    if (lits[i].prop == lits[i - 1].prop) return false;
  return true;
}

}  // namespace

Cube::Cube(std::vector<CubeLiteral> lits) : lits_(std::move(lits)) {
  if (!normalize(lits_))
    throw std::invalid_argument("inconsistent cube: a proposition occurs "
                                "with both polarities");
}

std::optional<Cube> Cube::try_make(std::vector<CubeLiteral> lits) {
  if (!normalize(lits)) return std::nullopt;
  Cube c;
  c.lits_ = std::move(lits);
  return c;
}

std::optional<Cube> Cube::conjoin(const Cube& o) const {
  std::vector<CubeLiteral> merged;
  merged.reserve(lits_.size() + o.lits_.size());
  auto i = lits_.begin();
  auto j = o.lits_.begin();
  while (i != lits_.end() || j != o.lits_.end()) {
    if (j == o.lits_.end() || (i != lits_.end() && i->prop < j->prop)) {
      merged.push_back(*i++);
    } else if (i == lits_.end() || j->prop < i->prop) {
      merged.push_back(*j++);
    } else {
      if (i->positive != j->positive) return std::nullopt;
      merged.push_back(*i++);
      ++j;
    }
  }
  Cube c;
  c.lits_ = std::move(merged);
  return c;
}

bool Cube::subsumes(const Cube& o) const {
  // Every literal of this cube must appear in o.
  return std::includes(o.lits_.begin(), o.lits_.end(), lits_.begin(),
                       lits_.end(), [](const auto& x, const auto& y) {
                         return x.prop != y.prop ? x.prop < y.prop
                                                 : x.positive < y.positive;
                       });
}

bool Cube::admits(const Letter& l) const {
  return std::all_of(lits_.begin(), lits_.end(), [&](const CubeLiteral& c) {
    return l.holds(c.prop) == c.positive;
  });
}

Letter Cube::complete() const {
  std::vector<PropId> props;
  for (const auto& c : lits_)
    if (c.positive) props.push_back(c.prop);
  return Letter(std::move(props));
}

std::string Cube::to_string() const {
  if (lits_.empty()) return "true";
  std::string s;
  for (const auto& c : lits_) {
    if (!s.empty()) s += '&';
    if (!c.positive) s += '!';
    s += prop_name(c.prop);
  }
  return s;
}

// ── ActionWord ──────────────────────────────────────────────────────────────

ActionWord::ActionWord(std::string w) : w_(std::move(w)) {
  for (char c : w_)
    if (c != 'i' && c != 'r' && c != 'o')
      throw std::invalid_argument("counter action must be one of i, r, o");
}

// ── CounterAutomaton ────────────────────────────────────────────────────────

CounterAutomaton::CounterAutomaton(std::size_t num_states, State initial,
                                   std::size_t num_counters,
                                   std::size_t num_acc_sets,
                                   Semantics semantics)
    : initial_(initial),
      num_counters_(num_counters),
      num_acc_sets_(num_acc_sets),
      semantics_(semantics),
      out_(num_states) {
  if (initial >= num_states)
    throw std::invalid_argument("initial state out of range");
}

State CounterAutomaton::add_state() {
  out_.emplace_back();
  return static_cast<State>(out_.size() - 1);
}

std::size_t CounterAutomaton::add_transition(Transition t) {
  if (t.src >= out_.size() || t.dst >= out_.size())
    throw std::invalid_argument("transition endpoint out of range");
  if (t.actions.empty() && num_counters_ > 0)
    t.actions.assign(num_counters_, ActionWord::eps());
  if (t.actions.size() != num_counters_)
    throw std::invalid_argument("transition has wrong number of actions");
  if (t.acc.size() == 0 && num_acc_sets_ > 0) t.acc.resize(num_acc_sets_);
  if (t.acc.size() != num_acc_sets_)
    throw std::invalid_argument("transition has wrong acceptance width");
  out_[t.src].push_back(trans_.size());
  trans_.push_back(std::move(t));
  return trans_.size() - 1;
}

void CounterAutomaton::set_aps(std::vector<PropId> aps) {
  std::sort(aps.begin(), aps.end());
  aps.erase(std::unique(aps.begin(), aps.end()), aps.end());
  aps_ = std::move(aps);
}

std::optional<std::string> check_run(const CounterAutomaton& a,
                                     const LassoRun& run) {
  const auto n = a.transitions().size();
  if (run.loop.empty()) return "empty loop";
  State at = a.initial();
  auto walk = [&](const std::vector<std::size_t>& part,
                  const char* what) -> std::optional<std::string> {
    for (std::size_t e : part) {
      if (e >= n) return std::string(what) + ": transition index out of range";
      if (a.transition(e).src != at)
        return std::string(what) + ": transitions are not chained";
      at = a.transition(e).dst;
    }
    return std::nullopt;
  };
  if (auto err = walk(run.stem, "stem")) return err;
  State loop_start = at;
  if (auto err = walk(run.loop, "loop")) return err;
  if (at != loop_start) return "loop does not close";
  AccSet cover(a.num_acc_sets());
  for (std::size_t e : run.loop) cover |= a.transition(e).acc;
  if (!cover.all()) return "loop misses an acceptance set";
  return std::nullopt;
}

// ── Product ─────────────────────────────────────────────────────────────────

CounterAutomaton synchronized_product(
    const CounterAutomaton& a, const CounterAutomaton& b,
    std::vector<std::pair<State, State>>* origin) {
  const std::size_t ka = a.num_counters(), kb = b.num_counters();
  const std::size_t ma = a.num_acc_sets(), mb = b.num_acc_sets();
  CounterAutomaton p(1, 0, ka + kb, ma + mb, a.semantics());
  std::vector<PropId> aps = a.aps();
  aps.insert(aps.end(), b.aps().begin(), b.aps().end());
  p.set_aps(std::move(aps));

  std::vector<std::pair<State, State>> pairs{{a.initial(), b.initial()}};
  std::unordered_map<std::uint64_t, State> ids;
  auto key = [](State x, State y) {
    return (static_cast<std::uint64_t>(x) << 32) | y;
  };
  ids.emplace(key(a.initial(), b.initial()), 0);

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [qa, qb] = pairs[i];
    for (std::size_t ta : a.out(qa)) {
      const Transition& x = a.transition(ta);
      for (std::size_t tb : b.out(qb)) {
        const Transition& y = b.transition(tb);
        auto cube = x.cube.conjoin(y.cube);
        if (!cube) continue;
        auto [it, fresh] = ids.emplace(key(x.dst, y.dst), 0);
        if (fresh) {
          it->second = p.add_state();
          pairs.emplace_back(x.dst, y.dst);
        }
        Transition t;
        t.src = static_cast<State>(i);
        t.dst = it->second;
        t.cube = std::move(*cube);
        t.actions = x.actions;
        t.actions.insert(t.actions.end(), y.actions.begin(), y.actions.end());
        t.acc.resize(ma + mb);
        for (std::size_t j = 0; j < ma; ++j) t.acc[j] = x.acc[j];
        for (std::size_t j = 0; j < mb; ++j) t.acc[ma + j] = y.acc[j];
        p.add_transition(std::move(t));
      }
    }
  }
  if (origin) *origin = std::move(pairs);
  return p;
}

// ── Valuation ───────────────────────────────────────────────────────────────

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Applies `w` to a counter whose value is tracked up to `t`.  Returns false
// when an observation below t occurs.
bool apply_capped(const ActionWord& w, std::uint32_t& v, std::uint32_t t) {
  for (char c : w.str()) {
    switch (c) {
      case 'i': v = std::min(v + 1, t); break;
      case 'r': v = 0; break;
      case 'o':
        if (v < t) return false;
        break;
    }
  }
  return true;
}

}  // namespace

bool achieves_threshold(const CounterAutomaton& a, const LassoWord& u,
                        std::uint64_t t64) {
  if (u.cycle.empty()) throw std::invalid_argument("lasso with empty cycle");
  if (t64 > 0xffffffffULL) throw std::invalid_argument("threshold too large");
  const auto t = static_cast<std::uint32_t>(t64);
  const std::size_t k = a.num_counters();

  // Node key: state, position, capped counter values.
  AccGraph g;
  g.num_sets = a.num_acc_sets();
  for (const auto& tr : a.transitions()) g.label_acc.push_back(tr.acc);
  std::unordered_map<std::vector<std::uint32_t>, std::size_t, KeyHash> ids;
  std::vector<std::vector<std::uint32_t>> nodes;

  std::vector<std::uint32_t> init(2 + k, 0);
  init[0] = a.initial();
  ids.emplace(init, 0);
  nodes.push_back(init);
  g.initial = 0;

  std::vector<std::uint32_t> next(2 + k);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const State q = nodes[i][0];
    const std::size_t pos = nodes[i][1];
    const Letter& letter = u.at(pos);
    for (std::size_t e : a.out(q)) {
      const Transition& tr = a.transition(e);
      if (!tr.cube.admits(letter)) continue;
      next[0] = tr.dst;
      next[1] = static_cast<std::uint32_t>(u.succ(pos));
      bool ok = true;
      for (std::size_t c = 0; c < k && ok; ++c) {
        next[2 + c] = nodes[i][2 + c];
        ok = apply_capped(tr.actions[c], next[2 + c], t);
      }
      if (!ok) continue;
      auto [it, fresh] = ids.emplace(next, nodes.size());
      if (fresh) nodes.push_back(next);
      g.add_edge(i, it->second, e);
    }
  }
  g.num_nodes = nodes.size();
  return find_accepting_cycle(g).has_value();
}

CappedValue value_on_lasso(const CounterAutomaton& a, const LassoWord& u,
                           std::uint64_t cap) {
  if (cap == 0) throw std::invalid_argument("value_on_lasso: cap must be > 0");
  if (a.semantics() != Semantics::Sup)
    throw std::invalid_argument("value_on_lasso: sup automaton expected");
  if (!achieves_threshold(a, u, 0)) return CappedValue::no_run();
  if (achieves_threshold(a, u, cap)) return CappedValue::above_cap();
  std::uint64_t lo = 0, hi = cap;  // lo achievable, hi not
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    (achieves_threshold(a, u, mid) ? lo : hi) = mid;
  }
  return CappedValue::exact(lo);
}

ExtNat run_value(const CounterAutomaton& a, const LassoRun& run) {
  if (auto err = check_run(a, run))
    throw std::invalid_argument("run_value: invalid run: " + *err);
  std::vector<std::uint64_t> counters(a.num_counters(), 0);
  ExtNat best = ExtNat::infinity();
  auto step = [&](std::size_t e) {
    const Transition& t = a.transition(e);
    for (std::size_t c = 0; c < counters.size(); ++c) {
      for (char op : t.actions[c].str()) {
        if (op == 'i') ++counters[c];
        else if (op == 'r') counters[c] = 0;
        else best = std::min(best, ExtNat(counters[c]));
      }
    }
  };
  for (std::size_t e : run.stem) step(e);
  for (int rep = 0; rep < 2; ++rep)
    for (std::size_t e : run.loop) step(e);
  return best;
}

}  // namespace cltl
