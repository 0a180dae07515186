#include "cltl/translate.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cltl/emptiness.hpp"
#include "cltl/error.hpp"

namespace cltl {

namespace {

bool item_less(const TableauItem& a, const TableauItem& b) {
  int c = compare(a.formula, b.formula);
  return c != 0 ? c < 0 : a.dirty < b.dirty;
}

bool is_reduced_formula(Formula f) {
  return f.is_literal() || f.is_constant() || f.op() == Op::Next;
}

struct StateHash {
  std::size_t operator()(const TableauState& s) const {
    std::size_t h = s.size();
    for (const auto& it : s)
      h ^= (it.formula.hash() * 2 + it.dirty) + 0x9e3779b97f4a7c15ULL +
           (h << 6) + (h >> 2);
    return h;
  }
};

// R> labels whose occurrence may be alive in several instances at once.
void find_repeated(Formula f, bool repeated,
                   std::unordered_set<std::uint32_t>& out) {
  if (!f.has_cost_release()) return;
  switch (f.op()) {
    case Op::Next: find_repeated(f.child(), repeated, out); return;
    case Op::And:
    case Op::Or:
      find_repeated(f.lhs(), repeated, out);
      find_repeated(f.rhs(), repeated, out);
      return;
    case Op::Until:
      find_repeated(f.lhs(), true, out);
      find_repeated(f.rhs(), repeated, out);
      return;
    case Op::Release:
      find_repeated(f.lhs(), repeated, out);
      find_repeated(f.rhs(), true, out);
      return;
    case Op::CostRelease:
      if (repeated) out.insert(f.counter());
      find_repeated(f.lhs(), true, out);
      find_repeated(f.rhs(), true, out);
      return;
    default: return;
  }
}

Formula checked_label(Formula phi) {
  Fragment frag = classify_fragment(phi);
  if (frag != Fragment::LTL && frag != Fragment::CostGT)
    throw FragmentError(std::string("translation expects an LTL> formula, got ") +
                        to_string(frag));
  return label_counters(phi);
}

}  // namespace

Tableau::Tableau(Formula phi, TranslateOptions opts)
    : phi_(checked_label(phi)), opts_(opts) {
  num_counters_ = count_cost_operators(phi_);
  untils_ = until_subformulas(phi_);
  if (opts_.separate_instances) find_repeated(phi_, false, repeated_);
}

TableauState Tableau::initial() const {
  TableauState s;
  if (!insert(s, {phi_, false})) s = {{Formula::bottom(), false}};
  return s;
}

bool Tableau::is_reduced(const TableauState& y) {
  return std::all_of(y.begin(), y.end(), [](const TableauItem& it) {
    return is_reduced_formula(it.formula);
  });
}

bool Tableau::insert(TableauState& y, TableauItem item) const {
  Formula f = item.formula;
  if (f.op() == Op::True) return true;
  if (f.op() == Op::False) return false;
  if (f.is_literal()) {
    Formula neg = Formula::literal(f.prop(), !f.positive());
    for (const auto& it : y)
      if (it.formula == neg) return false;
  }
  for (const auto& it : y) {
    if (it.formula != f) continue;
    if (it.dirty == item.dirty) return true;
    return false;
  }
  y.insert(std::upper_bound(y.begin(), y.end(), item, item_less), item);
  return true;
}

std::vector<EpsilonEdge> Tableau::reduce(const TableauState& y) const {
  auto pick = std::find_if(y.rbegin(), y.rend(), [](const TableauItem& it) {
    return !is_reduced_formula(it.formula);
  });
  if (pick == y.rend())
    throw std::logic_error("reduce called on a reduced tableau state");
  const TableauItem item = *pick;
  const Formula f = item.formula;
  TableauState rest;
  rest.reserve(y.size());
  for (const auto& it : y)
    if (!(it == item)) rest.push_back(it);

  std::vector<EpsilonEdge> out;
  auto emit = [&](std::initializer_list<TableauItem> add, std::uint32_t counter,
                  Action action, std::optional<Formula> postponed) {
    EpsilonEdge e;
    e.target = rest;
    for (const auto& a : add)
      if (!insert(e.target, a)) return;
    e.counter = counter;
    e.action = action;
    e.postponed = postponed;
    out.push_back(std::move(e));
  };

  switch (f.op()) {
    case Op::And:
      emit({{f.lhs(), false}, {f.rhs(), false}}, 0, Action::Eps, {});
      break;
    case Op::Or:
      emit({{f.lhs(), false}}, 0, Action::Eps, {});
      emit({{f.rhs(), false}}, 0, Action::Eps, {});
      break;
    case Op::Until:
      emit({{f.rhs(), false}}, 0, Action::Eps, {});
      emit({{f.lhs(), false}, {Formula::next(f), false}}, 0, Action::Eps, f);
      break;
    case Op::Release:
      emit({{f.lhs(), false}, {f.rhs(), false}}, 0, Action::Eps, {});
      emit({{f.rhs(), false}, {Formula::next(f), false}}, 0, Action::Eps, {});
      break;
    case Op::CostRelease: {
      const std::uint32_t i = f.counter();
      const bool repeated = repeated_.count(i) > 0;
      emit({{f.lhs(), false}, {f.rhs(), false}}, i, Action::ObserveReset, {});
      emit({{f.lhs(), false}, {f.rhs(), false}, {Formula::next(f), repeated}}, i,
           Action::Inc, {});
      emit({{f.rhs(), false}, {Formula::next(f), item.dirty}}, i, Action::Eps,
           {});
      break;
    }
    default:
      throw FragmentError("unexpected operator in tableau obligation");
  }
  return out;
}

// ── Collapse ────────────────────────────────────────────────────────────────

namespace {

struct Outcome {
  TableauState reduced;
  std::vector<Action> actions;  // index = label - 1
  AccSet postponed;

  bool operator==(const Outcome&) const = default;
};

class Collapser {
 public:
  Collapser(const Tableau& t) : t_(t) {
    for (std::size_t j = 0; j < t.untils().size(); ++j)
      until_index_.emplace(t.untils()[j], j);
  }

  const std::vector<Outcome>& closure(const TableauState& y) {
    if (auto it = memo_.find(y); it != memo_.end()) return it->second;
    std::vector<Outcome> out;
    if (Tableau::is_reduced(y)) {
      out.push_back({y, std::vector<Action>(t_.num_counters(), Action::Eps),
                     AccSet(t_.untils().size())});
    } else {
      for (const EpsilonEdge& e : t_.reduce(y)) {
        // Copied: the outcomes are extended in place below.
        std::vector<Outcome> tail = closure(e.target);
        for (Outcome& o : tail) {
          if (e.counter != 0) {
            Action& slot = o.actions[e.counter - 1];
            if (slot != Action::Eps && e.action != Action::Eps)
              throw std::logic_error(
                  "collapsed path carries two actions on one counter");
            if (e.action != Action::Eps) slot = e.action;
          }
          if (e.postponed) o.postponed.set(until_index_.at(*e.postponed));
          if (std::find(out.begin(), out.end(), o) == out.end())
            out.push_back(std::move(o));
        }
      }
    }
    return memo_.emplace(y, std::move(out)).first->second;
  }

 private:
  const Tableau& t_;
  std::unordered_map<Formula, std::size_t> until_index_;
  std::unordered_map<TableauState, std::vector<Outcome>, StateHash> memo_;
};

ActionWord to_word(Action a) {
  switch (a) {
    case Action::Eps: return ActionWord::eps();
    case Action::Inc: return ActionWord::inc();
    case Action::ObserveReset: return ActionWord::observe_reset();
  }
  return ActionWord::eps();
}

CounterAutomaton trim(const CounterAutomaton& a) {
  std::vector<bool> live = live_states(a);
  std::vector<State> renum(a.num_states(), static_cast<State>(-1));
  std::vector<State> order{a.initial()};
  renum[a.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!live[order[i]]) continue;
    for (std::size_t e : a.out(order[i])) {
      State d = a.transition(e).dst;
      if (!live[d] || renum[d] != static_cast<State>(-1)) continue;
      renum[d] = static_cast<State>(order.size());
      order.push_back(d);
    }
  }
  CounterAutomaton out(order.size(), 0, a.num_counters(), a.num_acc_sets(),
                       a.semantics());
  out.set_aps(a.aps());
  for (State s : order) {
    if (!live[s]) continue;
    for (std::size_t e : a.out(s)) {
      Transition t = a.transition(e);
      if (!live[t.dst]) continue;
      t.src = renum[t.src];
      t.dst = renum[t.dst];
      out.add_transition(std::move(t));
    }
  }
  return out;
}

}  // namespace

CounterAutomaton build_counter_automaton(Formula phi,
                                         const TranslateOptions& opts) {
  Tableau tab(phi, opts);
  Collapser collapse(tab);
  const std::size_t m = tab.untils().size();

  CounterAutomaton a(1, 0, tab.num_counters(), m, Semantics::Sup);
  std::vector<PropId> aps;
  std::unordered_map<TableauState, State, StateHash> ids;
  std::vector<TableauState> states{tab.initial()};
  ids.emplace(states[0], 0);

  for (std::size_t s = 0; s < states.size(); ++s) {
    const TableauState current = states[s];
    const bool inconsistent =
        current.size() == 1 && current[0].formula.op() == Op::False;
    if (inconsistent) continue;
    const std::vector<Outcome> outcomes = collapse.closure(current);
    for (const Outcome& o : outcomes) {
      std::vector<CubeLiteral> lits;
      TableauState next;
      bool ok = true;
      for (const auto& it : o.reduced) {
        if (it.formula.is_literal()) {
          lits.push_back({it.formula.prop(), it.formula.positive()});
          aps.push_back(it.formula.prop());
        } else if (it.formula.op() == Op::Next) {
          ok = ok && tab.insert(next, {it.formula.child(), it.dirty});
        }
      }
      if (!ok) continue;
      auto [pos, fresh] = ids.emplace(next, static_cast<State>(states.size()));
      if (fresh) {
        states.push_back(next);
        a.add_state();
      }
      Transition t;
      t.src = static_cast<State>(s);
      t.dst = pos->second;
      t.cube = Cube(std::move(lits));
      for (Action act : o.actions) t.actions.push_back(to_word(act));
      t.acc = ~o.postponed;
      a.add_transition(std::move(t));
    }
  }
  a.set_aps(std::move(aps));
  return opts.trim ? trim(a) : a;
}

CounterAutomaton prune_dominated(const CounterAutomaton& a) {
  auto observes = [](const Transition& t) {
    return std::any_of(t.actions.begin(), t.actions.end(),
                       [](const ActionWord& w) {
                         return w.str().find('o') != std::string::npos;
                       });
  };
  // Per-counter: equal, or increment against nothing.
  auto actions_geq = [](const Transition& big, const Transition& small) {
    for (std::size_t c = 0; c < big.actions.size(); ++c) {
      if (big.actions[c] == small.actions[c]) continue;
      if (big.actions[c] == ActionWord::inc() && small.actions[c].empty())
        continue;
      return false;
    }
    return true;
  };

  const auto& ts = a.transitions();
  std::vector<bool> drop(ts.size(), false);
  for (State s = 0; s < a.num_states(); ++s) {
    const auto& out = a.out(s);
    for (std::size_t x : out) {
      const Transition& t = ts[x];
      if (observes(t)) continue;
      for (std::size_t y : out) {
        if (y == x) continue;
        const Transition& u = ts[y];
        if (u.dst != t.dst || !t.acc.is_subset_of(u.acc) || observes(u)) continue;
        if (!u.cube.subsumes(t.cube) || !actions_geq(u, t)) continue;
        bool equivalent =
            u.acc == t.acc && t.cube.subsumes(u.cube) && actions_geq(t, u);
        if (equivalent && y > x) continue;  // keep the first of equals
        drop[x] = true;
        break;
      }
    }
  }

  CounterAutomaton out(a.num_states(), a.initial(), a.num_counters(),
                       a.num_acc_sets(), a.semantics());
  out.set_aps(a.aps());
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (!drop[i]) out.add_transition(ts[i]);
  return out;
}

CounterAutomaton translate(Formula phi, const TranslateOptions& opts) {
  return prune_dominated(build_counter_automaton(phi, opts));
}

std::string to_dot(const CounterAutomaton& a) {
  std::ostringstream os;
  os << "digraph counter_automaton {\n  rankdir=LR;\n  node [shape=circle];\n"
     << "  init [shape=point];\n  init -> " << a.initial() << ";\n";
  for (State s = 0; s < a.num_states(); ++s) os << "  " << s << ";\n";
  for (const Transition& t : a.transitions()) {
    os << "  " << t.src << " -> " << t.dst << " [label=\"" << t.cube.to_string()
       << " /";
    for (const ActionWord& w : t.actions)
      os << ' ' << (w.empty() ? "eps" : w.str());
    os << " {";
    bool first = true;
    for (std::size_t j = 0; j < t.acc.size(); ++j) {
      if (!t.acc.test(j)) continue;
      os << (first ? "" : ",") << j;
      first = false;
    }
    os << "}\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cltl
