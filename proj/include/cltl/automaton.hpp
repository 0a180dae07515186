// Counter automata over the symbolic alphabet of cubes.
//
// Transitions carry one action word per counter and a bitset telling which
// acceptance sets they belong to (transition-based generalized Büchi).
// Counters start at 0 and never influence which transitions are enabled.

#ifndef CLTL_AUTOMATON_HPP
#define CLTL_AUTOMATON_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "cltl/proposition.hpp"
#include "cltl/value.hpp"

namespace cltl {

using State = std::uint32_t;
using AccSet = boost::dynamic_bitset<>;

// ── Cubes ───────────────────────────────────────────────────────────────────

struct CubeLiteral {
  PropId prop;
  bool positive;
  bool operator==(const CubeLiteral&) const = default;
};

/// Conjunction of literals.  The empty cube is `true`.
class Cube {
 public:
  Cube() = default;
  /// Throws std::invalid_argument when a proposition occurs with both signs.
  explicit Cube(std::vector<CubeLiteral> lits);
  static std::optional<Cube> try_make(std::vector<CubeLiteral> lits);

  const std::vector<CubeLiteral>& literals() const { return lits_; }
  bool is_true() const { return lits_.empty(); }

  std::optional<Cube> conjoin(const Cube& o) const;
  /// Every letter admitted by `o` is admitted by this cube.
  bool subsumes(const Cube& o) const;
  bool admits(const Letter& l) const;
  /// The smallest admitted letter: unspecified propositions are false.
  Letter complete() const;

  std::string to_string() const;  // `a&!b`, or `true`
  bool operator==(const Cube&) const = default;

 private:
  std::vector<CubeLiteral> lits_;  // sorted by prop, one per prop
};

// ── Counter actions ─────────────────────────────────────────────────────────

/// A word over {i, r, o}, applied left to right.  The translator only
/// produces the atomic words "", "i" and "or".
class ActionWord {
 public:
  ActionWord() = default;
  explicit ActionWord(std::string w);

  static ActionWord eps() { return ActionWord(); }
  static ActionWord inc() { return ActionWord("i"); }
  static ActionWord observe_reset() { return ActionWord("or"); }

  const std::string& str() const { return w_; }
  bool empty() const { return w_.empty(); }
  bool is_atomic() const { return w_.empty() || w_ == "i" || w_ == "or"; }
  ActionWord then(const ActionWord& o) const { return ActionWord(w_ + o.w_); }

  bool operator==(const ActionWord&) const = default;

 private:
  std::string w_;
};

// ── Automata ────────────────────────────────────────────────────────────────

enum class Semantics { Inf, Sup };

struct Transition {
  State src = 0;
  State dst = 0;
  Cube cube;
  std::vector<ActionWord> actions;  // one per counter
  AccSet acc;                       // width = number of acceptance sets
};

class CounterAutomaton {
 public:
  CounterAutomaton(std::size_t num_states, State initial,
                   std::size_t num_counters, std::size_t num_acc_sets,
                   Semantics semantics = Semantics::Sup);

  State add_state();
  /// Validates endpoints and widths; returns the transition index.
  std::size_t add_transition(Transition t);

  std::size_t num_states() const { return out_.size(); }
  State initial() const { return initial_; }
  std::size_t num_counters() const { return num_counters_; }
  std::size_t num_acc_sets() const { return num_acc_sets_; }
  Semantics semantics() const { return semantics_; }

  const std::vector<Transition>& transitions() const { return trans_; }
  const Transition& transition(std::size_t i) const { return trans_[i]; }
  /// Indices of outgoing transitions, in insertion order.
  const std::vector<std::size_t>& out(State s) const { return out_[s]; }

  /// Propositions the automaton is declared over (informative; cubes may
  /// mention only these when loaded from a model file).
  const std::vector<PropId>& aps() const { return aps_; }
  void set_aps(std::vector<PropId> aps);

 private:
  State initial_;
  std::size_t num_counters_;
  std::size_t num_acc_sets_;
  Semantics semantics_;
  std::vector<Transition> trans_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<PropId> aps_;
};

// ── Words and runs ──────────────────────────────────────────────────────────

/// prefix · cycle^ω, with a nonempty cycle.
struct LassoWord {
  std::vector<Letter> prefix;
  std::vector<Letter> cycle;

  std::size_t size() const { return prefix.size() + cycle.size(); }
  /// Letter at a position of the folded word (0 <= pos < size()).
  const Letter& at(std::size_t pos) const {
    return pos < prefix.size() ? prefix[pos] : cycle[pos - prefix.size()];
  }
  /// Successor position in the folded word.
  std::size_t succ(std::size_t pos) const {
    return pos + 1 < size() ? pos + 1 : prefix.size();
  }
  /// Letter at any position of the infinite word.
  const Letter& letter(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return cycle[(i - prefix.size()) % cycle.size()];
  }

  bool operator==(const LassoWord&) const = default;
};

/// A run stem · loop^ω, as transition indices of some automaton.
struct LassoRun {
  std::vector<std::size_t> stem;
  std::vector<std::size_t> loop;
};

/// Checks chaining from the initial state, loop closure and acceptance
/// coverage.  Returns an error message, or nullopt when valid.
std::optional<std::string> check_run(const CounterAutomaton& a,
                                     const LassoRun& run);

// ── Operations ──────────────────────────────────────────────────────────────

/// Reachable part of A × B.  Counters of B follow those of A, acceptance
/// sets of B follow those of A.  States are numbered in breadth-first
/// order from the initial pair; `origin`, when given, receives the pairs.
CounterAutomaton synchronized_product(
    const CounterAutomaton& a, const CounterAutomaton& b,
    std::vector<std::pair<State, State>>* origin = nullptr);

/// Value of a sup automaton on a lasso word, exact up to `cap`.
/// AboveCap means the value is at least `cap` (possibly infinite); NoRun
/// means no accepting run.  Throws std::invalid_argument on cap = 0 or an
/// inf automaton.
CappedValue value_on_lasso(const CounterAutomaton& a, const LassoWord& u,
                           std::uint64_t cap);

/// Whether some accepting run of `a` on `u` observes only values >= t.
/// With t = 0 this is plain acceptance.
bool achieves_threshold(const CounterAutomaton& a, const LassoWord& u,
                        std::uint64_t t);

/// inf C(ρ) of a single lasso run: simulate stem + two loop traversals.
ExtNat run_value(const CounterAutomaton& a, const LassoRun& run);

}  // namespace cltl

#endif  // CLTL_AUTOMATON_HPP
