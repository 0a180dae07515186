// Tableau translation of LTL> formulas to sup counter automata.
//
// A tableau state is a set of obligations.  Unreduced states are expanded by
// epsilon steps (one operator at a time, largest formula first); the
// epsilon paths are then collapsed into letter transitions whose counter
// actions are the concatenation of the actions met on the way.
//
// Each R> occurrence has one counter.  When an occurrence can be
// instantiated several times along a run (for instance below a G), two live
// instances would share that counter.  Obligations of such occurrences carry
// a `dirty` flag, set once the instance has incremented its counter, and a
// state may not hold the same obligation both clean and dirty.  A fresh
// instance therefore never inherits the count of an older one; the older
// instance either has not counted yet (and merges with the fresh one) or
// discharges itself with an observation first.

#ifndef CLTL_TRANSLATE_HPP
#define CLTL_TRANSLATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "cltl/automaton.hpp"
#include "cltl/formula.hpp"

namespace cltl {

struct TableauItem {
  Formula formula;
  bool dirty = false;

  bool operator==(const TableauItem&) const = default;
};

/// Sorted, duplicate-free set of obligations.
using TableauState = std::vector<TableauItem>;

enum class Action : std::uint8_t { Eps, Inc, ObserveReset };

struct EpsilonEdge {
  TableauState target;
  std::uint32_t counter = 0;  // label of the R> occurrence, 0 for none
  Action action = Action::Eps;
  std::optional<Formula> postponed;  // the Until marked !psi, if any
};

struct TranslateOptions {
  /// Keep clean and dirty instances of a repeated R> occurrence apart (see
  /// the header comment).  Disabling it merges them as plain formula sets
  /// do, which can overestimate values; kept for comparison.
  bool separate_instances = true;
  /// Remove states that are unreachable or cannot reach an accepting cycle.
  bool trim = true;
};

class Tableau {
 public:
  /// `phi` must be LTL or LTL>; it is labeled if needed.
  explicit Tableau(Formula phi, TranslateOptions opts = {});

  Formula formula() const { return phi_; }
  std::uint32_t num_counters() const { return num_counters_; }
  /// Distinct Until subformulas; acceptance set j belongs to untils()[j].
  const std::vector<Formula>& untils() const { return untils_; }

  TableauState initial() const;
  static bool is_reduced(const TableauState& y);

  /// One reduction step on the largest unreduced obligation.  Inconsistent
  /// targets are dropped.  Throws std::logic_error on a reduced state.
  std::vector<EpsilonEdge> reduce(const TableauState& y) const;

  /// Adds `item` to `y`; returns false when the result is inconsistent.
  bool insert(TableauState& y, TableauItem item) const;

 private:
  Formula phi_;
  TranslateOptions opts_;
  std::uint32_t num_counters_ = 0;
  std::vector<Formula> untils_;
  std::unordered_set<std::uint32_t> repeated_;  // R> labels with many instances
};

/// Collapsed tableau automaton, trimmed but not pruned.
CounterAutomaton build_counter_automaton(Formula phi,
                                         const TranslateOptions& opts = {});

/// Drops transitions dominated by a sibling with the same endpoints, at
/// least the same acceptance sets, a weaker-or-equal cube and, per counter,
/// the same action or an increment where the dominated one has none.
/// Transitions carrying an observation neither dominate nor get dropped.
CounterAutomaton prune_dominated(const CounterAutomaton& a);

/// build_counter_automaton followed by prune_dominated.
CounterAutomaton translate(Formula phi, const TranslateOptions& opts = {});

/// Graphviz rendering; edges are labelled `cube / actions {acc}`.
std::string to_dot(const CounterAutomaton& a);

}  // namespace cltl

#endif  // CLTL_TRANSLATE_HPP
