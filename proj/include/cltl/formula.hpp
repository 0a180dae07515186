// Cost LTL formulas: LTL<=, LTL> and their common LTL core.
//
// Formulas are immutable, hash-consed DAG nodes: two structurally identical
// formulas share one node, so equality is a pointer comparison and a
// Formula handle is as cheap to copy as a pointer.  Nodes are never freed.
//
// Negation only appears on literals.  A `!` in the concrete syntax is pushed
// to the leaves by negate_dual() at parse time.
//
// Cost operators carry a counter label.  Label 0 means "not labeled yet";
// label_counters() assigns 1..k in left-to-right depth-first order.

#ifndef CLTL_FORMULA_HPP
#define CLTL_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cltl/proposition.hpp"

namespace cltl {

enum class Op : std::uint8_t {
  True,
  False,
  Literal,
  And,
  Or,
  Next,
  Until,
  Release,
  CostUntil,    // U<=, infimum semantics
  CostRelease,  // R>,  supremum semantics
};

enum class Fragment : std::uint8_t {
  LTL,     // no cost operator
  CostLE,  // U<= only
  CostGT,  // R> only
  Mixed,   // both; never accepted by bound computation
};

const char* to_string(Fragment f);

namespace detail {
struct Node;
}

class Formula {
 public:
  // ── Construction ────────────────────────────────────────────────────────
  static Formula top();
  static Formula bottom();
  static Formula literal(PropId prop, bool positive = true);
  static Formula literal(std::string_view name, bool positive = true);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula next(Formula child);
  static Formula until(Formula lhs, Formula rhs);
  static Formula release(Formula lhs, Formula rhs);
  static Formula cost_until(Formula lhs, Formula rhs, std::uint32_t counter = 0);
  static Formula cost_release(Formula lhs, Formula rhs,
                              std::uint32_t counter = 0);

  // Sugar.
  static Formula eventually(Formula f) { return until(top(), f); }
  static Formula always(Formula f) { return release(bottom(), f); }
  static Formula cost_eventually(Formula f) { return cost_until(bottom(), f); }
  static Formula cost_always(Formula f) { return cost_release(top(), f); }

  // ── Inspection ──────────────────────────────────────────────────────────
  Op op() const;
  PropId prop() const;    // Literal only
  bool positive() const;  // Literal only
  std::uint32_t counter() const;
  Formula lhs() const;    // binary operators
  Formula rhs() const;    // binary operators
  Formula child() const;  // Next

  bool is_literal() const { return op() == Op::Literal; }
  bool is_constant() const { return op() == Op::True || op() == Op::False; }
  bool is_binary() const;
  bool is_cost() const { return op() == Op::CostUntil || op() == Op::CostRelease; }

  /// Length of the longest root-to-leaf path.  A strict superformula is
  /// always higher than its subformulas.
  std::uint32_t height() const;
  bool has_cost_until() const;
  bool has_cost_release() const;
  /// True iff some U<= or R> node carries label 0.
  bool has_unlabeled_cost() const;

  std::size_t hash() const;
  const detail::Node* node() const { return node_; }

  bool operator==(const Formula& o) const { return node_ == o.node_; }
  bool operator!=(const Formula& o) const { return node_ != o.node_; }

 private:
  explicit Formula(const detail::Node* n) : node_(n) {}
  static Formula make(Op op, PropId prop, bool positive, std::uint32_t counter,
                      const detail::Node* lhs, const detail::Node* rhs);

  const detail::Node* node_;
};

/// Deterministic total order on formulas: by height, then structure.  It
/// does not depend on construction history, so anything sorted with it is
/// reproducible across runs.
int compare(Formula a, Formula b);

struct FormulaLess {
  bool operator()(Formula a, Formula b) const { return compare(a, b) < 0; }
};

struct FormulaHash {
  std::size_t operator()(Formula f) const { return f.hash(); }
};

// ── Operations ──────────────────────────────────────────────────────────────

Formula parse(std::string_view text);
std::string print(Formula f);

/// Pushes a negation to the leaves, swapping every operator with its dual.
/// Counter labels are kept.
Formula negate_dual(Formula f);

Fragment classify_fragment(Formula f);

/// The LTL formula f[n].  For LTL<= input, u |- f[n] iff [[f]](u) <= n; for
/// LTL> input, u |- f[n] iff (u, n) satisfies f.  Throws FragmentError on
/// Mixed input.
Formula instantiate(Formula f, std::uint32_t n);

/// Labels cost-operator occurrences 1..k, left to right, depth first.
/// Occurrences that happen to be structurally equal become distinct nodes.
Formula label_counters(Formula f);

std::uint32_t count_cost_operators(Formula f);

/// Distinct Until subformulas, in depth-first preorder of first visit.
std::vector<Formula> until_subformulas(Formula f);

/// Number of nodes in the DAG reachable from f.
std::size_t dag_size(Formula f);

}  // namespace cltl

template <>
struct std::hash<cltl::Formula> {
  std::size_t operator()(cltl::Formula f) const { return f.hash(); }
};

#endif  // CLTL_FORMULA_HPP
