// Reference semantics on lasso words.
//
// LTL satisfaction is computed with fixpoints over the folded positions of
// the lasso (least for U, greatest for R).  Cost values go through the
// unfoldings: value_inf is the least n with u |- phi[n], value_sup the
// largest n with u |- phi[n].

#ifndef CLTL_ORACLE_HPP
#define CLTL_ORACLE_HPP

#include <cstdint>

#include "cltl/automaton.hpp"
#include "cltl/formula.hpp"
#include "cltl/value.hpp"

namespace cltl {

/// Throws FragmentError if `phi` has cost operators.
bool eval_ltl_on_lasso(Formula phi, const LassoWord& u);

/// Exact value of an LTL<= formula if at most `cap`, else AboveCap.
CappedValue value_inf(Formula phi, const LassoWord& u, std::uint64_t cap);

/// Exact value of an LTL> formula if below `cap`, else AboveCap (the value
/// is at least `cap`).  Never returns NoRun: an empty sup is 0.
CappedValue value_sup(Formula phi, const LassoWord& u, std::uint64_t cap);

/// Whichever of value_inf / value_sup matches the fragment of `phi`; plain
/// LTL formulas are read as LTL<= (0 when satisfied, infinite otherwise).
CappedValue oracle_value(Formula phi, const LassoWord& u, std::uint64_t cap);

}  // namespace cltl

#endif  // CLTL_ORACLE_HPP
