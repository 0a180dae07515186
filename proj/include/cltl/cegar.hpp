// Bound computation over a regular language L given as a counter-free
// automaton.
//
// compute_sup_bound refines phi0 to phi0 & phi0[n+1] until the product with
// L becomes empty; each witness lasso lifts n to a value it provably
// reaches.  A candidate above the cutoff B = |A_phi0| x |L| (or an
// observation-free witness run) proves the supremum unbounded.
//
// compute_inf_bound searches the least n for which phi[n] meets L.

#ifndef CLTL_CEGAR_HPP
#define CLTL_CEGAR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cltl/automaton.hpp"
#include "cltl/formula.hpp"
#include "cltl/value.hpp"

namespace cltl {

enum class Outcome { Finite, Unbounded, InfiniteInf };

const char* to_string(Outcome o);

struct TraceEntry {
  std::uint64_t n = 0;
  /// Sup mode: the value p taken from the witness (infinite when the run
  /// observes nothing); unset when the product was empty.  Inf mode: unset.
  std::optional<ExtNat> candidate;
  bool nonempty = false;
  std::size_t automaton_states = 0;
  std::size_t product_states = 0;
};

struct BoundResult {
  Outcome outcome = Outcome::Finite;
  std::uint64_t bound = 0;            // Finite only
  std::optional<LassoWord> witness;   // none when L is empty
  std::vector<TraceEntry> trace;
  std::uint64_t cutoff = 0;           // B (sup) or K (inf)
  std::optional<ExtNat> last_candidate;
  std::size_t iterations = 0;         // emptiness checks of the main loop
  std::size_t extra_checks = 0;       // dual 0-versus-1 check, sup mode
};

struct BoundOptions {
  std::optional<std::uint64_t> cutoff;
  /// Lift n to the witness word's exact value instead of the sampled run's.
  bool maximize = false;
};

/// Supremum of an LTL> formula over L, or of an LTL<= (or LTL) formula via
/// its dual.  Throws FragmentError on mixed formulas and Error if L has
/// counters.
BoundResult compute_sup_bound(const CounterAutomaton& l, Formula phi,
                              const BoundOptions& opts = {});

/// Infimum of an LTL<= (or LTL) formula over L.
BoundResult compute_inf_bound(const CounterAutomaton& l, Formula phi,
                              const BoundOptions& opts = {});

}  // namespace cltl

#endif  // CLTL_CEGAR_HPP
