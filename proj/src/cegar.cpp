#include "cltl/cegar.hpp"

#include <algorithm>
#include <limits>

#include "cltl/emptiness.hpp"
#include "cltl/error.hpp"
#include "cltl/translate.hpp"

namespace cltl {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Finite: return "finite";
    case Outcome::Unbounded: return "unbounded";
    case Outcome::InfiniteInf: return "infinite-inf";
  }
  return "?";
}

namespace {

void require_plain_model(const CounterAutomaton& l) {
  if (l.num_counters() != 0)
    throw Error("the model automaton must not have counters");
}

std::uint32_t as_unfolding(std::uint64_t n) {
  if (n > std::numeric_limits<std::uint32_t>::max())
    throw Error("unfolding depth out of range");
  return static_cast<std::uint32_t>(n);
}

std::optional<LassoWord> any_word(const CounterAutomaton& l) {
  if (auto w = find_accepting_lasso(l)) return w->word;
  return std::nullopt;
}

// Alg. ComputeBound on an LTL> (or LTL) formula.
BoundResult sup_direct(const CounterAutomaton& l, Formula phi,
                       const BoundOptions& opts) {
  const Formula phi0 = label_counters(phi);
  const CounterAutomaton a0 = translate(phi0);
  BoundResult r;
  r.cutoff = opts.cutoff ? *opts.cutoff : a0.num_states() * l.num_states();

  std::uint64_t n = 0;
  std::optional<LassoWord> last;
  for (;;) {
    const Formula refined =
        Formula::conj(phi0, instantiate(phi0, as_unfolding(n + 1)));
    const CounterAutomaton an = translate(refined);
    const CounterAutomaton p = synchronized_product(an, l);
    auto w = find_accepting_lasso(p);
    ++r.iterations;

    TraceEntry entry;
    entry.n = n;
    entry.nonempty = w.has_value();
    entry.automaton_states = an.num_states();
    entry.product_states = p.num_states();
    if (!w) {
      r.trace.push_back(entry);
      r.outcome = Outcome::Finite;
      r.bound = n;
      r.witness = last ? last : any_word(l);
      return r;
    }

    // The word satisfies phi0[n+1], so its value is at least n+1 even if
    // this particular run observes less.
    ExtNat v = run_value(p, w->run);
    ExtNat cand = v.is_infinite() ? v : std::max(v, ExtNat(n + 1));
    if (opts.maximize && cand.is_finite()) {
      CappedValue exact = value_on_lasso(a0, w->word, r.cutoff + 1);
      if (exact.kind == CappedValue::Kind::AboveCap)
        cand = ExtNat(r.cutoff + 1);
      else if (exact.kind == CappedValue::Kind::Exact)
        cand = std::max(cand, ExtNat(exact.value));
    }
    entry.candidate = cand;
    r.trace.push_back(entry);
    r.last_candidate = cand;
    if (cand.is_infinite() || cand.value() > r.cutoff) {
      r.outcome = Outcome::Unbounded;
      r.witness = w->word;
      return r;
    }
    n = cand.value();
    last = w->word;
  }
}

}  // namespace

BoundResult compute_sup_bound(const CounterAutomaton& l, Formula phi,
                              const BoundOptions& opts) {
  require_plain_model(l);
  Fragment frag = classify_fragment(phi);
  if (frag == Fragment::Mixed)
    throw FragmentError("formula mixes U<= and R>");
  if (frag == Fragment::CostGT) return sup_direct(l, phi, opts);

  // LTL<=: sup of the dual is max(0, sup - 1).
  BoundResult r = sup_direct(l, negate_dual(phi), opts);
  if (r.outcome != Outcome::Finite) return r;
  if (r.bound >= 1) {
    r.bound += 1;
    return r;
  }
  // Dual sup 0: the value is 0 or 1 everywhere; 1 iff some word of L
  // violates phi[0].
  ++r.extra_checks;
  const CounterAutomaton a = translate(negate_dual(instantiate(phi, 0)));
  if (auto w = find_accepting_lasso(synchronized_product(a, l))) {
    r.bound = 1;
    r.witness = w->word;
  }
  return r;
}

BoundResult compute_inf_bound(const CounterAutomaton& l, Formula phi,
                              const BoundOptions& opts) {
  require_plain_model(l);
  Fragment frag = classify_fragment(phi);
  if (frag == Fragment::Mixed || frag == Fragment::CostGT)
    throw FragmentError(std::string("inf bound expects an LTL<= formula, got ") +
                        to_string(frag));

  BoundResult r;
  if (opts.cutoff) {
    r.cutoff = *opts.cutoff;
  } else {
    const CounterAutomaton dual = translate(negate_dual(phi));
    r.cutoff = dual.num_states() * l.num_states() *
               (1 + dual.num_acc_sets() + l.num_acc_sets());
  }

  std::optional<LassoWord> best;
  auto check = [&](std::uint64_t n) {
    const CounterAutomaton a = translate(instantiate(phi, as_unfolding(n)));
    const CounterAutomaton p = synchronized_product(a, l);
    auto w = find_accepting_lasso(p);
    ++r.iterations;
    TraceEntry e;
    e.n = n;
    e.nonempty = w.has_value();
    e.automaton_states = a.num_states();
    e.product_states = p.num_states();
    r.trace.push_back(e);
    if (w) best = w->word;
    return w.has_value();
  };

  // Ascending scan.  Checking phi[n] costs roughly exponentially in n, so
  // probing past the answer (as a doubling search would) costs more than
  // all smaller probes together.
  for (std::uint64_t n = 0;; ++n) {
    if (check(n)) {
      r.outcome = Outcome::Finite;
      r.bound = n;
      r.witness = best;
      return r;
    }
    if (n >= r.cutoff) {
      r.outcome = Outcome::InfiniteInf;
      return r;
    }
  }
}

}  // namespace cltl
