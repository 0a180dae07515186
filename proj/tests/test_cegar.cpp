#include "printers.hpp"

#include <string>

#include "cltl/cegar.hpp"
#include "cltl/emptiness.hpp"
#include "cltl/error.hpp"
#include "cltl/model_io.hpp"
#include "cltl/oracle.hpp"
#include "cltl/translate.hpp"
#include "generators.hpp"
#include "reference.hpp"

using namespace cltl;
using namespace cltl::testing;

namespace {

CounterAutomaton fixture(const std::string& name) {
  return load_model(std::string(CLTL_FIXTURES) + "/models/" + name + ".model");
}

const Formula& blocks() {
  static const Formula f = parse("G (F<= !a)");
  return f;
}

// Random lassos of `l`, read off accepting lassos of l x (random word
// automaton) would be costly; sampling words and filtering is enough here.
std::vector<LassoWord> sample_words(Rng& rng, const CounterAutomaton& l,
                                    const std::vector<std::string>& aps,
                                    int count) {
  std::vector<LassoWord> out;
  for (int tries = 0; tries < 40 * count && static_cast<int>(out.size()) < count;
       ++tries) {
    LassoWord u = random_lasso(rng, aps, 4, 4);
    if (accepts(l, u)) out.push_back(std::move(u));
  }
  return out;
}

// Automaton whose language is the single word u.
CounterAutomaton lasso_automaton(const LassoWord& u,
                                 const std::vector<std::string>& aps) {
  CounterAutomaton a(u.size(), 0, 0, 1);
  for (std::size_t pos = 0; pos < u.size(); ++pos) {
    std::vector<CubeLiteral> lits;
    for (const auto& name : aps) {
      PropId p = intern_prop(name);
      lits.push_back({p, u.at(pos).holds(p)});
    }
    AccSet acc(1);
    acc[0] = pos + 1 == u.size();
    a.add_transition({static_cast<State>(pos), static_cast<State>(u.succ(pos)),
                      Cube(std::move(lits)), {}, acc});
  }
  return a;
}

}  // namespace

TEST_SUITE("cegar") {

TEST_CASE("longest block of a's over L_k") {
  for (int k = 0; k <= 5; ++k) {
    CAPTURE(k);
    BoundResult r = compute_sup_bound(fixture("L" + std::to_string(k)), blocks());
    CHECK(r.outcome == Outcome::Finite);
    CHECK(r.bound == static_cast<std::uint64_t>(k));
    CHECK(r.iterations <= static_cast<std::size_t>(k + 1));
    REQUIRE(r.witness.has_value());
    CHECK(value_inf(blocks(), *r.witness, 20) == CappedValue::exact(k));
  }
}

TEST_CASE("the LTL> side directly") {
  Formula dual = negate_dual(blocks());
  BoundResult r = compute_sup_bound(fixture("L3"), dual);
  CHECK(r.outcome == Outcome::Finite);
  CHECK(r.bound == 2);
  CHECK(r.extra_checks == 0);
  REQUIRE(r.witness.has_value());
  CHECK(value_sup(dual, *r.witness, 20) == CappedValue::exact(2));
}

TEST_CASE("a single lasso") {
  CounterAutomaton l = parse_model(
      "ap: a b\nstates: 3\ninit: 0\naccsets: 1\n"
      "trans: 0 1 a&!b {}\ntrans: 1 2 a&!b {}\ntrans: 2 0 !a&b {0}\n");
  BoundResult r = compute_sup_bound(l, blocks());
  CHECK(r.outcome == Outcome::Finite);
  CHECK(r.bound == 2);
}

TEST_CASE("unbounded over all words") {
  CounterAutomaton l = fixture("universal");
  BoundResult r = compute_sup_bound(l, blocks());
  CHECK(r.outcome == Outcome::Unbounded);
  REQUIRE(r.last_candidate.has_value());
  CHECK(*r.last_candidate > ExtNat(r.cutoff));
  CHECK(r.cutoff == translate(negate_dual(blocks())).num_states() * l.num_states());
}

TEST_CASE("trace is strictly increasing and candidates exceed n") {
  BoundResult r = compute_sup_bound(fixture("L6"), blocks(), {});
  REQUIRE(!r.trace.empty());
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const TraceEntry& e = r.trace[i];
    if (i > 0) CHECK(e.n > r.trace[i - 1].n);
    CHECK(e.nonempty == e.candidate.has_value());
    if (e.candidate) CHECK(*e.candidate > ExtNat(e.n));
    CHECK(e.automaton_states > 0);
  }
  CHECK_FALSE(r.trace.back().nonempty);
  CHECK(r.iterations == r.trace.size());
}

TEST_CASE("every update is backed by its witness") {
  // Replays the loop on the LTL> side and checks each candidate against the
  // oracle value of the witness word that produced it.
  Formula phi0 = label_counters(negate_dual(blocks()));
  CounterAutomaton l = fixture("L5");
  BoundResult r = compute_sup_bound(l, phi0);
  for (const TraceEntry& e : r.trace) {
    if (!e.nonempty) continue;
    Formula refined = Formula::conj(phi0, instantiate(phi0, static_cast<std::uint32_t>(e.n + 1)));
    CounterAutomaton p = synchronized_product(translate(refined), l);
    auto w = find_accepting_lasso(p);
    REQUIRE(w.has_value());
    ExtNat p_val = std::max(run_value(p, w->run), ExtNat(e.n + 1));
    CHECK(p_val == *e.candidate);
    CappedValue truth = value_sup(phi0, w->word, 50);
    CAPTURE(format_lasso(w->word));
    if (truth.kind == CappedValue::Kind::Exact) {
      CHECK(p_val.is_finite());
      CHECK(p_val <= ExtNat(truth.value));
    }
  }
}

TEST_CASE("refinement keeps values above n and zeroes the rest") {
  Rng rng(61);
  Formula phi0 = label_counters(negate_dual(blocks()));
  for (std::uint32_t n = 0; n <= 4; ++n) {
    Formula refined = Formula::conj(phi0, instantiate(phi0, n + 1));
    for (int i = 0; i < 60; ++i) {
      LassoWord u = random_lasso(rng, {"a", "b"}, 5, 5);
      CappedValue base = value_sup(phi0, u, 12);
      CappedValue expect =
          base.kind == CappedValue::Kind::Exact && base.value <= n ? CappedValue::exact(0)
                                                                  : base;
      CHECK(value_sup(refined, u, 12) == expect);
    }
  }
}

TEST_CASE("infimum") {
  BoundResult r = compute_inf_bound(fixture("leading_aaa"), parse("F<= !a"));
  CHECK(r.outcome == Outcome::Finite);
  CHECK(r.bound == 3);
  REQUIRE(r.witness.has_value());
  CHECK(value_inf(parse("F<= !a"), *r.witness, 10) == CappedValue::exact(3));

  BoundResult none = compute_inf_bound(fixture("a_only"), parse("F<= !a"));
  CHECK(none.outcome == Outcome::InfiniteInf);
  CHECK(value_inf(parse("F<= !a"), parse_lasso("| {a}"), 20) == CappedValue::above_cap());

  BoundResult zero = compute_inf_bound(fixture("L4"), blocks());
  CHECK(zero.outcome == Outcome::Finite);
  CHECK(zero.bound == 0);
}

TEST_CASE("input checks") {
  CHECK_THROWS_AS(compute_sup_bound(fixture("L1"), parse("(F<= a) & G> b")), FragmentError);
  CHECK_THROWS_AS(compute_inf_bound(fixture("L1"), parse("G> a")), FragmentError);
  CounterAutomaton counted(1, 0, 1, 0);
  counted.add_transition({0, 0, Cube(), {ActionWord::inc()}, {}});
  CHECK_THROWS_AS(compute_sup_bound(counted, blocks()), Error);
}

TEST_CASE("an empty language has no witness") {
  CounterAutomaton l(1, 0, 0, 1);
  l.add_transition({0, 0, Cube(), {}, AccSet(1)});
  BoundResult r = compute_sup_bound(l, blocks());
  CHECK(r.outcome == Outcome::Finite);
  CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("random queries against sampled words") {
  Rng rng(62);
  AutomatonShape lshape;
  lshape.max_states = 4;
  lshape.max_acc_sets = 1;
  lshape.max_out = 3;
  for (int i = 0; i < 60; ++i) {
    CounterAutomaton l = random_automaton(rng, lshape);
    FormulaShape fshape;
    fshape.max_depth = 3;
    fshape.cost = i % 2 ? CostKind::GT : CostKind::LE;
    Formula f = random_cost_formula(rng, fshape);
    // Unfoldings of nested cost operators grow too fast for a unit test.
    while (count_cost_operators(f) > 1) f = random_cost_formula(rng, fshape);
    auto words = sample_words(rng, l, lshape.aps, 8);
    INFO(print(f));

    // Lifting candidates to the witness value skips the slow climb towards
    // the cutoff on unbounded queries.
    BoundOptions lifted;
    lifted.maximize = true;
    lifted.cutoff = 6;
    BoundResult sup = compute_sup_bound(l, f, lifted);
    if (sup.outcome == Outcome::Finite) {
      for (const auto& u : words) {
        CappedValue v = oracle_value(f, u, sup.bound + 2);
        CHECK(no_run_as_zero(v).kind == CappedValue::Kind::Exact);
        if (v.kind == CappedValue::Kind::Exact) CHECK(v.value <= sup.bound);
      }
      if (sup.witness)
        CHECK(oracle_value(f, *sup.witness, sup.bound + 2) == CappedValue::exact(sup.bound));
    }

    if (fshape.cost == CostKind::LE) {
      // A small cutoff keeps the unfoldings small; InfiniteInf then means
      // no word of L has a value up to 3.
      BoundOptions small;
      small.cutoff = 3;
      BoundResult inf = compute_inf_bound(l, f, small);
      if (inf.outcome == Outcome::Finite) {
        REQUIRE(inf.witness.has_value());
        CHECK(value_inf(f, *inf.witness, inf.bound + 1) == CappedValue::exact(inf.bound));
        for (const auto& u : words) {
          CappedValue v = value_inf(f, u, inf.bound + 1);
          if (v.kind == CappedValue::Kind::Exact) CHECK(v.value >= inf.bound);
        }
      } else {
        CHECK(inf.outcome == Outcome::InfiniteInf);
        for (const auto& u : words)
          CHECK(value_inf(f, u, inf.cutoff) == CappedValue::above_cap());
      }
    }
  }
}

TEST_CASE("single-word languages give the value of the word") {
  Rng rng(63);
  const std::vector<std::string> aps = {"a", "b"};
  for (int i = 0; i < 120; ++i) {
    FormulaShape fshape;
    fshape.max_depth = 3;
    fshape.cost = i % 2 ? CostKind::GT : CostKind::LE;
    Formula f = random_cost_formula(rng, fshape);
    while (count_cost_operators(f) > 1) f = random_cost_formula(rng, fshape);
    LassoWord u = random_lasso(rng, aps, 3, 3);
    CounterAutomaton l = lasso_automaton(u, aps);
    CappedValue v = no_run_as_zero(oracle_value(f, u, 7));
    INFO(print(f), " on ", format_lasso(u), " value ", v.to_string());

    BoundOptions lifted;
    lifted.maximize = true;
    lifted.cutoff = 6;
    BoundResult sup = compute_sup_bound(l, f, lifted);
    if (v.kind == CappedValue::Kind::Exact && v.value <= 6) {
      CHECK(sup.outcome == Outcome::Finite);
      CHECK(sup.bound == v.value);
    } else {
      CHECK(sup.outcome == Outcome::Unbounded);
    }

    if (fshape.cost == CostKind::LE) {
      BoundOptions small;
      small.cutoff = 3;
      BoundResult inf = compute_inf_bound(l, f, small);
      if (v.kind == CappedValue::Kind::Exact && v.value <= 3) {
        CHECK(inf.outcome == Outcome::Finite);
        CHECK(inf.bound == v.value);
        REQUIRE(inf.witness.has_value());
        CHECK(accepts(l, *inf.witness));
      } else {
        CHECK(inf.outcome == Outcome::InfiniteInf);
      }
    }
  }
}

}  // TEST_SUITE
