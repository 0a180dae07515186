#include "doctest.h"

#include "cltl/emptiness.hpp"
#include "generators.hpp"
#include "reference.hpp"

using namespace cltl;
using namespace cltl::testing;

namespace {

AccSet bits(std::size_t width, std::initializer_list<std::size_t> on) {
  AccSet s(width);
  for (auto j : on) s.set(j);
  return s;
}

CounterAutomaton with_initial(const CounterAutomaton& a, State q) {
  CounterAutomaton b(a.num_states(), q, a.num_counters(), a.num_acc_sets());
  for (const auto& t : a.transitions()) b.add_transition(t);
  return b;
}

}  // namespace

TEST_SUITE("emptiness") {

TEST_CASE("small cases") {
  SUBCASE("no transitions") {
    CounterAutomaton a(3, 0, 0, 0);
    CHECK(is_empty(a));
    CHECK_FALSE(find_accepting_lasso(a).has_value());
  }
  SUBCASE("no acceptance sets: any reachable cycle") {
    CounterAutomaton a(2, 0, 0, 0);
    a.add_transition({0, 1, Cube(), {}, {}});
    a.add_transition({1, 1, Cube(), {}, {}});
    auto w = find_accepting_lasso(a);
    REQUIRE(w.has_value());
    CHECK(w->run.stem == std::vector<std::size_t>{0});
    CHECK(w->run.loop == std::vector<std::size_t>{1});
  }
  SUBCASE("cycle that misses a set") {
    CounterAutomaton a(2, 0, 0, 2);
    a.add_transition({0, 0, Cube(), {}, bits(2, {0})});
    a.add_transition({0, 1, Cube(), {}, bits(2, {1})});
    CHECK(is_empty(a));
  }
  SUBCASE("two sets on two edges of one cycle") {
    CounterAutomaton a(2, 0, 0, 2);
    a.add_transition({0, 1, Cube(), {}, bits(2, {0})});
    a.add_transition({1, 0, Cube(), {}, bits(2, {1})});
    auto w = find_accepting_lasso(a);
    REQUIRE(w.has_value());
    CHECK(w->run.stem.empty());
    CHECK(w->run.loop == std::vector<std::size_t>{0, 1});
    CHECK_FALSE(check_witness(a, *w).has_value());
  }
  SUBCASE("unreachable accepting cycle") {
    CounterAutomaton a(3, 0, 0, 1);
    a.add_transition({0, 0, Cube(), {}, bits(1, {})});
    a.add_transition({1, 2, Cube(), {}, bits(1, {0})});
    a.add_transition({2, 1, Cube(), {}, bits(1, {0})});
    CHECK(is_empty(a));
    auto live = live_states(a);
    CHECK(live == std::vector<bool>{false, true, true});
  }
  SUBCASE("witness letters complete the cubes") {
    CounterAutomaton a(1, 0, 0, 1);
    a.add_transition({0, 0, Cube({{intern_prop("a"), true}, {intern_prop("b"), false}}),
                      {}, bits(1, {0})});
    auto w = find_accepting_lasso(a);
    REQUIRE(w.has_value());
    CHECK(w->word.prefix.empty());
    CHECK(w->word.cycle == std::vector<Letter>{Letter{"a"}});
  }
}

TEST_CASE("graph labels share acceptance bitsets") {
  AccGraph g;
  g.num_nodes = 3;
  g.num_sets = 1;
  g.label_acc = {bits(1, {}), bits(1, {0})};
  g.add_edge(0, 1, 0);
  g.add_edge(1, 2, 0);
  g.add_edge(2, 1, 1);
  auto l = find_accepting_cycle(g);
  REQUIRE(l.has_value());
  CHECK(l->stem == std::vector<std::size_t>{0});
  CHECK(l->loop == std::vector<std::size_t>{1, 2});
}

TEST_CASE("random automata against the definition") {
  Rng rng(31);
  AutomatonShape shape;
  shape.max_states = 12;
  shape.max_acc_sets = 3;
  shape.max_out = 3;
  for (int i = 0; i < 400; ++i) {
    CounterAutomaton a = random_automaton(rng, shape);
    auto w = find_accepting_lasso(a);
    CHECK(w.has_value() == naive_nonempty(a));
    CHECK(is_empty(a) == !w.has_value());
    if (w) {
      CHECK_FALSE(check_run(a, w->run).has_value());
      auto err = check_witness(a, *w);
      CHECK_MESSAGE(!err.has_value(), *err);
      CHECK(accepts(a, w->word));
    }
  }
}

TEST_CASE("live states against the definition") {
  Rng rng(32);
  AutomatonShape shape;
  shape.max_states = 8;
  for (int i = 0; i < 150; ++i) {
    CounterAutomaton a = random_automaton(rng, shape);
    auto live = live_states(a);
    for (State q = 0; q < a.num_states(); ++q)
      CHECK(live[q] == naive_nonempty(with_initial(a, q)));
  }
}

}  // TEST_SUITE
