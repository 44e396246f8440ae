#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "wfst/algorithms.hpp"
#include "wfst/compose2.hpp"
#include "wfst/compose3.hpp"
#include "wfst/error.hpp"

using namespace wfst;

namespace {

constexpr Strategy kStrategies[] = {Strategy::kLateral, Strategy::kCentral, Strategy::kCombined};
constexpr FilterMode kModes[] = {FilterMode::kSingle, FilterMode::kPair};

Transducer chain(Label in, Label out, Weight w) {
  Transducer t(Semiring::probability());
  t.reserve_states(2);
  t.set_initial(0, 1.0);
  t.add_transition(0, {in, out, w, 1});
  t.set_final(1, 1.0);
  return t;
}

Transducer single_state(Semiring sr = Semiring::probability()) {
  Transducer t(sr);
  t.add_state();
  t.set_initial(0, sr.one());
  t.set_final(0, sr.one());
  return t;
}

}  // namespace

TEST_SUITE("compose3") {

TEST_CASE("names") {
  for (Strategy s : {Strategy::kLateral, Strategy::kCentral, Strategy::kCombined, Strategy::kAuto}) {
    CHECK(strategy_from_name(strategy_name(s)) == s);
  }
  for (FilterMode m : kModes) CHECK(filter_mode_from_name(filter_mode_name(m)) == m);
  CHECK_FALSE(strategy_from_name("sideways"));
  CHECK_FALSE(filter_mode_from_name("double"));
}

TEST_CASE("random corpus against cascade and oracle") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    CAPTURE(seed);
    const oracle::Triple c = oracle::random_triple(seed);
    const Semiring& sr = c.t1.semiring();
    const oracle::Rel want = oracle::restrict(
        oracle::join(oracle::join(oracle::enumerate(c.t1), oracle::enumerate(c.t2), sr), oracle::enumerate(c.t3), sr),
        4);
    const Transducer cascade = compose(compose(c.t1, c.t2), c.t3);
    CHECK(oracle::same_relation(bounded_relation(cascade, 4), want, 0.0, 1e-9));
    for (FilterMode mode : kModes) {
      for (Strategy s : kStrategies) {
        const Compose3Result r = compose3(c.t1, c.t2, c.t3, {s, mode});
        CHECK(oracle::same_relation(bounded_relation(r.fst, 4), want, 0.0, 1e-9));
        CHECK(r.counters.transitions_emitted == r.fst.stats().num_transitions);
        CHECK(r.counters.states_expanded == static_cast<std::uint64_t>(r.fst.num_states()));
      }
    }
  }
}

TEST_CASE("strategies build the same machine") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const oracle::Triple c = oracle::random_triple(seed, 0.3);
    for (FilterMode mode : kModes) {
      const Compose3Result lat = compose3(c.t1, c.t2, c.t3, {Strategy::kLateral, mode});
      const Compose3Result cen = compose3(c.t1, c.t2, c.t3, {Strategy::kCentral, mode});
      const Compose3Result com = compose3(c.t1, c.t2, c.t3, {Strategy::kCombined, mode});
      CHECK(lat.fst.num_states() == cen.fst.num_states());
      CHECK(lat.fst.num_states() == com.fst.num_states());
      CHECK(lat.counters.transitions_emitted == cen.counters.transitions_emitted);
      CHECK(lat.counters.transitions_emitted == com.counters.transitions_emitted);
      CHECK(equivalent_by_evaluation(lat.fst, cen.fst, 4));
      CHECK(equivalent_by_evaluation(lat.fst, com.fst, 4));
      // Same tuples reachable.
      LazyCompose3 a(c.t1, c.t2, c.t3, {Strategy::kLateral, mode});
      LazyCompose3 b(c.t1, c.t2, c.t3, {Strategy::kCentral, mode});
      materialize(a);
      materialize(b);
      std::set<std::tuple<StateId, StateId, StateId, int, int>> sa, sb;
      for (StateId s = 0; s < a.num_known_states(); ++s) {
        const TripleState& t = a.tuple(s);
        sa.insert({t.q1, t.q2, t.q3, t.f1, t.f2});
      }
      for (StateId s = 0; s < b.num_known_states(); ++s) {
        const TripleState& t = b.tuple(s);
        sb.insert({t.q1, t.q2, t.q3, t.f1, t.f2});
      }
      CHECK(sa == sb);
    }
  }
}

TEST_CASE("auto resolves to combined") {
  const oracle::Triple c = oracle::random_triple(3);
  const Compose3Result a = compose3(c.t1, c.t2, c.t3, {Strategy::kAuto, FilterMode::kSingle});
  const Compose3Result b = compose3(c.t1, c.t2, c.t3, {Strategy::kCombined, FilterMode::kSingle});
  CHECK(a.counters == b.counters);
}

TEST_CASE("identity on the left reduces to pairwise composition") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const oracle::Triple c = oracle::random_triple(seed + 400);
    const Transducer id = identity(c.alphabet, Semiring::probability());
    const Compose3Result r = compose3(id, c.t2, c.t3, {Strategy::kCentral, FilterMode::kSingle});
    CHECK(equivalent_by_evaluation(r.fst, compose(c.t2, c.t3), 4));
    const Compose3Result l = compose3(c.t1, c.t2, identity(c.alphabet, Semiring::probability()));
    CHECK(equivalent_by_evaluation(l.fst, compose(c.t1, c.t2), 4));
  }
}

TEST_CASE("identity in the middle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const oracle::Triple c = oracle::random_triple(seed + 700);
    const Transducer id = identity(c.alphabet, Semiring::probability());
    for (FilterMode mode : kModes) {
      const Compose3Result r = compose3(c.t1, id, c.t3, {Strategy::kCombined, mode});
      CHECK(equivalent_by_evaluation(r.fst, compose(c.t1, c.t3), 4));
    }
  }
}

TEST_CASE("epsilon-free transcription") {
  const Compose3Result r = compose3_eps_free(chain(1, 2, 0.5), chain(2, 3, 0.4), chain(3, 4, 0.25));
  CHECK(r.fst.num_states() == 2);
  CHECK(r.fst.stats().num_transitions == 1);
  const Arc& arc = r.fst.transitions(0)[0];
  CHECK(arc.ilabel == 1);
  CHECK(arc.olabel == 4);
  CHECK(approx_equal(arc.weight, 0.05, 1e-12));
  CHECK(r.fst.is_final(1));

  const Compose3Result none = compose3_eps_free(chain(1, 2, 0.5), chain(3, 3, 0.4), chain(3, 4, 0.25));
  CHECK(none.fst.num_states() == 1);
  CHECK(none.fst.stats().num_transitions == 0);
  CHECK_FALSE(none.fst.is_final(0));
  CHECK(bounded_relation(none.fst, 3).empty());

  CHECK_THROWS_AS(compose3_eps_free(chain(1, 0, 0.5), chain(2, 3, 0.4), chain(3, 4, 0.25)), Error);
  CHECK_THROWS_AS(compose3_eps_free(chain(1, 2, 0.5), chain(0, 3, 0.4), chain(3, 4, 0.25)), Error);
  CHECK_THROWS_AS(compose3_eps_free(chain(1, 2, 0.5), chain(2, 3, 0.4), chain(0, 4, 0.25)), Error);
  // Epsilons on the outer tapes are fine.
  CHECK_NOTHROW(compose3_eps_free(chain(0, 2, 0.5), chain(2, 3, 0.4), chain(3, 0, 0.25)));

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const oracle::Triple c = oracle::random_triple(seed + 900, 0.0);
    for (Strategy s : kStrategies) {
      const Compose3Result direct = compose3_eps_free(c.t1, c.t2, c.t3, s);
      for (FilterMode mode : kModes) {
        const Compose3Result general = compose3(c.t1, c.t2, c.t3, {s, mode});
        CHECK(direct.fst.num_states() == general.fst.num_states());
        CHECK(direct.counters.transitions_emitted == general.counters.transitions_emitted);
        CHECK(equivalent_by_evaluation(direct.fst, general.fst, 4));
      }
    }
  }
}

TEST_CASE("enumerate_moves") {
  SUBCASE("real labels only") {
    const oracle::Triple c = oracle::random_triple(5, 0.0);
    LazyCompose3 lazy(c.t1, c.t2, c.t3);
    materialize(lazy);
    for (StateId s = 0; s < lazy.num_known_states(); ++s) {
      for (const MoveCandidate& m : lazy.enumerate_moves(s)) CHECK(move3_name(m.move) == "xxx");
    }
  }
  SUBCASE("lone epsilon output in T1") {
    const Transducer t1 = chain(1, kEpsilon, 0.5);
    const Transducer t2 = single_state(), t3 = single_state();
    LazyCompose3 lazy(t1, t2, t3);
    const auto moves = lazy.enumerate_moves(lazy.initial_states()[0]);
    REQUIRE(moves.size() == 1);
    CHECK(move3_name(moves[0].move) == "100");
    CHECK(moves[0].next.f1 == filter_w().next(0, move3_index(moves[0].move)));
    CHECK(moves[0].next.q1 == 1);
    CHECK(lazy.counters() == ComposeCounters{});
  }
  SUBCASE("no duplicate arc triples") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const oracle::Triple c = oracle::random_triple(seed + 50, 0.4);
      for (FilterMode mode : kModes) {
        LazyCompose3 lazy(c.t1, c.t2, c.t3, {Strategy::kCombined, mode});
        materialize(lazy);
        for (StateId s = 0; s < lazy.num_known_states(); ++s) {
          std::set<std::tuple<const Arc*, const Arc*, const Arc*>> seen;
          for (const MoveCandidate& m : lazy.enumerate_moves(s)) {
            CHECK(seen.insert({m.e1, m.e2, m.e3}).second);
            CHECK(move3_index(m.move) >= 0);
          }
        }
      }
    }
  }
}

TEST_CASE("lazy expansion") {
  const oracle::Triple c = oracle::random_triple(21, 0.3);
  LazyCompose3 lazy(c.t1, c.t2, c.t3);
  CHECK(lazy.counters() == ComposeCounters{});
  const StateId s0 = lazy.initial_states()[0];
  const std::vector<Arc> first(lazy.expand_state(s0).begin(), lazy.expand_state(s0).end());
  const ComposeCounters after_one = lazy.counters();
  CHECK(after_one.states_expanded == 1);
  for (StateId s = 0; s < lazy.num_known_states(); ++s) CHECK(lazy.is_expanded(s) == (s == s0));
  const auto again = lazy.expand_state(s0);
  CHECK(std::equal(first.begin(), first.end(), again.begin(), again.end()));
  CHECK(lazy.counters() == after_one);

  const Transducer full = materialize(lazy);
  const Compose3Result eager = compose3(c.t1, c.t2, c.t3);
  CHECK(full.num_states() == eager.fst.num_states());
  CHECK(full.stats() == eager.fst.stats());
  CHECK(equivalent_by_evaluation(full, eager.fst, 4));
}

TEST_CASE("probe counts follow the cost model") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const oracle::Triple c = oracle::random_triple(seed + 1300, 0.3);
    LazyCompose3 lazy(c.t1, c.t2, c.t3, {Strategy::kCombined, FilterMode::kSingle});
    materialize(lazy);
    std::uint64_t bound = 0;
    for (StateId s = 0; s < lazy.num_known_states(); ++s) {
      const TripleState& t = lazy.tuple(s);
      const std::uint64_t d1 = c.t1.out_degree(t.q1), d2 = c.t2.out_degree(t.q2), d3 = c.t3.out_degree(t.q3);
      // One extra probe per virtual stay of each machine.
      bound += std::min(d1 * d3, d2) + d1 + d3 + 1;
    }
    CHECK(lazy.counters().match_probes <= bound + lazy.counters().transitions_emitted);
  }
}

TEST_CASE("weights and semiring checks") {
  const Compose3Result r = compose3(chain(1, 2, 0.5), chain(2, 3, 0.4), chain(3, 4, 0.25));
  const oracle::Str x{1}, y{4};
  CHECK(approx_equal(evaluate(r.fst, x, y), 0.05, 1e-12));
  Transducer weighted = single_state();
  weighted.set_initial(0, 0.5);
  weighted.set_final(0, 0.2);
  const Compose3Result w = compose3(weighted, weighted, weighted);
  CHECK(approx_equal(evaluate(w.fst, {}, {}), 0.125 * 0.008, 1e-12));
  CHECK_THROWS_AS(compose3(single_state(), single_state(Semiring::tropical()), single_state()), Error);
}

}  // TEST_SUITE
