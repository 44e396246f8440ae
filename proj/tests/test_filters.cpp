#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "wfst/error.hpp"
#include "wfst/filters.hpp"

using namespace wfst;

namespace {

std::vector<int> seq(const FilterAutomaton& f, std::initializer_list<std::string_view> names) {
  std::vector<int> out;
  for (auto n : names) {
    const int s = f.symbol_index(n);
    REQUIRE(s >= 0);
    out.push_back(s);
  }
  return out;
}

std::vector<Move3> moves(std::initializer_list<std::string_view> names) {
  std::vector<Move3> out;
  for (auto n : names) out.push_back(*parse_move3(n));
  return out;
}

std::vector<int> indices(const std::vector<Move3>& ms) {
  std::vector<int> out;
  for (const Move3& m : ms) out.push_back(move3_index(m));
  return out;
}

// Per-machine projections: what each machine does, in order, ignoring stays.
// The middle records which neighbours every match pairs with.
using ClassKey = std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>;
ClassKey class_key(const std::vector<Move3>& ms) {
  ClassKey k;
  for (const Move3& m : ms) {
    if (m.steps[0] != Step::kStay) std::get<0>(k).push_back(static_cast<int>(m.steps[0]));
    if (m.steps[2] != Step::kStay) std::get<2>(k).push_back(static_cast<int>(m.steps[2]));
    if (m.steps[1] == Step::kEps) std::get<1>(k).push_back(0);
    if (m.steps[1] == Step::kMatch) {
      std::get<1>(k).push_back(1 + (m.steps[0] == Step::kMatch) + 2 * (m.steps[2] == Step::kMatch));
    }
  }
  return k;
}

void for_each_sequence(std::span<const Move3> alphabet, std::size_t max_len,
                       const std::function<void(const std::vector<Move3>&)>& f) {
  std::vector<Move3> cur;
  std::function<void()> rec = [&] {
    f(cur);
    if (cur.size() == max_len) return;
    for (const Move3& m : alphabet) {
      cur.push_back(m);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

std::vector<Move3> pure_moves() {
  std::vector<Move3> out;
  for (const Move3& m : move3_alphabet()) {
    if (is_pure_epsilon(m)) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_SUITE("filters") {

TEST_CASE("derive_filter reproduces M") {
  const FilterAutomaton d = derive_filter({"a", "b", "c", "x"}, filter_m_forbidden_factors());
  const FilterAutomaton m = filter_m();
  REQUIRE(d.num_states() == 3);
  CHECK(isomorphic(d, m));
  const int a = 0, b = 1, c = 2, x = 3, none = FilterAutomaton::kNone;
  const int want[3][4] = {{1, 2, 0, 0}, {1, none, none, 0}, {none, 2, none, 0}};
  for (int q = 0; q < 3; ++q) {
    for (int s : {a, b, c, x}) {
      CHECK(m.next(q, s) == want[q][s]);
      CHECK(d.next(q, s) == want[q][s]);
    }
  }
}

TEST_CASE("derive_filter small cases") {
  const FilterAutomaton one = derive_filter({"x"}, {});
  CHECK(one.num_states() == 1);
  CHECK(one.next(0, 0) == 0);

  const FilterAutomaton ab = derive_filter({"a", "b"}, {{0, 1}, {1, 0}});
  // a* + b*, checked on every word up to length 5.
  for (int len = 0; len <= 5; ++len) {
    for (int bits = 0; bits < (1 << len); ++bits) {
      std::vector<int> w;
      for (int i = 0; i < len; ++i) w.push_back((bits >> i) & 1);
      const bool uniform = bits == 0 || bits == (1 << len) - 1;
      CHECK(ab.accepts(w) == uniform);
    }
  }
  CHECK_THROWS_AS(derive_filter({}, {}), Error);
  CHECK_THROWS_AS(derive_filter({"a"}, {{0, 0, 0}}), Error);
}

TEST_CASE("M accepts and rejects") {
  const FilterAutomaton m = filter_m();
  CHECK(m.accepts(seq(m, {"c", "c", "x"})));
  CHECK_FALSE(m.accepts(seq(m, {"x", "a", "b"})));
  CHECK(m.accepts(seq(m, {"a", "a", "x"})));
  CHECK_FALSE(m.accepts(seq(m, {"b", "c"})));
  const std::vector<std::string> names{"c", "a", "x", "b"};
  CHECK(m.accepts_names(names));
}

TEST_CASE("M1 and M2") {
  const FilterAutomaton m = filter_m(), m1 = filter_m1(), m2 = filter_m2();
  CHECK(m1.num_transitions() == m.num_transitions() + 3);
  for (int q = 0; q < 3; ++q) CHECK(m1.next(q, kM1StayEps0) == q);
  CHECK(m2.next(0, kM2Eps0Eps2) == 2);
  CHECK(m2.next(0, kM2Eps0Eps1) == 0);
  CHECK(m2.next(1, kM2Eps0Eps2) == FilterAutomaton::kNone);
  CHECK(m2.next(1, kM2Eps0Eps1) == FilterAutomaton::kNone);
  CHECK(m2.next(2, kM2Eps0Eps2) == 2);
}

TEST_CASE("W derivation and reset") {
  const FilterAutomaton& w = filter_w();
  const FilterAutomaton d = derive_filter(move3_derivation_alphabet(), filter_w_forbidden_factors());
  CHECK(w.num_states() == d.num_states());
  // The derivation alphabet only adds the (0,0,0) column, which stays empty.
  const int all_stay = d.symbol_index("000");
  REQUIRE(all_stay >= 0);
  for (int q = 0; q < d.num_states(); ++q) {
    CHECK(d.next(q, all_stay) == FilterAutomaton::kNone);
    for (int s = 0; s < w.num_symbols(); ++s) CHECK(w.next(q, s) == d.next(q, d.symbol_index(w.symbols()[s])));
  }
  CHECK(isomorphic(minimize(w), w));
  const int xxx = w.symbol_index("xxx");
  for (int q = 0; q < w.num_states(); ++q) CHECK(w.next(q, xxx) == 0);
}

TEST_CASE("W examples") {
  const FilterAutomaton& w = filter_w();
  CHECK_FALSE(w.accepts(seq(w, {"001", "xx1"})));
  CHECK_FALSE(w.accepts(seq(w, {"001", "xx0"})));
  CHECK(w.accepts(seq(w, {"111", "011", "001"})));
  CHECK_FALSE(w.accepts(seq(w, {"001", "111"})));
  CHECK_FALSE(w.accepts(seq(w, {"100", "0xx"})));
  CHECK(w.accepts(seq(w, {"100", "xxx", "0xx"})));
}

TEST_CASE("Move3 names") {
  CHECK(move3_alphabet().size() == 12);
  for (const Move3& m : move3_alphabet()) {
    CHECK(*parse_move3(move3_name(m)) == m);
    CHECK(move3_index(m) >= 0);
  }
  REQUIRE(parse_move3("x0x"));
  CHECK(move3_index(*parse_move3("x0x")) == -1);
  CHECK_FALSE(parse_move3("ab"));
  CHECK(move3_index(*parse_move3("000")) == -1);
  CHECK(pure_moves().size() == 7);
}

TEST_CASE("canonicalize examples") {
  CHECK(canonicalize_move_sequence(moves({"001", "111"})) == moves({"111", "001"}));
  CHECK(canonicalize_move_sequence(moves({"111"})) == moves({"111"}));
  CHECK(canonicalize_move_sequence(moves({"010", "100", "001"})) == moves({"111"}));
  CHECK(canonicalize_move_sequence(moves({"100", "100", "xx1", "001", "001"})) ==
        moves({"101", "101", "xx1"}));
  CHECK_THROWS_AS(canonicalize_move_sequence(moves({"000"})), Error);
  CHECK_THROWS_AS(canonicalize_move_sequence(moves({"x0x"})), Error);
}

TEST_CASE("W accepts exactly the canonical pure sequences") {
  const auto pure = pure_moves();
  std::size_t checked = 0;
  for_each_sequence(pure, 4, [&](const std::vector<Move3>& pi) {
    const auto canon = canonicalize_move_sequence(pi);
    CHECK(filter_w().accepts(indices(canon)));
    CHECK(class_key(canon) == class_key(pi));
    CHECK(filter_w().accepts(indices(pi)) == (canon == pi));
    ++checked;
  });
  CHECK(checked == 1 + 7 + 49 + 343 + 2401);
}

TEST_CASE("W accepts exactly the canonical sequences over all moves") {
  std::map<ClassKey, int> accepted_per_class;
  for_each_sequence(move3_alphabet(), 4, [&](const std::vector<Move3>& pi) {
    const auto canon = canonicalize_move_sequence(pi);
    REQUIRE(class_key(canon) == class_key(pi));
    CHECK(canon.size() <= pi.size());
    const bool accepted = filter_w().accepts(indices(pi));
    CHECK(accepted == (canon == pi));
    auto& n = accepted_per_class[class_key(pi)];
    n += accepted;
  });
  // The canonical member is never longer than any other member, so every
  // class met here has its canonical member among the enumerated sequences.
  for (const auto& [key, n] : accepted_per_class) CHECK(n == 1);
}

TEST_CASE("pair filters") {
  const FilterAutomaton p = pair_filter_product();
  CHECK(p.num_states() == 9);
  CHECK(isomorphic(minimize(p), p));
  CHECK_FALSE(isomorphic(p, filter_w()));
  const int xxx = p.symbol_index("xxx");
  for (int q = 0; q < p.num_states(); ++q) CHECK(p.next(q, xxx) == 0);
  // The pair keeps at most one member of each class; its representative can
  // differ from W's, e.g. it delays T1's epsilon after a T2 stay.
  std::map<ClassKey, int> accepted_per_class;
  for_each_sequence(move3_alphabet(), 4, [&](const std::vector<Move3>& pi) {
    accepted_per_class[class_key(pi)] += p.accepts(indices(pi));
  });
  for (const auto& [key, n] : accepted_per_class) CHECK(n <= 1);
  CHECK(p.accepts(indices(moves({"001", "1xx"}))));
  CHECK_FALSE(filter_w().accepts(indices(moves({"001", "1xx"}))));
  CHECK(filter_w().accepts(indices(moves({"101", "0xx"}))));
}

TEST_CASE("grid paths") {
  const std::vector<int> two{2, 2};
  const GridPathCount c = grid_paths(filter_m(), two);
  CHECK(c.total == 13);
  CHECK(c.accepted == 1);
  REQUIRE(c.accepted_paths.size() == 1);
  CHECK(c.accepted_paths[0] == std::vector<int>{static_cast<int>(Move2::kC), static_cast<int>(Move2::kC)});
  const std::vector<int> zero{0, 0};
  CHECK(grid_paths(filter_m(), zero).accepted == 1);

  for (int d1 = 0; d1 <= 4; ++d1) {
    for (int d2 = 0; d2 <= 4; ++d2) {
      const std::vector<int> dims{d1, d2};
      CHECK(grid_unique_path_check(filter_m(), dims));
    }
  }
  const std::vector<int> cube2{2, 2, 2}, cube3{3, 3, 3};
  CHECK(grid_unique_path_check(filter_w(), cube2));
  CHECK(grid_unique_path_check(filter_w(), cube3));
  CHECK(grid_unique_path_check(pair_filter_product(), cube3));
  // Without any filter every grid beyond a point has several paths.
  FilterAutomaton open({"a", "b", "c", "x"});
  open.add_state();
  for (int s = 0; s < 4; ++s) open.set_transition(0, s, 0);
  CHECK_FALSE(grid_unique_path_check(open, two));
  const std::vector<int> big{6, 1};
  CHECK_THROWS_AS(grid_unique_path_check(filter_m(), big), Error);
}

TEST_CASE("dot export") {
  const std::string dot = to_dot(filter_m(), "M");
  CHECK(dot.find("digraph M") == 0);
  CHECK(dot.find("label=\"x\"") != std::string::npos);
}

}  // TEST_SUITE
