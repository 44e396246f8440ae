#include "wfst/filters.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "wfst/error.hpp"

namespace wfst {

FilterAutomaton::FilterAutomaton(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {}

int FilterAutomaton::add_state() {
  table_.emplace_back(symbols_.size(), kNone);
  return num_states() - 1;
}

void FilterAutomaton::set_transition(int state, int symbol, int target) {
  if (state < 0 || state >= num_states() || target < 0 || target >= num_states() ||
      symbol < 0 || symbol >= num_symbols()) {
    throw Error(ErrorCode::kInvalidArgument, "filter transition out of range");
  }
  table_[state][symbol] = target;
}

std::size_t FilterAutomaton::num_transitions() const {
  std::size_t n = 0;
  for (const auto& row : table_) n += std::count_if(row.begin(), row.end(), [](int t) { return t != kNone; });
  return n;
}

int FilterAutomaton::symbol_index(std::string_view name) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), name);
  return it == symbols_.end() ? -1 : static_cast<int>(it - symbols_.begin());
}

std::optional<int> FilterAutomaton::run(std::span<const int> sequence) const {
  if (table_.empty()) return std::nullopt;
  int state = 0;
  for (int s : sequence) {
    if (s < 0 || s >= num_symbols()) return std::nullopt;
    state = table_[state][s];
    if (state == kNone) return std::nullopt;
  }
  return state;
}

bool FilterAutomaton::accepts_names(std::span<const std::string> names) const {
  std::vector<int> seq;
  for (const auto& n : names) seq.push_back(symbol_index(n));
  return accepts(seq);
}

FilterAutomaton minimize(const FilterAutomaton& f) {
  const int k = f.num_symbols();
  if (f.num_states() == 0) return FilterAutomaton(f.symbols());

  std::vector<int> reachable_order{0};
  std::vector<bool> seen(f.num_states(), false);
  seen[0] = true;
  for (std::size_t i = 0; i < reachable_order.size(); ++i) {
    for (int s = 0; s < k; ++s) {
      const int t = f.next(reachable_order[i], s);
      if (t != FilterAutomaton::kNone && !seen[t]) {
        seen[t] = true;
        reachable_order.push_back(t);
      }
    }
  }

  // Moore refinement; every state is accepting so the initial partition is a
  // single block and blocking (kNone) acts as a distinguished target.
  std::vector<int> block(f.num_states(), 0);
  int num_blocks = 1;
  while (true) {
    std::map<std::vector<int>, int> signature_ids;
    std::vector<int> refined(f.num_states(), -1);
    for (int q : reachable_order) {
      std::vector<int> sig{block[q]};
      for (int s = 0; s < k; ++s) {
        const int t = f.next(q, s);
        sig.push_back(t == FilterAutomaton::kNone ? -1 : block[t]);
      }
      auto [it, inserted] = signature_ids.try_emplace(std::move(sig), static_cast<int>(signature_ids.size()));
      refined[q] = it->second;
    }
    const int count = static_cast<int>(signature_ids.size());
    block = std::move(refined);
    if (count == num_blocks) break;
    num_blocks = count;
  }

  // Breadth-first renumbering of the quotient.
  FilterAutomaton out(f.symbols());
  std::map<int, int> block_to_state;
  std::vector<int> representative;
  std::deque<int> queue;
  block_to_state[block[0]] = out.add_state();
  representative.push_back(0);
  queue.push_back(0);
  while (!queue.empty()) {
    const int src = queue.front();
    queue.pop_front();
    const int q = representative[src];
    for (int s = 0; s < k; ++s) {
      const int t = f.next(q, s);
      if (t == FilterAutomaton::kNone) continue;
      auto it = block_to_state.find(block[t]);
      if (it == block_to_state.end()) {
        it = block_to_state.emplace(block[t], out.add_state()).first;
        representative.push_back(t);
        queue.push_back(it->second);
      }
      out.set_transition(src, s, it->second);
    }
  }
  return out;
}

FilterAutomaton derive_filter(std::vector<std::string> alphabet,
                              const std::vector<std::vector<int>>& forbidden_factors) {
  const int k = static_cast<int>(alphabet.size());
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "empty filter alphabet");

  // Nondeterministic automaton for sigma* (f1 + ... + fn) sigma*: state 0
  // loops on everything, one middle state per two-symbol factor, and an
  // absorbing accepting state.
  std::vector<std::vector<std::vector<int>>> nfa(1, std::vector<std::vector<int>>(k));
  for (int s = 0; s < k; ++s) nfa[0][s].push_back(0);
  std::vector<std::pair<int, int>> pending;  // (middle state, second symbol)
  std::vector<int> first_to_final;
  for (const auto& factor : forbidden_factors) {
    if (factor.empty() || factor.size() > 2) {
      throw Error(ErrorCode::kInvalidArgument, "forbidden factors must have length 1 or 2");
    }
    for (int s : factor) {
      if (s < 0 || s >= k) throw Error(ErrorCode::kInvalidArgument, "factor symbol out of range");
    }
    if (factor.size() == 1) {
      first_to_final.push_back(factor[0]);
    } else {
      const int mid = static_cast<int>(nfa.size());
      nfa.emplace_back(k);
      nfa[0][factor[0]].push_back(mid);
      pending.emplace_back(mid, factor[1]);
    }
  }
  const int final_state = static_cast<int>(nfa.size());
  nfa.emplace_back(k);
  for (int s : first_to_final) nfa[0][s].push_back(final_state);
  for (auto [mid, s] : pending) nfa[mid][s].push_back(final_state);
  for (int s = 0; s < k; ++s) nfa[final_state][s].push_back(final_state);

  // Subset construction.
  std::map<std::set<int>, int> subset_ids;
  std::vector<std::set<int>> subsets;
  std::vector<std::vector<int>> dfa;
  auto intern = [&](std::set<int> subset) {
    auto [it, inserted] = subset_ids.try_emplace(subset, static_cast<int>(subsets.size()));
    if (inserted) {
      subsets.push_back(std::move(subset));
      dfa.emplace_back(k, FilterAutomaton::kNone);
    }
    return it->second;
  };
  intern({0});
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (int s = 0; s < k; ++s) {
      std::set<int> target;
      for (int q : subsets[i]) target.insert(nfa[q][s].begin(), nfa[q][s].end());
      const int t = intern(std::move(target));
      dfa[i][s] = t;
    }
  }

  // Complement; subsets holding the absorbing state are rejecting and can
  // never reach acceptance again, so trimming drops them.
  std::vector<int> kept(subsets.size(), FilterAutomaton::kNone);
  FilterAutomaton complement(std::move(alphabet));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (!subsets[i].contains(final_state)) kept[i] = complement.add_state();
  }
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (kept[i] == FilterAutomaton::kNone) continue;
    for (int s = 0; s < k; ++s) {
      const int t = kept[dfa[i][s]];
      if (t != FilterAutomaton::kNone) complement.set_transition(kept[i], s, t);
    }
  }
  if (complement.num_states() == 0) return complement;
  return minimize(complement);
}

bool isomorphic(const FilterAutomaton& a, const FilterAutomaton& b) {
  if (a.num_states() != b.num_states()) return false;
  if (a.num_states() == 0) return true;
  std::vector<std::string> names = a.symbols();
  for (const auto& n : b.symbols()) {
    if (a.symbol_index(n) < 0) names.push_back(n);
  }
  std::vector<int> map_ab(a.num_states(), -1), map_ba(b.num_states(), -1);
  map_ab[0] = 0;
  map_ba[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int p = queue.front();
    queue.pop_front();
    const int q = map_ab[p];
    for (const auto& n : names) {
      const int sa = a.symbol_index(n), sb = b.symbol_index(n);
      const int ta = sa < 0 ? FilterAutomaton::kNone : a.next(p, sa);
      const int tb = sb < 0 ? FilterAutomaton::kNone : b.next(q, sb);
      if ((ta == FilterAutomaton::kNone) != (tb == FilterAutomaton::kNone)) return false;
      if (ta == FilterAutomaton::kNone) continue;
      if (map_ab[ta] == -1 && map_ba[tb] == -1) {
        map_ab[ta] = tb;
        map_ba[tb] = ta;
        queue.push_back(ta);
      } else if (map_ab[ta] != tb || map_ba[tb] != ta) {
        return false;
      }
    }
  }
  return std::count(map_ab.begin(), map_ab.end(), -1) == 0;
}

std::string to_dot(const FilterAutomaton& f, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (int q = 0; q < f.num_states(); ++q) {
    os << "  " << q << " [shape=" << (q == 0 ? "doublecircle" : "circle") << "];\n";
  }
  for (int q = 0; q < f.num_states(); ++q) {
    for (int s = 0; s < f.num_symbols(); ++s) {
      const int t = f.next(q, s);
      if (t != FilterAutomaton::kNone) {
        os << "  " << q << " -> " << t << " [label=\"" << f.symbols()[s] << "\"];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

// --- two-way filters --------------------------------------------------------

namespace {

constexpr int kA = static_cast<int>(Move2::kA);
constexpr int kB = static_cast<int>(Move2::kB);
constexpr int kC = static_cast<int>(Move2::kC);
constexpr int kX = static_cast<int>(Move2::kX);

FilterAutomaton filter_m_over(std::vector<std::string> symbols) {
  FilterAutomaton m(std::move(symbols));
  for (int i = 0; i < 3; ++i) m.add_state();
  m.set_transition(0, kA, 1);
  m.set_transition(0, kB, 2);
  m.set_transition(0, kC, 0);
  m.set_transition(0, kX, 0);
  m.set_transition(1, kA, 1);
  m.set_transition(1, kX, 0);
  m.set_transition(2, kB, 2);
  m.set_transition(2, kX, 0);
  return m;
}

}  // namespace

FilterAutomaton filter_m() { return filter_m_over({"a", "b", "c", "x"}); }

FilterAutomaton filter_m1() {
  FilterAutomaton m = filter_m_over({"a", "b", "c", "x", "e1:e0"});
  for (int q = 0; q < m.num_states(); ++q) m.set_transition(q, kM1StayEps0, q);
  return m;
}

FilterAutomaton filter_m2() {
  FilterAutomaton m = filter_m_over({"a", "b", "c", "x", "e0:e2", "e0:e1"});
  for (int q = 0; q < m.num_states(); ++q) {
    if (m.next(q, kB) != FilterAutomaton::kNone) m.set_transition(q, kM2Eps0Eps2, m.next(q, kB));
    if (m.next(q, kC) != FilterAutomaton::kNone) m.set_transition(q, kM2Eps0Eps1, m.next(q, kC));
  }
  return m;
}

std::vector<std::vector<int>> filter_m_forbidden_factors() {
  return {{kA, kB}, {kB, kA}, {kA, kC}, {kB, kC}};
}

// --- three-way moves ---------------------------------------------------------

namespace {

constexpr Step k0 = Step::kStay;
constexpr Step k1 = Step::kEps;
constexpr Step kx = Step::kMatch;

constexpr std::array<Move3, 12> kMove3Alphabet = {{
    {{k0, k0, k1}}, {{k0, k1, k0}}, {{k0, k1, k1}}, {{k1, k0, k0}},
    {{k1, k0, k1}}, {{k1, k1, k0}}, {{k1, k1, k1}}, {{kx, kx, k0}},
    {{kx, kx, k1}}, {{k0, kx, kx}}, {{k1, kx, kx}}, {{kx, kx, kx}},
}};

char step_char(Step s) { return s == k0 ? '0' : s == k1 ? '1' : 'x'; }

}  // namespace

std::optional<Move3> parse_move3(std::string_view name) {
  if (name.size() != 3) return std::nullopt;
  Move3 m;
  for (int i = 0; i < 3; ++i) {
    switch (name[i]) {
      case '0': m.steps[i] = k0; break;
      case '1': m.steps[i] = k1; break;
      case 'x': m.steps[i] = kx; break;
      default: return std::nullopt;
    }
  }
  return m;
}

std::string move3_name(const Move3& m) {
  return {step_char(m.steps[0]), step_char(m.steps[1]), step_char(m.steps[2])};
}

std::span<const Move3> move3_alphabet() { return kMove3Alphabet; }

int move3_index(const Move3& m) {
  auto it = std::find(kMove3Alphabet.begin(), kMove3Alphabet.end(), m);
  return it == kMove3Alphabet.end() ? -1 : static_cast<int>(it - kMove3Alphabet.begin());
}

bool is_pure_epsilon(const Move3& m) {
  return std::none_of(m.steps.begin(), m.steps.end(), [](Step s) { return s == kx; });
}

std::vector<std::string> move3_derivation_alphabet() {
  std::vector<std::string> names;
  for (const Move3& m : kMove3Alphabet) names.push_back(move3_name(m));
  names.push_back("000");
  return names;
}

std::vector<std::vector<int>> filter_w_forbidden_factors() {
  const int n = static_cast<int>(kMove3Alphabet.size());
  const int all_stay = n;  // index of "000" in the derivation alphabet
  std::vector<Move3> symbols(kMove3Alphabet.begin(), kMove3Alphabet.end());
  symbols.push_back({{k0, k0, k0}});
  auto is_left_match = [](const Move3& v) { return v.steps[0] == kx && v.steps[1] == kx && v.steps[2] != kx; };
  auto is_right_match = [](const Move3& v) { return v.steps[0] != kx && v.steps[1] == kx && v.steps[2] == kx; };

  std::vector<std::vector<int>> factors;
  for (int u = 0; u <= n; ++u) {
    for (int v = 0; v <= n; ++v) {
      const Move3& a = symbols[u];
      const Move3& b = symbols[v];
      bool forbidden = false;
      // A machine that stayed put cannot resume epsilon moves before a match.
      for (int i = 0; i < 3; ++i) forbidden |= a.steps[i] == k0 && b.steps[i] == k1;
      // Two adjacent idle machines only resume together with the third one.
      forbidden |= a.steps[0] == k0 && a.steps[1] == k0 && is_left_match(b);
      forbidden |= a.steps[1] == k0 && a.steps[2] == k0 && is_right_match(b);
      if (forbidden) factors.push_back({u, v});
    }
  }
  factors.push_back({all_stay});
  return factors;
}

const FilterAutomaton& filter_w() {
  static const FilterAutomaton w = [] {
    const FilterAutomaton derived = derive_filter(move3_derivation_alphabet(), filter_w_forbidden_factors());
    // Drop the (0,0,0) column, which the derivation leaves empty.
    std::vector<std::string> names;
    for (const Move3& m : kMove3Alphabet) names.push_back(move3_name(m));
    FilterAutomaton out(names);
    for (int q = 0; q < derived.num_states(); ++q) out.add_state();
    for (int q = 0; q < derived.num_states(); ++q) {
      for (int s = 0; s < out.num_symbols(); ++s) {
        const int t = derived.next(q, derived.symbol_index(names[s]));
        if (t != FilterAutomaton::kNone) out.set_transition(q, s, t);
      }
    }
    return out;
  }();
  return w;
}

PairSymbols pair_symbols(const Move3& m) {
  const Step s1 = m.steps[0], s2 = m.steps[1], s3 = m.steps[2];
  if (s2 == kx) {
    // The left interface sees x when T1 matches, otherwise T2 reads an
    // epsilon input against a T1 stay (a) or a T1 epsilon output (c).
    const int left = s1 == kx ? kX : s1 == k1 ? kC : kA;
    const int right = s3 == kx ? kX : s3 == k1 ? kC : kB;
    return {left, right};
  }
  if (s2 == k1) {
    return {s1 == k1 ? kC : kA, s3 == k1 ? kC : kB};
  }
  // T2 stays: either through its (e0:e1) loop while T3 moves alone, or
  // through its (e2:e0) loop while T1 reads an output epsilon.
  if (s1 == k0) return {kM1StayEps0, kA};
  return {kB, s3 == k1 ? kM2Eps0Eps1 : kM2Eps0Eps2};
}

FilterAutomaton pair_filter_product() {
  const FilterAutomaton m1 = filter_m1();
  const FilterAutomaton m2 = filter_m2();
  std::vector<std::string> names;
  for (const Move3& m : kMove3Alphabet) names.push_back(move3_name(m));
  FilterAutomaton out(names);
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> states;
  auto intern = [&](std::pair<int, int> p) {
    auto [it, inserted] = ids.try_emplace(p, static_cast<int>(states.size()));
    if (inserted) {
      states.push_back(p);
      out.add_state();
    }
    return it->second;
  };
  intern({0, 0});
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (int s = 0; s < out.num_symbols(); ++s) {
      const PairSymbols ps = pair_symbols(kMove3Alphabet[s]);
      const int f1 = m1.next(states[i].first, ps.m1);
      const int f2 = m2.next(states[i].second, ps.m2);
      if (f1 == FilterAutomaton::kNone || f2 == FilterAutomaton::kNone) continue;
      const int t = intern({f1, f2});
      out.set_transition(static_cast<int>(i), s, t);
    }
  }
  return out;
}

// --- canonical representatives ----------------------------------------------

namespace {

// Case of a sequence without matches: with per-machine one-counts sorted as
// n_lo <= n_mid <= n_hi the representative is the staircase
// (1,1,1)^n_lo (0,1,1)^(n_mid-n_lo) (0,0,1)^(n_hi-n_mid), mapped back to the
// original coordinate order.
std::vector<Move3> staircase(std::span<const Move3> moves) {
  std::array<int, 3> count{};
  for (const Move3& m : moves) {
    for (int i = 0; i < 3; ++i) count[i] += m.steps[i] == k1;
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return count[a] < count[b]; });
  std::vector<Move3> out;
  int done = 0;
  for (int level = 0; level < 3; ++level) {
    const int reps = count[order[level]] - done;
    Move3 m{{k0, k0, k0}};
    for (int j = level; j < 3; ++j) m.steps[order[j]] = k1;
    for (int r = 0; r < reps; ++r) out.push_back(m);
    done = count[order[level]];
  }
  return out;
}

// Tokens of the middle machine: an epsilon move, or a match paired with the
// left machine, the right machine, or both.
enum class MiddleToken : std::uint8_t { kEps, kLeft, kRight, kBoth };

// General case: replays the per-machine projections, firing each one-move as
// soon as the machine reaches it and each match as soon as both partners are
// waiting on it.
std::vector<Move3> earliest_schedule(std::span<const Move3> moves) {
  std::vector<Step> left, right;
  std::vector<MiddleToken> middle;
  for (const Move3& m : moves) {
    if (m.steps[0] != k0) left.push_back(m.steps[0]);
    if (m.steps[2] != k0) right.push_back(m.steps[2]);
    if (m.steps[1] == k1) {
      middle.push_back(MiddleToken::kEps);
    } else if (m.steps[1] == kx) {
      const bool l = m.steps[0] == kx, r = m.steps[2] == kx;
      middle.push_back(l && r ? MiddleToken::kBoth : l ? MiddleToken::kLeft : MiddleToken::kRight);
    }
  }
  std::size_t i1 = 0, i2 = 0, i3 = 0;
  std::vector<Move3> out;
  while (i1 < left.size() || i2 < middle.size() || i3 < right.size()) {
    const bool l_eps = i1 < left.size() && left[i1] == k1;
    const bool l_match = i1 < left.size() && left[i1] == kx;
    const bool r_eps = i3 < right.size() && right[i3] == k1;
    const bool r_match = i3 < right.size() && right[i3] == kx;
    const bool has_mid = i2 < middle.size();
    const MiddleToken mid = has_mid ? middle[i2] : MiddleToken::kEps;

    Move3 m{{k0, k0, k0}};
    if (has_mid && mid == MiddleToken::kBoth && l_match && r_match) {
      m = {{kx, kx, kx}};
      ++i1, ++i2, ++i3;
    } else if (has_mid && mid == MiddleToken::kLeft && l_match) {
      m = {{kx, kx, r_eps ? k1 : k0}};
      ++i1, ++i2;
      if (r_eps) ++i3;
    } else if (has_mid && mid == MiddleToken::kRight && r_match) {
      m = {{l_eps ? k1 : k0, kx, kx}};
      ++i2, ++i3;
      if (l_eps) ++i1;
    } else {
      if (l_eps) m.steps[0] = k1, ++i1;
      if (has_mid && mid == MiddleToken::kEps) m.steps[1] = k1, ++i2;
      if (r_eps) m.steps[2] = k1, ++i3;
      if (m == Move3{{k0, k0, k0}}) {
        throw Error(ErrorCode::kInvalidArgument, "move sequence has mismatched projections");
      }
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace

std::vector<Move3> canonicalize_move_sequence(std::span<const Move3> moves) {
  for (const Move3& m : moves) {
    if (move3_index(m) < 0) {
      throw Error(ErrorCode::kInvalidArgument, "illegal move " + move3_name(m));
    }
  }
  if (std::all_of(moves.begin(), moves.end(), is_pure_epsilon)) return staircase(moves);
  return earliest_schedule(moves);
}

// --- grids -------------------------------------------------------------------

namespace {

struct GridStep {
  int symbol;
  std::array<int, 3> delta;
};

std::vector<GridStep> grid_steps(const FilterAutomaton& filter, std::size_t dims) {
  std::vector<GridStep> steps;
  auto add = [&](std::string_view name, std::array<int, 3> delta) {
    const int s = filter.symbol_index(name);
    if (s < 0) {
      throw Error(ErrorCode::kInvalidArgument, "filter lacks grid step " + std::string(name));
    }
    steps.push_back({s, delta});
  };
  if (dims == 2) {
    add("a", {0, 1, 0});
    add("b", {1, 0, 0});
    add("c", {1, 1, 0});
  } else if (dims == 3) {
    for (const Move3& m : kMove3Alphabet) {
      if (!is_pure_epsilon(m)) continue;
      add(move3_name(m), {m.steps[0] == k1, m.steps[1] == k1, m.steps[2] == k1});
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "grids have 2 or 3 dimensions");
  }
  return steps;
}

void enumerate_grid(const FilterAutomaton& f, const std::vector<GridStep>& steps,
                    std::array<int, 3>& remaining, std::vector<int>& path, int state,
                    GridPathCount& count) {
  if (remaining == std::array<int, 3>{0, 0, 0}) {
    ++count.total;
    if (state != FilterAutomaton::kNone) {
      ++count.accepted;
      count.accepted_paths.push_back(path);
    }
    return;
  }
  for (const GridStep& s : steps) {
    bool fits = true;
    for (int i = 0; i < 3; ++i) fits &= remaining[i] >= s.delta[i];
    if (!fits) continue;
    for (int i = 0; i < 3; ++i) remaining[i] -= s.delta[i];
    path.push_back(s.symbol);
    const int next = state == FilterAutomaton::kNone ? state : f.next(state, s.symbol);
    enumerate_grid(f, steps, remaining, path, next, count);
    path.pop_back();
    for (int i = 0; i < 3; ++i) remaining[i] += s.delta[i];
  }
}

}  // namespace

GridPathCount grid_paths(const FilterAutomaton& filter, std::span<const int> displacement) {
  const auto steps = grid_steps(filter, displacement.size());
  std::array<int, 3> remaining{0, 0, 0};
  for (std::size_t i = 0; i < displacement.size(); ++i) {
    if (displacement[i] < 0) throw Error(ErrorCode::kInvalidArgument, "negative displacement");
    remaining[i] = displacement[i];
  }
  GridPathCount count;
  std::vector<int> path;
  enumerate_grid(filter, steps, remaining, path, filter.num_states() > 0 ? 0 : FilterAutomaton::kNone, count);
  return count;
}

bool grid_unique_path_check(const FilterAutomaton& filter, std::span<const int> dims) {
  if (dims.size() != 2 && dims.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument, "grids have 2 or 3 dimensions");
  }
  for (int d : dims) {
    if (d < 0 || d > 5) throw Error(ErrorCode::kInvalidArgument, "grid dimension out of range [0, 5]");
  }
  // The accepted-path count only depends on the displacement between the
  // two points since every grid point starts the filter afresh.
  std::map<std::vector<int>, bool> unique_by_displacement;
  const std::size_t n = dims.size();
  std::vector<int> p(n, 0);
  auto points = [&](auto&& self, std::size_t axis, std::vector<int>& pt, auto&& visit) -> void {
    if (axis == n) {
      visit(pt);
      return;
    }
    for (int v = 0; v <= dims[axis]; ++v) {
      pt[axis] = v;
      self(self, axis + 1, pt, visit);
    }
  };
  bool ok = true;
  points(points, 0, p, [&](const std::vector<int>& from) {
    std::vector<int> q(n, 0);
    points(points, 0, q, [&](const std::vector<int>& to) {
      std::vector<int> delta(n);
      for (std::size_t i = 0; i < n; ++i) {
        delta[i] = to[i] - from[i];
        if (delta[i] < 0) return;
      }
      auto it = unique_by_displacement.find(delta);
      if (it == unique_by_displacement.end()) {
        it = unique_by_displacement.emplace(delta, grid_paths(filter, delta).accepted == 1).first;
      }
      ok &= it->second;
    });
  });
  return ok;
}

}  // namespace wfst
