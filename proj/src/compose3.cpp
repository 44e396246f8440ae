#include "wfst/compose3.hpp"

#include <deque>

#include "wfst/error.hpp"

namespace wfst {

std::optional<Strategy> strategy_from_name(std::string_view name) {
  if (name == "lateral") return Strategy::kLateral;
  if (name == "central") return Strategy::kCentral;
  if (name == "combined") return Strategy::kCombined;
  if (name == "auto") return Strategy::kAuto;
  return std::nullopt;
}

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kLateral: return "lateral";
    case Strategy::kCentral: return "central";
    case Strategy::kCombined: return "combined";
    case Strategy::kAuto: return "auto";
  }
  return "combined";
}

std::optional<FilterMode> filter_mode_from_name(std::string_view name) {
  if (name == "pair") return FilterMode::kPair;
  if (name == "single") return FilterMode::kSingle;
  return std::nullopt;
}

std::string_view filter_mode_name(FilterMode m) { return m == FilterMode::kPair ? "pair" : "single"; }

std::size_t TripleStateHash::operator()(const TripleState& s) const noexcept {
  std::uint64_t h = static_cast<std::uint32_t>(s.q1);
  h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::uint32_t>(s.q2);
  h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::uint32_t>(s.q3);
  h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::uint32_t>(s.f1 * 16 + s.f2);
  return std::hash<std::uint64_t>{}(h);
}

namespace {

void check_semirings(const Transducer& t1, const Transducer& t2, const Transducer& t3) {
  if (!(t1.semiring() == t2.semiring()) || !(t2.semiring() == t3.semiring())) {
    throw Error(ErrorCode::kSemiringMismatch, "compose3: machines use different semirings");
  }
}

Strategy resolve(Strategy s) { return s == Strategy::kAuto ? Strategy::kCombined : s; }

bool use_lateral(Strategy s, std::size_t d1, std::size_t d2, std::size_t d3) {
  switch (s) {
    case Strategy::kLateral: return true;
    case Strategy::kCentral: return false;
    default: return d1 * d3 <= d2;
  }
}

}  // namespace

LazyCompose3::LazyCompose3(const Transducer& t1, const Transducer& t2, const Transducer& t3,
                           const Compose3Options& options)
    : t1_(t1), t2_(t2), t3_(t3), sr_(t1.semiring()), strategy_(resolve(options.strategy)),
      mode_(options.filter), w_(filter_w()), m1_(filter_m1()), m2_(filter_m2()) {
  check_semirings(t1, t2, t3);
  for (StateId i1 : t1.initial_states()) {
    for (StateId i2 : t2.initial_states()) {
      for (StateId i3 : t3.initial_states()) {
        const StateId s = intern({i1, i2, i3, 0, 0});
        initial_states_.push_back(s);
        initial_weights_.resize(tuples_.size(), sr_.zero());
        initial_weights_[s] =
            sr_.times(sr_.times(t1.initial_weight(i1), t2.initial_weight(i2)), t3.initial_weight(i3));
      }
    }
  }
}

Weight LazyCompose3::initial_weight(StateId s) const {
  return static_cast<std::size_t>(s) < initial_weights_.size() ? initial_weights_[s] : sr_.zero();
}

Weight LazyCompose3::final_weight(StateId s) const {
  const TripleState& st = tuples_[s];
  if (!t1_.is_final(st.q1) || !t2_.is_final(st.q2) || !t3_.is_final(st.q3)) return sr_.zero();
  return sr_.times(sr_.times(t1_.final_weight(st.q1), t2_.final_weight(st.q2)), t3_.final_weight(st.q3));
}

StateId LazyCompose3::intern(const TripleState& st) {
  auto [it, inserted] = ids_.try_emplace(st, static_cast<StateId>(tuples_.size()));
  if (inserted) {
    tuples_.push_back(st);
    arcs_.emplace_back();
    expanded_.push_back(false);
  }
  return it->second;
}

const PairLabelIndex& LazyCompose3::middle_index() {
  if (!middle_index_) middle_index_.emplace(t2_);
  return *middle_index_;
}

const LabelIndex& LazyCompose3::left_index() {
  if (!left_index_) left_index_.emplace(t1_, Side::kOutput);
  return *left_index_;
}

const LabelIndex& LazyCompose3::right_index() {
  if (!right_index_) right_index_.emplace(t3_, Side::kInput);
  return *right_index_;
}

// Classifies the arc triple into a move, applies the selected filter and
// hands allowed moves to `visit`.
template <typename Visit>
void LazyCompose3::try_move(const TripleState& st, const Arc* e1, const Arc* e2, const Arc* e3,
                            Visit&& visit) {
  Move3 m;
  m.steps[0] = e1 == nullptr ? Step::kStay : e1->olabel == kEpsilon ? Step::kEps : Step::kMatch;
  m.steps[1] = e2 == nullptr                                               ? Step::kStay
               : e2->ilabel == kEpsilon && e2->olabel == kEpsilon ? Step::kEps
                                                                           : Step::kMatch;
  m.steps[2] = e3 == nullptr ? Step::kStay : e3->ilabel == kEpsilon ? Step::kEps : Step::kMatch;

  MoveCandidate c{m, e1, e2, e3, st};
  if (mode_ == FilterMode::kSingle) {
    c.next.f1 = w_.next(st.f1, move3_index(m));
    c.next.f2 = 0;
    if (c.next.f1 == FilterAutomaton::kNone) return;
  } else {
    const PairSymbols ps = pair_symbols(m);
    c.next.f1 = m1_.next(st.f1, ps.m1);
    c.next.f2 = m2_.next(st.f2, ps.m2);
    if (c.next.f1 == FilterAutomaton::kNone || c.next.f2 == FilterAutomaton::kNone) return;
  }
  if (e1 != nullptr) c.next.q1 = e1->nextstate;
  if (e2 != nullptr) c.next.q2 = e2->nextstate;
  if (e3 != nullptr) c.next.q3 = e3->nextstate;
  visit(c);
}

template <typename Visit>
void LazyCompose3::generate_lateral(const TripleState& st, std::uint64_t& probes, Visit&& visit) {
  const auto arcs1 = t1_.transitions(st.q1);
  const auto arcs2 = t2_.transitions(st.q2);
  const auto arcs3 = t3_.transitions(st.q3);
  const PairLabelIndex& index = middle_index();
  // Position -1 stands for the virtual stay loop of that machine.
  for (int i1 = -1; i1 < static_cast<int>(arcs1.size()); ++i1) {
    const Arc* e1 = i1 < 0 ? nullptr : &arcs1[i1];
    const Label key1 = e1 == nullptr ? kEpsilon : e1->olabel;
    for (int i3 = -1; i3 < static_cast<int>(arcs3.size()); ++i3) {
      const Arc* e3 = i3 < 0 ? nullptr : &arcs3[i3];
      const Label key3 = e3 == nullptr ? kEpsilon : e3->ilabel;
      ++probes;
      for (std::uint32_t p : index.lookup(st.q2, key1, key3)) try_move(st, e1, &arcs2[p], e3, visit);
      if (key1 == kEpsilon && key3 == kEpsilon && (e1 != nullptr || e3 != nullptr)) {
        try_move(st, e1, nullptr, e3, visit);
      }
    }
  }
}

template <typename Visit>
void LazyCompose3::generate_central(const TripleState& st, std::uint64_t& probes, Visit&& visit) {
  const auto arcs1 = t1_.transitions(st.q1);
  const auto arcs2 = t2_.transitions(st.q2);
  const auto arcs3 = t3_.transitions(st.q3);
  const LabelIndex& left = left_index();
  const LabelIndex& right = right_index();
  const auto eps1 = left.lookup(st.q1, kEpsilon);
  const auto eps3 = right.lookup(st.q3, kEpsilon);

  // Candidates on one side: matching arcs for a real label, otherwise the
  // stay loop followed by the epsilon arcs.
  auto for_each_side = [](std::span<const Arc> arcs, std::span<const std::uint32_t> bucket, bool with_stay,
                          auto&& f) {
    if (with_stay) f(static_cast<const Arc*>(nullptr));
    for (std::uint32_t p : bucket) f(&arcs[p]);
  };

  for (int i2 = -1; i2 < static_cast<int>(arcs2.size()); ++i2) {
    ++probes;
    if (i2 < 0) {
      for_each_side(arcs1, eps1, true, [&](const Arc* e1) {
        for_each_side(arcs3, eps3, true, [&](const Arc* e3) {
          if (e1 != nullptr || e3 != nullptr) try_move(st, e1, nullptr, e3, visit);
        });
      });
      continue;
    }
    const Arc* e2 = &arcs2[i2];
    const bool in_eps = e2->ilabel == kEpsilon;
    const bool out_eps = e2->olabel == kEpsilon;
    const auto bucket1 = in_eps ? eps1 : left.lookup(st.q1, e2->ilabel);
    const auto bucket3 = out_eps ? eps3 : right.lookup(st.q3, e2->olabel);
    for_each_side(arcs1, bucket1, in_eps, [&](const Arc* e1) {
      for_each_side(arcs3, bucket3, out_eps, [&](const Arc* e3) { try_move(st, e1, e2, e3, visit); });
    });
  }
}

template <typename Visit>
void LazyCompose3::generate(const TripleState& st, std::uint64_t& probes, Visit&& visit) {
  if (use_lateral(strategy_, t1_.out_degree(st.q1), t2_.out_degree(st.q2), t3_.out_degree(st.q3))) {
    generate_lateral(st, probes, visit);
  } else {
    generate_central(st, probes, visit);
  }
}

std::vector<MoveCandidate> LazyCompose3::enumerate_moves(StateId s) {
  std::vector<MoveCandidate> moves;
  std::uint64_t probes = 0;
  generate(tuples_[s], probes, [&](const MoveCandidate& c) { moves.push_back(c); });
  return moves;
}

std::span<const Arc> LazyCompose3::expand_state(StateId s) {
  if (expanded_[s]) return arcs_[s];
  const TripleState st = tuples_[s];
  std::vector<Arc> out;
  generate(st, counters_.match_probes, [&](const MoveCandidate& c) {
    Weight w = sr_.one();
    if (c.e1 != nullptr) w = sr_.times(w, c.e1->weight);
    if (c.e2 != nullptr) w = sr_.times(w, c.e2->weight);
    if (c.e3 != nullptr) w = sr_.times(w, c.e3->weight);
    const Label in = c.e1 == nullptr ? kEpsilon : c.e1->ilabel;
    const Label outl = c.e3 == nullptr ? kEpsilon : c.e3->olabel;
    out.push_back({in, outl, w, intern(c.next)});
  });
  ++counters_.states_expanded;
  counters_.transitions_emitted += out.size();
  arcs_[s] = std::move(out);
  expanded_[s] = true;
  return arcs_[s];
}

Transducer materialize(LazyCompose3& lazy, std::uint64_t* queue_peak) {
  std::deque<StateId> queue;
  std::vector<bool> queued;
  auto push = [&](StateId s) {
    if (static_cast<std::size_t>(s) >= queued.size()) queued.resize(s + 1, false);
    if (queued[s]) return;
    queued[s] = true;
    queue.push_back(s);
  };
  for (StateId s : lazy.initial_states()) push(s);
  std::uint64_t peak = 0;
  while (!queue.empty()) {
    peak = std::max<std::uint64_t>(peak, queue.size());
    const StateId s = queue.front();
    queue.pop_front();
    for (const Arc& a : lazy.expand_state(s)) push(a.nextstate);
  }
  if (queue_peak != nullptr) *queue_peak = peak;

  Transducer out(lazy.semiring());
  out.reserve_states(lazy.num_known_states());
  for (StateId s = 0; s < lazy.num_known_states(); ++s) {
    for (const Arc& a : lazy.expand_state(s)) out.add_transition(s, a);
    const Weight rho = lazy.final_weight(s);
    if (!lazy.semiring().is_zero(rho)) out.set_final(s, rho);
  }
  for (StateId s : lazy.initial_states()) out.set_initial(s, lazy.initial_weight(s));
  return out;
}

Compose3Result compose3(const Transducer& t1, const Transducer& t2, const Transducer& t3,
                        const Compose3Options& options) {
  LazyCompose3 lazy(t1, t2, t3, options);
  std::uint64_t peak = 0;
  Transducer fst = materialize(lazy, &peak);
  ComposeCounters counters = lazy.counters();
  counters.queue_peak = peak;
  return {std::move(fst), counters};
}

// --- epsilon-free transcription ---------------------------------------------

namespace {

struct Triple {
  StateId q1, q2, q3;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept {
    return TripleStateHash{}({t.q1, t.q2, t.q3, 0, 0});
  }
};

void require_eps_free(const Transducer& t, bool check_in, bool check_out, const char* which) {
  for (StateId q = 0; q < t.num_states(); ++q) {
    for (const Arc& a : t.transitions(q)) {
      if ((check_in && a.ilabel == kEpsilon) || (check_out && a.olabel == kEpsilon)) {
        throw Error(ErrorCode::kEpsilonInput,
                    std::string("compose3_eps_free: ") + which + " has an epsilon label; use compose3");
      }
    }
  }
}

}  // namespace

Compose3Result compose3_eps_free(const Transducer& t1, const Transducer& t2, const Transducer& t3,
                                 Strategy strategy) {
  check_semirings(t1, t2, t3);
  require_eps_free(t1, false, true, "T1");
  require_eps_free(t2, true, true, "T2");
  require_eps_free(t3, true, false, "T3");
  strategy = resolve(strategy);
  const Semiring sr = t1.semiring();

  Transducer out(sr);
  ComposeCounters counters;
  std::unordered_map<Triple, StateId, TripleHash> q;
  std::vector<Triple> triples;
  std::deque<StateId> s;
  auto find_or_enqueue = [&](Triple t) {
    auto [it, inserted] = q.try_emplace(t, static_cast<StateId>(triples.size()));
    if (inserted) {
      triples.push_back(t);
      out.add_state();
      s.push_back(it->second);
    }
    return it->second;
  };
  for (StateId i1 : t1.initial_states()) {
    for (StateId i2 : t2.initial_states()) {
      for (StateId i3 : t3.initial_states()) find_or_enqueue({i1, i2, i3});
    }
  }

  std::optional<PairLabelIndex> middle;
  std::optional<LabelIndex> left, right;
  while (!s.empty()) {
    counters.queue_peak = std::max<std::uint64_t>(counters.queue_peak, s.size());
    const StateId id = s.front();
    s.pop_front();
    ++counters.states_expanded;
    const Triple t = triples[id];
    if (t1.is_initial(t.q1) && t2.is_initial(t.q2) && t3.is_initial(t.q3)) {
      out.set_initial(id, sr.times(sr.times(t1.initial_weight(t.q1), t2.initial_weight(t.q2)),
                                   t3.initial_weight(t.q3)));
    }
    if (t1.is_final(t.q1) && t2.is_final(t.q2) && t3.is_final(t.q3)) {
      out.set_final(id, sr.times(sr.times(t1.final_weight(t.q1), t2.final_weight(t.q2)), t3.final_weight(t.q3)));
    }
    const auto arcs1 = t1.transitions(t.q1);
    const auto arcs2 = t2.transitions(t.q2);
    const auto arcs3 = t3.transitions(t.q3);
    auto emit = [&](const Arc& e1, const Arc& e2, const Arc& e3) {
      const StateId next = find_or_enqueue({e1.nextstate, e2.nextstate, e3.nextstate});
      out.add_transition(id, {e1.ilabel, e3.olabel, sr.times(sr.times(e1.weight, e2.weight), e3.weight), next});
      ++counters.transitions_emitted;
    };
    if (use_lateral(strategy, arcs1.size(), arcs2.size(), arcs3.size())) {
      if (!middle) middle.emplace(t2);
      for (const Arc& e1 : arcs1) {
        for (const Arc& e3 : arcs3) {
          ++counters.match_probes;
          for (std::uint32_t p : middle->lookup(t.q2, e1.olabel, e3.ilabel)) emit(e1, arcs2[p], e3);
        }
      }
    } else {
      if (!left) left.emplace(t1, Side::kOutput);
      if (!right) right.emplace(t3, Side::kInput);
      for (const Arc& e2 : arcs2) {
        ++counters.match_probes;
        for (std::uint32_t p1 : left->lookup(t.q1, e2.ilabel)) {
          for (std::uint32_t p3 : right->lookup(t.q3, e2.olabel)) emit(arcs1[p1], e2, arcs3[p3]);
        }
      }
    }
  }
  return {std::move(out), counters};
}

}  // namespace wfst
