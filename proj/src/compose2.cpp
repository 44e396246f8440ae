#include "wfst/compose2.hpp"

#include <deque>
#include <unordered_map>
#include <vector>

#include "wfst/error.hpp"
#include "wfst/filters.hpp"
#include "wfst/label_index.hpp"

namespace wfst {

ComposeCounters& ComposeCounters::operator+=(const ComposeCounters& o) {
  states_expanded += o.states_expanded;
  match_probes += o.match_probes;
  transitions_emitted += o.transitions_emitted;
  queue_peak = std::max(queue_peak, o.queue_peak);
  return *this;
}

namespace {

struct PairState {
  StateId q1;
  StateId q2;
  int f;

  friend bool operator==(const PairState&, const PairState&) = default;
};

struct PairStateHash {
  std::size_t operator()(const PairState& s) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(s.q1);
    h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::uint32_t>(s.q2);
    h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::uint32_t>(s.f);
    return std::hash<std::uint64_t>{}(h);
  }
};

class PairComposer {
 public:
  PairComposer(const Transducer& t1, const Transducer& t2, const ComposeOptions& options)
      : t1_(t1), t2_(t2), sr_(t1.semiring()), use_filter_(options.filter == EpsilonFilter::kM),
        m_(filter_m()), out_(t1.semiring()),
        index_left_(t1.stats().max_out_degree >= t2.stats().max_out_degree),
        index_(index_left_ ? LabelIndex(t1, Side::kOutput) : LabelIndex(t2, Side::kInput)) {}

  Transducer run(ComposeCounters& counters) {
    for (StateId i1 : t1_.initial_states()) {
      for (StateId i2 : t2_.initial_states()) {
        const StateId s = intern({i1, i2, 0});
        out_.set_initial(s, sr_.times(t1_.initial_weight(i1), t2_.initial_weight(i2)));
      }
    }
    while (!queue_.empty()) {
      counters.queue_peak = std::max<std::uint64_t>(counters.queue_peak, queue_.size());
      const StateId s = queue_.front();
      queue_.pop_front();
      expand(s, counters);
    }
    return std::move(out_);
  }

 private:
  // Filter state after `move` from `f`, or kNone when blocked.
  int advance(int f, Move2 move) const {
    if (!use_filter_) return 0;
    return m_.next(f, static_cast<int>(move));
  }

  void expand(StateId s, ComposeCounters& counters) {
    const PairState st = states_[s];
    ++counters.states_expanded;
    if (t1_.is_final(st.q1) && t2_.is_final(st.q2)) {
      out_.set_final(s, sr_.times(t1_.final_weight(st.q1), t2_.final_weight(st.q2)));
    }
    const auto arcs1 = t1_.transitions(st.q1);
    const auto arcs2 = t2_.transitions(st.q2);
    auto emit = [&](Label in, Label out, Weight w, StateId n1, StateId n2, int f) {
      out_.add_transition(s, {in, out, w, intern({n1, n2, f})});
      ++counters.transitions_emitted;
    };

    // Epsilon-side transitions: output epsilons of T1 and input epsilons of T2.
    std::vector<const Arc*> eps1, eps2;
    if (index_left_) {
      for (std::uint32_t i : index_.lookup(st.q1, kEpsilon)) eps1.push_back(&arcs1[i]);
      for (const Arc& a : arcs2) {
        if (a.ilabel == kEpsilon) eps2.push_back(&a);
      }
    } else {
      for (const Arc& a : arcs1) {
        if (a.olabel == kEpsilon) eps1.push_back(&a);
      }
      for (std::uint32_t i : index_.lookup(st.q2, kEpsilon)) eps2.push_back(&arcs2[i]);
    }

    // x: non-epsilon matches, driven by the machine that is not indexed.
    const int fx = advance(st.f, Move2::kX);
    if (index_left_) {
      for (const Arc& e2 : arcs2) {
        if (e2.ilabel == kEpsilon) continue;
        ++counters.match_probes;
        for (std::uint32_t i : index_.lookup(st.q1, e2.ilabel)) {
          const Arc& e1 = arcs1[i];
          emit(e1.ilabel, e2.olabel, sr_.times(e1.weight, e2.weight), e1.nextstate, e2.nextstate, fx);
        }
      }
    } else {
      for (const Arc& e1 : arcs1) {
        if (e1.olabel == kEpsilon) continue;
        ++counters.match_probes;
        for (std::uint32_t i : index_.lookup(st.q2, e1.olabel)) {
          const Arc& e2 = arcs2[i];
          emit(e1.ilabel, e2.olabel, sr_.times(e1.weight, e2.weight), e1.nextstate, e2.nextstate, fx);
        }
      }
    }
    ++counters.match_probes;  // epsilon bucket lookup

    // c: both advance on epsilon.
    if (const int fc = advance(st.f, Move2::kC); fc != FilterAutomaton::kNone) {
      for (const Arc* e1 : eps1) {
        for (const Arc* e2 : eps2) {
          emit(e1->ilabel, e2->olabel, sr_.times(e1->weight, e2->weight), e1->nextstate, e2->nextstate, fc);
        }
      }
    }
    // a: T1 stays, T2 reads an input epsilon.
    if (const int fa = advance(st.f, Move2::kA); fa != FilterAutomaton::kNone) {
      for (const Arc* e2 : eps2) emit(kEpsilon, e2->olabel, e2->weight, st.q1, e2->nextstate, fa);
    }
    // b: T1 reads an output epsilon, T2 stays.
    if (const int fb = advance(st.f, Move2::kB); fb != FilterAutomaton::kNone) {
      for (const Arc* e1 : eps1) emit(e1->ilabel, kEpsilon, e1->weight, e1->nextstate, st.q2, fb);
    }
  }

  StateId intern(const PairState& st) {
    auto [it, inserted] = ids_.try_emplace(st, static_cast<StateId>(states_.size()));
    if (inserted) {
      states_.push_back(st);
      out_.add_state();
      queue_.push_back(it->second);
    }
    return it->second;
  }

  const Transducer& t1_;
  const Transducer& t2_;
  Semiring sr_;
  bool use_filter_;
  FilterAutomaton m_;
  Transducer out_;
  bool index_left_;
  LabelIndex index_;
  std::unordered_map<PairState, StateId, PairStateHash> ids_;
  std::vector<PairState> states_;
  std::deque<StateId> queue_;
};

}  // namespace

Transducer compose(const Transducer& t1, const Transducer& t2, const ComposeOptions& options,
                   ComposeCounters* counters) {
  if (!(t1.semiring() == t2.semiring())) {
    throw Error(ErrorCode::kSemiringMismatch, "compose: machines use different semirings");
  }
  ComposeCounters local;
  PairComposer composer(t1, t2, options);
  Transducer out = composer.run(local);
  if (counters != nullptr) *counters = local;
  return out;
}

}  // namespace wfst
