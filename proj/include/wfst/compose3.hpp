#ifndef WFST_COMPOSE3_HPP_
#define WFST_COMPOSE3_HPP_

#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wfst/compose2.hpp"
#include "wfst/filters.hpp"
#include "wfst/label_index.hpp"
#include "wfst/transducer.hpp"

namespace wfst {

// How matches are searched at a state (q1, q2, q3):
//   lateral  - every (e1, e3) pair probes T2's (input, output) index;
//   central  - every e2 probes T1's output index and T3's input index;
//   combined - lateral iff |E[q1]| * |E[q3]| <= |E[q2]|, central otherwise.
enum class Strategy { kLateral, kCentral, kCombined, kAuto };

// Epsilon handling: the left-to-right pair M1/M2 or the single filter W.
enum class FilterMode { kPair, kSingle };

std::optional<Strategy> strategy_from_name(std::string_view name);
std::string_view strategy_name(Strategy s);
std::optional<FilterMode> filter_mode_from_name(std::string_view name);
std::string_view filter_mode_name(FilterMode m);

struct Compose3Options {
  Strategy strategy = Strategy::kCombined;
  FilterMode filter = FilterMode::kSingle;
};

// State of the three-way result. In single mode f1 holds the W state r and
// f2 is 0; in pair mode (f1, f2) are the M1 and M2 states.
struct TripleState {
  StateId q1 = 0;
  StateId q2 = 0;
  StateId q3 = 0;
  int f1 = 0;
  int f2 = 0;

  friend bool operator==(const TripleState&, const TripleState&) = default;
};

struct TripleStateHash {
  std::size_t operator()(const TripleState& s) const noexcept;
};

// One filter-allowed step. A null arc means that machine stays put.
struct MoveCandidate {
  Move3 move;
  const Arc* e1 = nullptr;
  const Arc* e2 = nullptr;
  const Arc* e3 = nullptr;
  TripleState next;
};

// On-demand three-way composition. The three machines must outlive the
// handle. Not thread-safe: expand_state() mutates the memo tables.
class LazyCompose3 {
 public:
  LazyCompose3(const Transducer& t1, const Transducer& t2, const Transducer& t3,
               const Compose3Options& options = {});

  const Semiring& semiring() const { return sr_; }
  const std::vector<StateId>& initial_states() const { return initial_states_; }
  Weight initial_weight(StateId s) const;
  Weight final_weight(StateId s) const;
  const TripleState& tuple(StateId s) const { return tuples_[s]; }
  // States discovered so far (expanded or not).
  StateId num_known_states() const { return static_cast<StateId>(tuples_.size()); }
  bool is_expanded(StateId s) const { return expanded_[s]; }

  // Outgoing transitions of `s`, computed once and memoized.
  std::span<const Arc> expand_state(StateId s);

  // The filter-allowed moves out of `s`, without touching memo or counters.
  std::vector<MoveCandidate> enumerate_moves(StateId s);

  const ComposeCounters& counters() const { return counters_; }
  ComposeCounters& mutable_counters() { return counters_; }

 private:
  template <typename Visit>
  void generate(const TripleState& st, std::uint64_t& probes, Visit&& visit);
  template <typename Visit>
  void generate_lateral(const TripleState& st, std::uint64_t& probes, Visit&& visit);
  template <typename Visit>
  void generate_central(const TripleState& st, std::uint64_t& probes, Visit&& visit);
  template <typename Visit>
  void try_move(const TripleState& st, const Arc* e1, const Arc* e2, const Arc* e3, Visit&& visit);
  StateId intern(const TripleState& st);

  const PairLabelIndex& middle_index();
  const LabelIndex& left_index();
  const LabelIndex& right_index();

  const Transducer& t1_;
  const Transducer& t2_;
  const Transducer& t3_;
  Semiring sr_;
  Strategy strategy_;
  FilterMode mode_;
  const FilterAutomaton& w_;
  FilterAutomaton m1_;
  FilterAutomaton m2_;
  std::optional<PairLabelIndex> middle_index_;
  std::optional<LabelIndex> left_index_;
  std::optional<LabelIndex> right_index_;

  std::unordered_map<TripleState, StateId, TripleStateHash> ids_;
  std::vector<TripleState> tuples_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<bool> expanded_;
  std::vector<StateId> initial_states_;
  std::vector<Weight> initial_weights_;
  ComposeCounters counters_;
};

struct Compose3Result {
  Transducer fst;
  ComposeCounters counters;
};

// Expands every reachable state of `lazy` in FIFO order and copies the
// result out; state ids are preserved.
Transducer materialize(LazyCompose3& lazy, std::uint64_t* queue_peak = nullptr);

// T1 o T2 o T3 without building T1 o T2 or T2 o T3.
Compose3Result compose3(const Transducer& t1, const Transducer& t2, const Transducer& t3,
                        const Compose3Options& options = {});

// The epsilon-free algorithm on plain (q1, q2, q3) triples. Throws
// kEpsilonInput if T1 has an output epsilon, T2 any epsilon, or T3 an input
// epsilon.
Compose3Result compose3_eps_free(const Transducer& t1, const Transducer& t2, const Transducer& t3,
                                 Strategy strategy = Strategy::kCombined);

}  // namespace wfst

#endif  // WFST_COMPOSE3_HPP_
