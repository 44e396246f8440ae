#ifndef WFST_TRANSDUCER_HPP_
#define WFST_TRANSDUCER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "wfst/semiring.hpp"

namespace wfst {

using StateId = std::int32_t;
using Label = std::int32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr StateId kNoState = -1;

struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  Weight weight = 0.0;
  StateId nextstate = kNoState;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct TransducerStats {
  std::size_t num_states = 0;
  std::size_t num_transitions = 0;
  std::size_t max_out_degree = 0;

  friend bool operator==(const TransducerStats&, const TransducerStats&) = default;
};

// Weighted transducer with weighted initial and final states. Each state owns
// its outgoing transitions in insertion order. Mutable until freeze(); a
// frozen machine is immutable and safe to share between threads.
class Transducer {
 public:
  explicit Transducer(Semiring semiring = Semiring::tropical()) : semiring_(semiring) {}

  const Semiring& semiring() const { return semiring_; }

  StateId add_state();
  // Adds states until num_states() >= n.
  void reserve_states(StateId n);
  void add_transition(StateId src, const Arc& arc);
  void set_initial(StateId q, Weight w);
  void set_final(StateId q, Weight w);

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  StateId num_states() const { return static_cast<StateId>(arcs_.size()); }
  std::span<const Arc> transitions(StateId q) const;
  std::size_t out_degree(StateId q) const { return transitions(q).size(); }

  bool is_initial(StateId q) const { return !semiring_.is_zero(initial_weight(q)); }
  bool is_final(StateId q) const { return !semiring_.is_zero(final_weight(q)); }
  Weight initial_weight(StateId q) const;
  Weight final_weight(StateId q) const;
  // Initial states in the order they were first declared.
  const std::vector<StateId>& initial_states() const { return initial_order_; }

  // Maintained incrementally; see compute_stats() for the from-scratch route.
  TransducerStats stats() const { return stats_; }

 private:
  void check_state(StateId q) const;
  void check_weight(Weight w) const;
  void check_mutable() const;

  Semiring semiring_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<Weight> initial_;
  std::vector<Weight> final_;
  std::vector<StateId> initial_order_;
  TransducerStats stats_;
  bool frozen_ = false;
};

TransducerStats compute_stats(const Transducer& t);

// Largest label used on either tape (0 for an arc-free machine).
Label max_label(const Transducer& t);

// T(x, y): sum over accepting paths labeled (x, y). Throws kNotRegulated if
// the machine has an epsilon:epsilon cycle.
Weight evaluate(const Transducer& t, std::span<const Label> x, std::span<const Label> y);

// No cycle made only of epsilon:epsilon transitions.
bool is_regulated(const Transducer& t);

// Topological rank of each state with respect to epsilon:epsilon
// transitions, or empty when such a cycle exists.
std::vector<StateId> epsilon_topological_rank(const Transducer& t);

// Single state with x:x self-loops for labels 1..alphabet_size.
Transducer identity(Label alphabet_size, Semiring semiring = Semiring::tropical());

// Swaps the input and output tapes.
Transducer invert(const Transducer& t);

// Linear-chain acceptor for one string, all weights one.
Transducer string_acceptor(std::span<const Label> s, Semiring semiring = Semiring::tropical());

struct RandomMachineOptions {
  StateId num_states = 4;
  Label alphabet_size = 2;
  double eps_prob = 0.2;
  // Probability of a transition between each forward pair of states.
  double density = 0.5;
  std::uint64_t seed = 0;
  Semiring semiring = Semiring::probability();
  bool acceptor = false;
  // When set all weights (arcs, initial, final) are the semiring one.
  bool unweighted = false;
  // When set every state q gets an extra transition to q + 1, so the whole
  // machine is accessible and coaccessible.
  bool spine = false;
};

// Seeded random machine whose transitions only go from lower to higher state
// ids, so it is acyclic and therefore regulated.
Transducer random_acyclic(const RandomMachineOptions& options);
Transducer random_acyclic(StateId num_states, Label alphabet_size, double eps_prob,
                          double density, std::uint64_t seed);

}  // namespace wfst

#endif  // WFST_TRANSDUCER_HPP_
