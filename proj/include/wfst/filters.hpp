#ifndef WFST_FILTERS_HPP_
#define WFST_FILTERS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wfst {

// Deterministic filter over a small move alphabet. State 0 is initial and
// every state is accepting; a missing transition blocks the move.
class FilterAutomaton {
 public:
  static constexpr int kNone = -1;

  FilterAutomaton() = default;
  explicit FilterAutomaton(std::vector<std::string> symbols);

  int add_state();
  void set_transition(int state, int symbol, int target);

  int next(int state, int symbol) const { return table_[state][symbol]; }
  int num_states() const { return static_cast<int>(table_.size()); }
  int num_symbols() const { return static_cast<int>(symbols_.size()); }
  std::size_t num_transitions() const;
  const std::vector<std::string>& symbols() const { return symbols_; }
  // -1 when the name is not in the alphabet.
  int symbol_index(std::string_view name) const;

  // Runs from state 0; nullopt when some move is blocked.
  std::optional<int> run(std::span<const int> sequence) const;
  bool accepts(std::span<const int> sequence) const { return run(sequence).has_value(); }
  bool accepts_names(std::span<const std::string> names) const;

 private:
  std::vector<std::string> symbols_;
  std::vector<std::vector<int>> table_;
};

// Automaton accepting exactly the sequences over `alphabet` containing none
// of `forbidden_factors` (each of length 1 or 2, given as symbol indices),
// built by subset construction of the containment automaton, complementation,
// trimming and minimization. States are numbered breadth-first from 0 in
// alphabet order.
FilterAutomaton derive_filter(std::vector<std::string> alphabet,
                              const std::vector<std::vector<int>>& forbidden_factors);

// Trims unreachable states, merges equivalent ones and renumbers breadth-first.
FilterAutomaton minimize(const FilterAutomaton& filter);

// Structural isomorphism preserving symbol names. A symbol missing from one
// alphabet must have no transitions in the other.
bool isomorphic(const FilterAutomaton& a, const FilterAutomaton& b);

std::string to_dot(const FilterAutomaton& filter, std::string_view name = "filter");

// --- two-way moves -------------------------------------------------------
//
// a = (e1:e1) left machine stays, right machine reads an input epsilon
// b = (e2:e2) left machine reads an output epsilon, right machine stays
// c = (e2:e1) both advance on epsilon
// x = match on a non-epsilon symbol
enum class Move2 : std::uint8_t { kA = 0, kB = 1, kC = 2, kX = 3 };

inline constexpr int kM1StayEps0 = 4;  // (e1:e0) in M1
inline constexpr int kM2Eps0Eps2 = 4;  // (e0:e2) in M2
inline constexpr int kM2Eps0Eps1 = 5;  // (e0:e1) in M2

FilterAutomaton filter_m();
FilterAutomaton filter_m1();
FilterAutomaton filter_m2();

// Forbidden factors ab, ba, ac, bc over {a, b, c, x}.
std::vector<std::vector<int>> filter_m_forbidden_factors();

// --- three-way moves -----------------------------------------------------

enum class Step : std::uint8_t { kStay = 0, kEps = 1, kMatch = 2 };

struct Move3 {
  std::array<Step, 3> steps{};

  friend bool operator==(const Move3&, const Move3&) = default;
};

// Parses "0x1"-style names; nullopt on malformed input.
std::optional<Move3> parse_move3(std::string_view name);
std::string move3_name(const Move3& m);

// The twelve legal moves: {0,1}^3 minus (0,0,0), xx0, xx1, 0xx, 1xx, xxx.
std::span<const Move3> move3_alphabet();
// Index into move3_alphabet(), or -1 for an illegal triplet.
int move3_index(const Move3& m);
bool is_pure_epsilon(const Move3& m);

// The legal moves plus (0,0,0), used to express the "never stay everywhere"
// rule as a forbidden single-symbol factor.
std::vector<std::string> move3_derivation_alphabet();
std::vector<std::vector<int>> filter_w_forbidden_factors();

// Three-way filter W over move3_alphabet().
const FilterAutomaton& filter_w();

// Symbols fed to M1 (first) and M2 (second) for a three-way move when the
// epsilon markings are simulated.
struct PairSymbols {
  int m1;
  int m2;
};
PairSymbols pair_symbols(const Move3& m);

// M1 x M2 seen as one automaton over move3_alphabet(); reachable part only.
FilterAutomaton pair_filter_product();

// Representative of the equivalence class of `moves`: one-moves and
// match-moves taken as early as possible. Throws kInvalidArgument on an
// illegal symbol or an inconsistent sequence.
std::vector<Move3> canonicalize_move_sequence(std::span<const Move3> moves);

// --- epsilon grids ---------------------------------------------------------

struct GridPathCount {
  std::size_t total = 0;
  std::size_t accepted = 0;
  std::vector<std::vector<int>> accepted_paths;
};

// Enumerates the monotone pure-epsilon step sequences covering
// `displacement` (2 or 3 coordinates) and runs each through `filter` from
// state 0. Two-way steps are a=(0,1), b=(1,0), c=(1,1); three-way steps are
// the {0,1}^3 moves.
GridPathCount grid_paths(const FilterAutomaton& filter, std::span<const int> displacement);

// For every comparable pair of points of the grid [0..d1] x ... checks that
// exactly one step sequence between them is accepted. Dimensions above 5 are
// rejected.
bool grid_unique_path_check(const FilterAutomaton& filter, std::span<const int> dims);

}  // namespace wfst

#endif  // WFST_FILTERS_HPP_
