#ifndef WFST_APPS_HPP_
#define WFST_APPS_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wfst/compose3.hpp"
#include "wfst/transducer.hpp"

namespace wfst {

struct EditCosts {
  double substitution = 1.0;
  double insertion = 1.0;
  double deletion = 1.0;
  // Adjacent swap ab -> ba; disabled when empty.
  std::optional<double> transposition;

  // Throws kInvalidArgument on a negative or non-finite cost.
  void validate() const;
};

// Single hub state with match, substitution, deletion and insertion loops,
// plus one auxiliary state per ordered pair (a, b), a != b, when
// transpositions are enabled. Tropical.
Transducer edit_transducer(Label alphabet_size, const EditCosts& costs);

// Minimum edit cost between any string of `a1` and any string of `a2`,
// computed as the shortest distance of compose3(a1, edit, a2). +inf when a
// language is empty.
Weight edit_distance(const Transducer& a1, const Transducer& a2, const EditCosts& costs,
                     const Compose3Options& options = {});

// Maps x to each n-gram z it contains (1 <= |z| <= order, or |z| == order
// when `exact`), weighted by the number of occurrences. Probability.
Transducer ngram_count_transducer(Label alphabet_size, int order, bool exact = false);

// count o count^-1, built once per argument triple and shared afterwards.
std::shared_ptr<const Transducer> ngram_kernel_middle(Label alphabet_size, int order, bool exact = false);

// Sum over n-grams z of c_x(z) c_y(z), extended to weighted acyclic
// acceptors. Throws kCyclicInput.
Weight ngram_kernel(const Transducer& a1, const Transducer& a2, int order, bool exact = false,
                    const Compose3Options& options = {});

// Restricted (optimal string alignment) edit distance DP.
double edit_distance_oracle(std::span<const Label> x, std::span<const Label> y, const EditCosts& costs);

// Direct substring counting.
double ngram_kernel_oracle(std::span<const Label> x, std::span<const Label> y, int order,
                           bool exact = false);

// "abc" -> {1, 2, 3}. Throws kInvalidArgument outside 'a'..'z'.
std::vector<Label> letters_to_labels(std::string_view s);

}  // namespace wfst

#endif  // WFST_APPS_HPP_
