#ifndef WFST_ALGORITHMS_HPP_
#define WFST_ALGORITHMS_HPP_

#include <map>
#include <utility>
#include <vector>

#include "wfst/transducer.hpp"

namespace wfst {

// Per-state distance from the initial states (lambda included). Tropical
// only; throws kSemiringMismatch otherwise.
std::vector<Weight> shortest_distances(const Transducer& t);

// min over accepting paths of lambda + path weight + rho; +inf if none.
Weight shortest_distance(const Transducer& t);

// Sum over all accepting paths of an acyclic machine. Throws kCyclicInput.
Weight path_sum(const Transducer& t);

// Keeps the states that are both accessible and coaccessible, renumbered in
// their original order.
Transducer trim(const Transducer& t);

using LabelString = std::vector<Label>;
using Relation = std::map<std::pair<LabelString, LabelString>, Weight>;

// Every pair (x, y) with |x|, |y| <= max_len and a non-zero weight, with that
// weight. Throws kNotRegulated on an epsilon:epsilon cycle.
Relation bounded_relation(const Transducer& t, std::size_t max_len);

// Both machines agree within `tol` on every pair of length <= max_len.
// Throws kSemiringMismatch or kNotRegulated.
bool equivalent_by_evaluation(const Transducer& a, const Transducer& b, std::size_t max_len,
                              double tol = kDefaultTolerance);

}  // namespace wfst

#endif  // WFST_ALGORITHMS_HPP_
