#ifndef WFST_COMPOSE2_HPP_
#define WFST_COMPOSE2_HPP_

#include <cstdint>

#include "wfst/transducer.hpp"

namespace wfst {

// Observable cost of a composition run.
struct ComposeCounters {
  std::uint64_t states_expanded = 0;
  // Index lookups (or candidate arcs scanned) while searching for matches.
  std::uint64_t match_probes = 0;
  std::uint64_t transitions_emitted = 0;
  std::uint64_t queue_peak = 0;

  ComposeCounters& operator+=(const ComposeCounters& o);
  friend bool operator==(const ComposeCounters&, const ComposeCounters&) = default;
};

enum class EpsilonFilter {
  kM,
  // Every epsilon interleaving is kept. Only meaningful for idempotent
  // semirings or for demonstrating path over-counting.
  kNone,
};

struct ComposeOptions {
  EpsilonFilter filter = EpsilonFilter::kM;
};

// T1 o T2 over their shared semiring. Only states reachable from the initial
// pairs are built; dead ends are kept (see trim()). Throws
// kSemiringMismatch.
Transducer compose(const Transducer& t1, const Transducer& t2, const ComposeOptions& options = {},
                   ComposeCounters* counters = nullptr);

}  // namespace wfst

#endif  // WFST_COMPOSE2_HPP_
