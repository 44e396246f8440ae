#ifndef WFST_BENCH_HPP_
#define WFST_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wfst/compose3.hpp"
#include "wfst/transducer.hpp"

namespace wfst {

enum class BenchScenario { kEditDistance, kKernel };

std::optional<BenchScenario> bench_scenario_from_name(std::string_view name);
std::string_view bench_scenario_name(BenchScenario s);

struct BenchEntry {
  std::string method;  // cascade | 3way-lateral | 3way-central | 3way-combined
  double wall_ms = 0.0;
  // |T1 o T2|_E for the cascade, 0 for three-way runs.
  std::uint64_t intermediate_transitions = 0;
  ComposeCounters counters;
  // Size of the trimmed result.
  std::uint64_t result_states = 0;
  std::uint64_t result_transitions = 0;
  // Edit distance or kernel value read off the result.
  double result_value = 0.0;
};

struct BenchReport {
  BenchScenario scenario = BenchScenario::kEditDistance;
  std::uint64_t seed = 0;
  int size = 0;
  std::vector<BenchEntry> entries;
};

struct BenchInputs {
  Transducer t1, t2, t3;
};

// Seeded random acyclic acceptors of `size` states around the scenario's
// middle machine: the edit transducer (alphabet 10, unit costs,
// transpositions) or the order-3 kernel middle (alphabet 4).
BenchInputs bench_inputs(BenchScenario scenario, std::uint64_t seed, int size);

// Times the cascade (T1 o T2) o T3 + trim against compose3 in each strategy,
// sequentially; wall_ms is the median of `repetitions` runs.
BenchReport run_bench(BenchScenario scenario, std::uint64_t seed, int size, int repetitions = 5);

nlohmann::json to_json(const BenchReport& report);

}  // namespace wfst

#endif  // WFST_BENCH_HPP_
