#include "wfst/bench.hpp"

#include <algorithm>
#include <chrono>

#include "wfst/algorithms.hpp"
#include "wfst/apps.hpp"
#include "wfst/compose2.hpp"
#include "wfst/error.hpp"

namespace wfst {

std::optional<BenchScenario> bench_scenario_from_name(std::string_view name) {
  if (name == "editdist") return BenchScenario::kEditDistance;
  if (name == "kernel") return BenchScenario::kKernel;
  return std::nullopt;
}

std::string_view bench_scenario_name(BenchScenario s) {
  return s == BenchScenario::kKernel ? "kernel" : "editdist";
}

namespace {

constexpr Label kEditAlphabet = 10;
constexpr Label kKernelAlphabet = 4;
constexpr int kKernelOrder = 3;

Transducer bench_acceptor(StateId size, Label alphabet, Semiring sr, std::uint64_t seed) {
  RandomMachineOptions o;
  o.num_states = size;
  o.alphabet_size = alphabet;
  o.eps_prob = 0.0;
  o.density = std::min(1.0, 3.0 / size);
  o.seed = seed;
  o.semiring = sr;
  o.acceptor = true;
  o.spine = true;
  o.unweighted = sr.kind() == SemiringKind::kTropical;
  return random_acyclic(o);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BenchInputs bench_inputs(BenchScenario scenario, std::uint64_t seed, int size) {
  if (size < 2) throw Error(ErrorCode::kInvalidArgument, "bench size must be >= 2");
  if (scenario == BenchScenario::kEditDistance) {
    EditCosts costs;
    costs.transposition = 1.0;
    const Semiring sr = Semiring::tropical();
    return {bench_acceptor(size, kEditAlphabet, sr, seed), edit_transducer(kEditAlphabet, costs),
            bench_acceptor(size, kEditAlphabet, sr, seed ^ 0x5bd1e995ULL)};
  }
  const Semiring sr = Semiring::probability();
  return {bench_acceptor(size, kKernelAlphabet, sr, seed), *ngram_kernel_middle(kKernelAlphabet, kKernelOrder),
          bench_acceptor(size, kKernelAlphabet, sr, seed ^ 0x5bd1e995ULL)};
}

BenchReport run_bench(BenchScenario scenario, std::uint64_t seed, int size, int repetitions) {
  if (repetitions < 1) throw Error(ErrorCode::kInvalidArgument, "bench repetitions must be >= 1");
  const BenchInputs in = bench_inputs(scenario, seed, size);
  BenchReport report{scenario, seed, size, {}};
  auto value_of = [&](const Transducer& t) {
    return scenario == BenchScenario::kEditDistance ? shortest_distance(t) : path_sum(t);
  };

  using Clock = std::chrono::steady_clock;
  auto time_runs = [&](auto&& run) {
    std::vector<double> ms;
    for (int r = 0; r < repetitions; ++r) {
      const auto start = Clock::now();
      run();
      ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - start).count());
    }
    return median(ms);
  };

  {
    BenchEntry e;
    e.method = "cascade";
    Transducer result;
    e.wall_ms = time_runs([&] {
      ComposeCounters first, second;
      const Transducer t12 = compose(in.t1, in.t2, {}, &first);
      result = trim(compose(t12, in.t3, {}, &second));
      e.intermediate_transitions = t12.stats().num_transitions;
      first += second;
      e.counters = first;
    });
    e.result_states = result.num_states();
    e.result_transitions = result.stats().num_transitions;
    e.result_value = value_of(result);
    report.entries.push_back(std::move(e));
  }

  for (Strategy s : {Strategy::kLateral, Strategy::kCentral, Strategy::kCombined}) {
    BenchEntry e;
    e.method = "3way-" + std::string(strategy_name(s));
    Transducer result;
    e.wall_ms = time_runs([&] {
      Compose3Result r = compose3(in.t1, in.t2, in.t3, {s, FilterMode::kSingle});
      result = trim(r.fst);
      e.counters = r.counters;
    });
    e.result_states = result.num_states();
    e.result_transitions = result.stats().num_transitions;
    e.result_value = value_of(result);
    report.entries.push_back(std::move(e));
  }
  return report;
}

nlohmann::json to_json(const BenchReport& report) {
  nlohmann::json runs = nlohmann::json::array();
  for (const BenchEntry& e : report.entries) {
    runs.push_back({
        {"method", e.method},
        {"wall_ms", e.wall_ms},
        {"intermediate_transitions", e.intermediate_transitions},
        {"states_expanded", e.counters.states_expanded},
        {"match_probes", e.counters.match_probes},
        {"transitions_emitted", e.counters.transitions_emitted},
        {"queue_peak", e.counters.queue_peak},
        {"result_states", e.result_states},
        {"result_transitions", e.result_transitions},
        {"result_value", std::isinf(e.result_value) ? nlohmann::json("inf") : nlohmann::json(e.result_value)},
    });
  }
  return {{"scenario", bench_scenario_name(report.scenario)},
          {"seed", report.seed},
          {"size", report.size},
          {"runs", runs}};
}

}  // namespace wfst
