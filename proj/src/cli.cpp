#include "wfst/cli.hpp"

#include <algorithm>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "wfst/algorithms.hpp"
#include "wfst/apps.hpp"
#include "wfst/bench.hpp"
#include "wfst/compose2.hpp"
#include "wfst/compose3.hpp"
#include "wfst/error.hpp"
#include "wfst/filters.hpp"
#include "wfst/text_io.hpp"

namespace wfst {

namespace {

struct Loader {
  std::istream& in;
  bool stdin_used = false;

  Transducer operator()(const std::string& path, Semiring sr) {
    if (path != "-") return read_text(path, sr);
    if (stdin_used) throw Error(ErrorCode::kInvalidArgument, "stdin ('-') can be used only once");
    stdin_used = true;
    return read_text(in, sr);
  }
};

template <typename Enum>
CLI::Validator enum_validator(std::optional<Enum> (*parse)(std::string_view), std::string name) {
  return CLI::Validator(
      [parse, name](std::string& s) { return parse(s) ? std::string() : "unknown " + name + " '" + s + "'"; },
      name);
}

void print_counters(const ComposeCounters& c, std::ostream& os) {
  os << "states_expanded\t" << c.states_expanded << "\nmatch_probes\t" << c.match_probes
     << "\ntransitions_emitted\t" << c.transitions_emitted << "\nqueue_peak\t" << c.queue_peak << '\n';
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app("Weighted transducer composition tool", "wfst");
  app.require_subcommand(1);

  std::string semiring_name = "tropical";
  app.add_option("--semiring", semiring_name, "Semiring for compose, compose3 and info")
      ->check(enum_validator(&semiring_from_name, "semiring"));

  std::vector<std::string> paths;

  auto* compose_cmd = app.add_subcommand("compose", "Pairwise composition A o B");
  compose_cmd->add_option("machines", paths, "Two input machines ('-' for stdin)")->expected(2)->required();
  bool no_filter = false;
  compose_cmd->add_flag("--no-filter", no_filter, "Keep every epsilon interleaving (for demonstrations)");
  bool show_stats = false;
  compose_cmd->add_flag("--stats", show_stats, "Print counters on stderr");

  auto* compose3_cmd = app.add_subcommand("compose3", "Three-way composition A o B o C");
  compose3_cmd->add_option("machines", paths, "Three input machines ('-' for stdin)")->expected(3)->required();
  std::string strategy_arg = "combined";
  std::string filter_arg = "single";
  bool lazy = false;
  compose3_cmd->add_option("--strategy", strategy_arg, "lateral, central or combined")
      ->check(enum_validator(&strategy_from_name, "strategy"));
  compose3_cmd->add_option("--filter", filter_arg, "pair or single")
      ->check(enum_validator(&filter_mode_from_name, "filter"));
  compose3_cmd->add_flag("--lazy", lazy, "Expand states on demand and write only the trimmed reachable part");
  compose3_cmd->add_flag("--stats", show_stats, "Print counters on stderr");

  auto* edit_cmd = app.add_subcommand("editdist", "Edit distance between two tropical acceptors");
  edit_cmd->add_option("acceptors", paths, "Two input acceptors ('-' for stdin)")->expected(2)->required();
  EditCosts costs;
  double transpose = -1.0;
  edit_cmd->add_option("--sub", costs.substitution, "Substitution cost")->check(CLI::NonNegativeNumber);
  edit_cmd->add_option("--ins", costs.insertion, "Insertion cost")->check(CLI::NonNegativeNumber);
  edit_cmd->add_option("--del", costs.deletion, "Deletion cost")->check(CLI::NonNegativeNumber);
  auto* transpose_opt =
      edit_cmd->add_option("--transpose", transpose, "Adjacent transposition cost")->check(CLI::NonNegativeNumber);

  auto* kernel_cmd = app.add_subcommand("kernel", "n-gram kernel between two probability acceptors");
  kernel_cmd->add_option("acceptors", paths, "Two input acceptors ('-' for stdin)")->expected(2)->required();
  int order = 0;
  bool exact = false;
  kernel_cmd->add_option("--order", order, "Largest n-gram order")->required()->check(CLI::Range(1, 10));
  kernel_cmd->add_flag("--exact", exact, "Count only n-grams of exactly that order");

  auto* bench_cmd = app.add_subcommand("bench", "Cascade versus three-way composition");
  std::string scenario_arg = "editdist";
  std::uint64_t seed = 1;
  int size = 50;
  int reps = 5;
  bool json = false;
  bench_cmd->add_option("--scenario", scenario_arg, "editdist or kernel")
      ->check(enum_validator(&bench_scenario_from_name, "scenario"));
  bench_cmd->add_option("--seed", seed, "Random seed");
  bench_cmd->add_option("--size", size, "States per random acceptor")->check(CLI::Range(2, 100000));
  bench_cmd->add_option("--reps", reps, "Timing repetitions")->check(CLI::Range(1, 1000));
  bench_cmd->add_flag("--json", json, "Emit the report as JSON");

  auto* info_cmd = app.add_subcommand("info", "Statistics of a machine or a built-in filter");
  info_cmd->add_option("machine", paths, "Input machine ('-' for stdin)")->expected(0, 1);
  std::string filter_name;
  auto* filter_opt = info_cmd->add_option("--filter", filter_name, "Built-in filter: m, m1, m2, w or pair")
                         ->check(CLI::IsMember({"m", "m1", "m2", "w", "pair"}));
  bool dot = false;
  info_cmd->add_flag("--dot", dot, "Print Graphviz instead of statistics");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const Semiring sr = *semiring_from_name(semiring_name);
    Loader load{in};
    if (compose_cmd->parsed()) {
      const Transducer a = load(paths[0], sr), b = load(paths[1], sr);
      ComposeCounters counters;
      const Transducer c =
          compose(a, b, {no_filter ? EpsilonFilter::kNone : EpsilonFilter::kM}, &counters);
      write_text(c, out);
      if (show_stats) print_counters(counters, err);
    } else if (compose3_cmd->parsed()) {
      const Transducer a = load(paths[0], sr), b = load(paths[1], sr), c = load(paths[2], sr);
      const Compose3Options options{*strategy_from_name(strategy_arg), *filter_mode_from_name(filter_arg)};
      if (lazy) {
        LazyCompose3 composed(a, b, c, options);
        std::uint64_t peak = 0;
        const Transducer result = trim(materialize(composed, &peak));
        write_text(result, out);
        ComposeCounters counters = composed.counters();
        counters.queue_peak = peak;
        if (show_stats) print_counters(counters, err);
      } else {
        const Compose3Result r = compose3(a, b, c, options);
        write_text(r.fst, out);
        if (show_stats) print_counters(r.counters, err);
      }
    } else if (edit_cmd->parsed()) {
      const Semiring trop = Semiring::tropical();
      const Transducer a = load(paths[0], trop), b = load(paths[1], trop);
      if (transpose_opt->count() > 0) costs.transposition = transpose;
      out << format_weight(edit_distance(a, b, costs)) << '\n';
    } else if (kernel_cmd->parsed()) {
      const Semiring prob = Semiring::probability();
      const Transducer a = load(paths[0], prob), b = load(paths[1], prob);
      out << format_weight(ngram_kernel(a, b, order, exact)) << '\n';
    } else if (bench_cmd->parsed()) {
      const BenchReport report = run_bench(*bench_scenario_from_name(scenario_arg), seed, size, reps);
      if (json) {
        out << to_json(report).dump(2) << '\n';
      } else {
        out << "method\twall_ms\tintermediate\texpanded\tprobes\temitted\tstates\ttransitions\tvalue\n";
        for (const BenchEntry& e : report.entries) {
          out << e.method << '\t' << e.wall_ms << '\t' << e.intermediate_transitions << '\t'
              << e.counters.states_expanded << '\t' << e.counters.match_probes << '\t'
              << e.counters.transitions_emitted << '\t' << e.result_states << '\t' << e.result_transitions << '\t'
              << format_weight(e.result_value) << '\n';
        }
      }
    } else if (info_cmd->parsed()) {
      if ((filter_opt->count() > 0) == !paths.empty()) {
        err << "info: give either a machine or --filter\n";
        return 2;
      }
      if (filter_opt->count() > 0) {
        static const std::map<std::string, FilterAutomaton (*)()> kFilters = {
            {"m", &filter_m}, {"m1", &filter_m1}, {"m2", &filter_m2}, {"pair", &pair_filter_product}};
        const FilterAutomaton f = filter_name == "w" ? filter_w() : kFilters.at(filter_name)();
        if (dot) {
          out << to_dot(f, filter_name);
        } else {
          out << "states\t" << f.num_states() << "\nsymbols\t" << f.num_symbols() << "\ntransitions\t"
              << f.num_transitions() << '\n';
        }
      } else {
        const Transducer t = load(paths[0], sr);
        if (dot) {
          out << to_dot(t);
        } else {
          const TransducerStats s = t.stats();
          out << "semiring\t" << t.semiring().name() << "\nstates\t" << s.num_states << "\ntransitions\t"
              << s.num_transitions << "\nmax_out_degree\t" << s.max_out_degree << "\ninitial_states\t"
              << t.initial_states().size() << "\nregulated\t" << (is_regulated(t) ? "yes" : "no") << '\n';
        }
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidArgument ? 2 : 1;
  }
  return 0;
}

}  // namespace wfst
