#include "wfst/apps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "wfst/algorithms.hpp"
#include "wfst/compose2.hpp"
#include "wfst/error.hpp"

namespace wfst {

void EditCosts::validate() const {
  auto ok = [](double c) { return std::isfinite(c) && c >= 0.0; };
  if (!ok(substitution) || !ok(insertion) || !ok(deletion) || (transposition && !ok(*transposition))) {
    throw Error(ErrorCode::kInvalidArgument, "edit costs must be finite and non-negative");
  }
}

Transducer edit_transducer(Label alphabet_size, const EditCosts& costs) {
  if (alphabet_size < 1) throw Error(ErrorCode::kInvalidArgument, "alphabet size must be >= 1");
  costs.validate();
  const Semiring sr = Semiring::tropical();
  Transducer t(sr);
  const StateId hub = t.add_state();
  t.set_initial(hub, sr.one());
  t.set_final(hub, sr.one());
  for (Label a = 1; a <= alphabet_size; ++a) {
    for (Label b = 1; b <= alphabet_size; ++b) {
      t.add_transition(hub, {a, b, a == b ? 0.0 : costs.substitution, hub});
    }
    t.add_transition(hub, {a, kEpsilon, costs.deletion, hub});
    t.add_transition(hub, {kEpsilon, a, costs.insertion, hub});
  }
  if (costs.transposition) {
    for (Label a = 1; a <= alphabet_size; ++a) {
      for (Label b = 1; b <= alphabet_size; ++b) {
        if (a == b) continue;
        const StateId aux = t.add_state();
        t.add_transition(hub, {a, b, *costs.transposition, aux});
        t.add_transition(aux, {b, a, 0.0, hub});
      }
    }
  }
  t.freeze();
  return t;
}

Weight edit_distance(const Transducer& a1, const Transducer& a2, const EditCosts& costs,
                     const Compose3Options& options) {
  const Label alphabet = std::max<Label>({1, max_label(a1), max_label(a2)});
  const Transducer edit = edit_transducer(alphabet, costs);
  return shortest_distance(compose3(a1, edit, a2, options).fst);
}

Transducer ngram_count_transducer(Label alphabet_size, int order, bool exact) {
  if (alphabet_size < 1 || order < 1) {
    throw Error(ErrorCode::kInvalidArgument, "ngram_count_transducer: alphabet and order must be >= 1");
  }
  const Semiring sr = Semiring::probability();
  Transducer t(sr);
  // 0: entry hub, 1..order-1: chain, order: exit hub.
  t.reserve_states(order + 1);
  const StateId exit = order;
  t.set_initial(0, sr.one());
  t.set_final(exit, sr.one());
  for (Label a = 1; a <= alphabet_size; ++a) {
    t.add_transition(0, {a, kEpsilon, sr.one(), 0});
    t.add_transition(exit, {a, kEpsilon, sr.one(), exit});
  }
  for (int k = 1; k <= order; ++k) {
    const StateId from = k - 1;
    for (Label a = 1; a <= alphabet_size; ++a) {
      if (k < order) t.add_transition(from, {a, a, sr.one(), k});
      if (!exact || k == order) t.add_transition(from, {a, a, sr.one(), exit});
    }
  }
  t.freeze();
  return t;
}

std::shared_ptr<const Transducer> ngram_kernel_middle(Label alphabet_size, int order, bool exact) {
  static std::mutex mu;
  static std::map<std::tuple<Label, int, bool>, std::shared_ptr<const Transducer>> cache;
  const auto key = std::make_tuple(alphabet_size, order, exact);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const Transducer count = ngram_count_transducer(alphabet_size, order, exact);
  auto middle = std::make_shared<Transducer>(trim(compose(count, invert(count))));
  middle->freeze();
  std::lock_guard<std::mutex> lock(mu);
  return cache.try_emplace(key, std::move(middle)).first->second;
}

Weight ngram_kernel(const Transducer& a1, const Transducer& a2, int order, bool exact,
                    const Compose3Options& options) {
  const Label alphabet = std::max<Label>({1, max_label(a1), max_label(a2)});
  const auto middle = ngram_kernel_middle(alphabet, order, exact);
  return path_sum(compose3(a1, *middle, a2, options).fst);
}

double edit_distance_oracle(std::span<const Label> x, std::span<const Label> y, const EditCosts& costs) {
  costs.validate();
  const std::size_t n = x.size(), m = y.size();
  std::vector<std::vector<double>> d(n + 1, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 1; i <= n; ++i) d[i][0] = d[i - 1][0] + costs.deletion;
  for (std::size_t j = 1; j <= m; ++j) d[0][j] = d[0][j - 1] + costs.insertion;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      double best = std::min(d[i - 1][j] + costs.deletion, d[i][j - 1] + costs.insertion);
      best = std::min(best, d[i - 1][j - 1] + (x[i - 1] == y[j - 1] ? 0.0 : costs.substitution));
      if (costs.transposition && i > 1 && j > 1 && x[i - 1] != x[i - 2] && x[i - 1] == y[j - 2] &&
          x[i - 2] == y[j - 1]) {
        best = std::min(best, d[i - 2][j - 2] + *costs.transposition);
      }
      d[i][j] = best;
    }
  }
  return d[n][m];
}

namespace {

std::map<std::vector<Label>, int> ngram_counts(std::span<const Label> s, int order, bool exact) {
  std::map<std::vector<Label>, int> counts;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (int k = exact ? order : 1; k <= order && i + k <= s.size(); ++k) {
      ++counts[std::vector<Label>(s.begin() + i, s.begin() + i + k)];
    }
  }
  return counts;
}

}  // namespace

double ngram_kernel_oracle(std::span<const Label> x, std::span<const Label> y, int order, bool exact) {
  const auto cx = ngram_counts(x, order, exact);
  const auto cy = ngram_counts(y, order, exact);
  double k = 0.0;
  for (const auto& [z, c] : cx) {
    if (auto it = cy.find(z); it != cy.end()) k += static_cast<double>(c) * it->second;
  }
  return k;
}

std::vector<Label> letters_to_labels(std::string_view s) {
  std::vector<Label> out;
  out.reserve(s.size());
  for (char c : s) {
    if (c < 'a' || c > 'z') throw Error(ErrorCode::kInvalidArgument, "expected letters a-z");
    out.push_back(c - 'a' + 1);
  }
  return out;
}

}  // namespace wfst
