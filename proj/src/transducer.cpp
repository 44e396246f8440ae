#include "wfst/transducer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <string>

#include "wfst/error.hpp"

namespace wfst {

StateId Transducer::add_state() {
  check_mutable();
  arcs_.emplace_back();
  initial_.push_back(semiring_.zero());
  final_.push_back(semiring_.zero());
  ++stats_.num_states;
  return num_states() - 1;
}

void Transducer::reserve_states(StateId n) {
  while (num_states() < n) add_state();
}

void Transducer::add_transition(StateId src, const Arc& arc) {
  check_mutable();
  check_state(src);
  check_state(arc.nextstate);
  check_weight(arc.weight);
  if (arc.ilabel < 0 || arc.olabel < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative label");
  }
  auto& list = arcs_[src];
  list.push_back(arc);
  ++stats_.num_transitions;
  stats_.max_out_degree = std::max(stats_.max_out_degree, list.size());
}

void Transducer::set_initial(StateId q, Weight w) {
  check_mutable();
  check_state(q);
  check_weight(w);
  if (semiring_.is_zero(initial_[q])) initial_order_.push_back(q);
  initial_[q] = w;
}

void Transducer::set_final(StateId q, Weight w) {
  check_mutable();
  check_state(q);
  check_weight(w);
  final_[q] = w;
}

std::span<const Arc> Transducer::transitions(StateId q) const {
  check_state(q);
  return arcs_[q];
}

Weight Transducer::initial_weight(StateId q) const {
  check_state(q);
  return initial_[q];
}

Weight Transducer::final_weight(StateId q) const {
  check_state(q);
  return final_[q];
}

void Transducer::check_state(StateId q) const {
  if (q < 0 || q >= num_states()) {
    throw Error(ErrorCode::kUnknownState, "unknown state id " + std::to_string(q));
  }
}

void Transducer::check_weight(Weight w) const {
  if (semiring_.is_zero(w)) {
    throw Error(ErrorCode::kZeroWeight, "weight equals the semiring zero");
  }
  if (!semiring_.is_member(w)) {
    throw Error(ErrorCode::kInvalidWeight,
                "weight " + std::to_string(w) + " is not in the " +
                    std::string(semiring_.name()) + " semiring");
  }
}

void Transducer::check_mutable() const {
  if (frozen_) throw Error(ErrorCode::kFrozen, "transducer is frozen");
}

TransducerStats compute_stats(const Transducer& t) {
  TransducerStats s;
  s.num_states = static_cast<std::size_t>(t.num_states());
  for (StateId q = 0; q < t.num_states(); ++q) {
    s.num_transitions += t.out_degree(q);
    s.max_out_degree = std::max(s.max_out_degree, t.out_degree(q));
  }
  return s;
}

Label max_label(const Transducer& t) {
  Label m = 0;
  for (StateId q = 0; q < t.num_states(); ++q) {
    for (const Arc& a : t.transitions(q)) m = std::max({m, a.ilabel, a.olabel});
  }
  return m;
}

std::vector<StateId> epsilon_topological_rank(const Transducer& t) {
  const StateId n = t.num_states();
  std::vector<int> indegree(n, 0);
  for (StateId q = 0; q < n; ++q) {
    for (const Arc& a : t.transitions(q)) {
      if (a.ilabel == kEpsilon && a.olabel == kEpsilon) ++indegree[a.nextstate];
    }
  }
  std::deque<StateId> ready;
  for (StateId q = 0; q < n; ++q) {
    if (indegree[q] == 0) ready.push_back(q);
  }
  std::vector<StateId> rank(n, kNoState);
  StateId next = 0;
  while (!ready.empty()) {
    const StateId q = ready.front();
    ready.pop_front();
    rank[q] = next++;
    for (const Arc& a : t.transitions(q)) {
      if (a.ilabel == kEpsilon && a.olabel == kEpsilon && --indegree[a.nextstate] == 0) {
        ready.push_back(a.nextstate);
      }
    }
  }
  if (next != n) return {};
  return rank;
}

bool is_regulated(const Transducer& t) {
  return t.num_states() == 0 || !epsilon_topological_rank(t).empty();
}

Weight evaluate(const Transducer& t, std::span<const Label> x, std::span<const Label> y) {
  const Semiring& sr = t.semiring();
  const std::vector<StateId> rank = epsilon_topological_rank(t);
  if (t.num_states() == 0) return sr.zero();
  if (rank.empty()) {
    throw Error(ErrorCode::kNotRegulated, "transducer has an epsilon cycle");
  }
  std::vector<StateId> by_rank(rank.size());
  for (StateId q = 0; q < t.num_states(); ++q) by_rank[rank[q]] = q;

  // One layer per consumed prefix pair (i, j); inside a layer states are
  // visited in epsilon-topological order so epsilon:epsilon relaxations land
  // on entries not yet visited.
  const std::size_t width = y.size() + 1;
  std::vector<std::map<StateId, Weight>> layers((x.size() + 1) * width);
  auto add = [&](std::size_t i, std::size_t j, StateId q, Weight w) {
    auto [it, inserted] = layers[i * width + j].try_emplace(rank[q], w);
    if (!inserted) it->second = sr.plus(it->second, w);
  };
  for (StateId q : t.initial_states()) add(0, 0, q, t.initial_weight(q));

  Weight total = sr.zero();
  for (std::size_t i = 0; i <= x.size(); ++i) {
    for (std::size_t j = 0; j <= y.size(); ++j) {
      auto& layer = layers[i * width + j];
      for (auto it = layer.begin(); it != layer.end(); ++it) {
        const StateId q = by_rank[it->first];
        const Weight w = it->second;
        for (const Arc& a : t.transitions(q)) {
          std::size_t ni = i, nj = j;
          if (a.ilabel != kEpsilon) {
            if (i == x.size() || x[i] != a.ilabel) continue;
            ++ni;
          }
          if (a.olabel != kEpsilon) {
            if (j == y.size() || y[j] != a.olabel) continue;
            ++nj;
          }
          add(ni, nj, a.nextstate, sr.times(w, a.weight));
        }
        if (i == x.size() && j == y.size() && t.is_final(q)) {
          total = sr.plus(total, sr.times(w, t.final_weight(q)));
        }
      }
      layer.clear();
    }
  }
  return total;
}

Transducer identity(Label alphabet_size, Semiring semiring) {
  Transducer t(semiring);
  const StateId q = t.add_state();
  t.set_initial(q, semiring.one());
  t.set_final(q, semiring.one());
  for (Label a = 1; a <= alphabet_size; ++a) t.add_transition(q, {a, a, semiring.one(), q});
  return t;
}

Transducer invert(const Transducer& t) {
  Transducer out(t.semiring());
  out.reserve_states(t.num_states());
  for (StateId q = 0; q < t.num_states(); ++q) {
    for (const Arc& a : t.transitions(q)) {
      out.add_transition(q, {a.olabel, a.ilabel, a.weight, a.nextstate});
    }
    if (t.is_final(q)) out.set_final(q, t.final_weight(q));
  }
  for (StateId q : t.initial_states()) out.set_initial(q, t.initial_weight(q));
  return out;
}

Transducer string_acceptor(std::span<const Label> s, Semiring semiring) {
  Transducer t(semiring);
  StateId q = t.add_state();
  t.set_initial(q, semiring.one());
  for (Label a : s) {
    const StateId next = t.add_state();
    t.add_transition(q, {a, a, semiring.one(), next});
    q = next;
  }
  t.set_final(q, semiring.one());
  return t;
}

namespace {

Weight random_weight(const Semiring& sr, std::mt19937_64& rng) {
  switch (sr.kind()) {
    case SemiringKind::kProbability:
      return std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    case SemiringKind::kTropical:
    case SemiringKind::kLog:
      return std::uniform_real_distribution<double>(0.0, 3.0)(rng);
  }
  return sr.one();
}

}  // namespace

Transducer random_acyclic(const RandomMachineOptions& o) {
  if (o.num_states < 1 || o.alphabet_size < 1 || o.eps_prob < 0.0 || o.eps_prob > 1.0 ||
      o.density < 0.0 || o.density > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid random machine parameters");
  }
  std::mt19937_64 rng(o.seed);
  std::bernoulli_distribution coin_eps(o.eps_prob);
  std::bernoulli_distribution coin_arc(o.density);
  std::uniform_int_distribution<Label> symbol(1, o.alphabet_size);
  const Semiring& sr = o.semiring;
  auto weight = [&] { return o.unweighted ? sr.one() : random_weight(sr, rng); };
  auto label = [&] { return coin_eps(rng) ? kEpsilon : symbol(rng); };

  Transducer t(sr);
  t.reserve_states(o.num_states);
  for (StateId p = 0; p < o.num_states; ++p) {
    for (StateId q = p + 1; q < o.num_states; ++q) {
      if (!coin_arc(rng) && !(o.spine && q == p + 1)) continue;
      const Label in = label();
      const Label out = o.acceptor ? in : label();
      t.add_transition(p, {in, out, weight(), q});
    }
  }
  t.set_initial(0, weight());
  if (o.num_states > 2 && std::bernoulli_distribution(0.25)(rng)) t.set_initial(1, weight());
  for (StateId q = 0; q + 1 < o.num_states; ++q) {
    if (std::bernoulli_distribution(0.3)(rng)) t.set_final(q, weight());
  }
  t.set_final(o.num_states - 1, weight());
  return t;
}

Transducer random_acyclic(StateId num_states, Label alphabet_size, double eps_prob,
                          double density, std::uint64_t seed) {
  RandomMachineOptions o;
  o.num_states = num_states;
  o.alphabet_size = alphabet_size;
  o.eps_prob = eps_prob;
  o.density = density;
  o.seed = seed;
  return random_acyclic(o);
}

}  // namespace wfst
