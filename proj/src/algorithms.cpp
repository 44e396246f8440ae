#include "wfst/algorithms.hpp"

#include <functional>
#include <queue>
#include <tuple>

#include "wfst/error.hpp"

namespace wfst {

std::vector<Weight> shortest_distances(const Transducer& t) {
  const Semiring& sr = t.semiring();
  if (sr.kind() != SemiringKind::kTropical) {
    throw Error(ErrorCode::kSemiringMismatch, "shortest_distance needs the tropical semiring");
  }
  std::vector<Weight> d(t.num_states(), kInfinity);
  using Entry = std::pair<Weight, StateId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (StateId q : t.initial_states()) {
    if (t.initial_weight(q) < d[q]) {
      d[q] = t.initial_weight(q);
      heap.push({d[q], q});
    }
  }
  while (!heap.empty()) {
    const auto [w, q] = heap.top();
    heap.pop();
    if (w > d[q]) continue;
    for (const Arc& a : t.transitions(q)) {
      const Weight nw = w + a.weight;
      if (nw < d[a.nextstate]) {
        d[a.nextstate] = nw;
        heap.push({nw, a.nextstate});
      }
    }
  }
  return d;
}

Weight shortest_distance(const Transducer& t) {
  const std::vector<Weight> d = shortest_distances(t);
  Weight best = kInfinity;
  for (StateId q = 0; q < t.num_states(); ++q) {
    if (t.is_final(q)) best = std::min(best, d[q] + t.final_weight(q));
  }
  return best;
}

namespace {

// Kahn order over all transitions; empty when a cycle exists.
std::vector<StateId> topological_order(const Transducer& t) {
  std::vector<int> indegree(t.num_states(), 0);
  for (StateId q = 0; q < t.num_states(); ++q) {
    for (const Arc& a : t.transitions(q)) ++indegree[a.nextstate];
  }
  std::vector<StateId> order;
  order.reserve(t.num_states());
  for (StateId q = 0; q < t.num_states(); ++q) {
    if (indegree[q] == 0) order.push_back(q);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const Arc& a : t.transitions(order[i])) {
      if (--indegree[a.nextstate] == 0) order.push_back(a.nextstate);
    }
  }
  if (order.size() != static_cast<std::size_t>(t.num_states())) order.clear();
  return order;
}

}  // namespace

Weight path_sum(const Transducer& t) {
  const Semiring& sr = t.semiring();
  if (t.num_states() == 0) return sr.zero();
  const std::vector<StateId> order = topological_order(t);
  if (order.empty()) throw Error(ErrorCode::kCyclicInput, "path_sum needs an acyclic machine");
  std::vector<Weight> alpha(t.num_states(), sr.zero());
  for (StateId q : t.initial_states()) alpha[q] = t.initial_weight(q);
  Weight total = sr.zero();
  for (StateId q : order) {
    if (sr.is_zero(alpha[q])) continue;
    for (const Arc& a : t.transitions(q)) {
      alpha[a.nextstate] = sr.plus(alpha[a.nextstate], sr.times(alpha[q], a.weight));
    }
    if (t.is_final(q)) total = sr.plus(total, sr.times(alpha[q], t.final_weight(q)));
  }
  return total;
}

Transducer trim(const Transducer& t) {
  const StateId n = t.num_states();
  std::vector<bool> access(n, false), coaccess(n, false);
  std::vector<StateId> stack;
  for (StateId q : t.initial_states()) {
    if (!access[q]) {
      access[q] = true;
      stack.push_back(q);
    }
  }
  std::vector<std::vector<StateId>> reverse(n);
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (const Arc& a : t.transitions(q)) {
      if (!access[a.nextstate]) {
        access[a.nextstate] = true;
        stack.push_back(a.nextstate);
      }
    }
  }
  for (StateId q = 0; q < n; ++q) {
    for (const Arc& a : t.transitions(q)) reverse[a.nextstate].push_back(q);
    if (t.is_final(q)) {
      coaccess[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (StateId p : reverse[q]) {
      if (!coaccess[p]) {
        coaccess[p] = true;
        stack.push_back(p);
      }
    }
  }

  std::vector<StateId> remap(n, kNoState);
  Transducer out(t.semiring());
  for (StateId q = 0; q < n; ++q) {
    if (access[q] && coaccess[q]) remap[q] = out.add_state();
  }
  for (StateId q = 0; q < n; ++q) {
    if (remap[q] == kNoState) continue;
    for (const Arc& a : t.transitions(q)) {
      if (remap[a.nextstate] != kNoState) {
        out.add_transition(remap[q], {a.ilabel, a.olabel, a.weight, remap[a.nextstate]});
      }
    }
    if (t.is_final(q)) out.set_final(remap[q], t.final_weight(q));
  }
  for (StateId q : t.initial_states()) {
    if (remap[q] != kNoState) out.set_initial(remap[q], t.initial_weight(q));
  }
  return out;
}

Relation bounded_relation(const Transducer& t, std::size_t max_len) {
  const Semiring& sr = t.semiring();
  Relation result;
  if (t.num_states() == 0) return result;
  const std::vector<StateId> rank = epsilon_topological_rank(t);
  if (rank.empty()) throw Error(ErrorCode::kNotRegulated, "transducer has an epsilon cycle");
  std::vector<StateId> by_rank(rank.size());
  for (StateId q = 0; q < t.num_states(); ++q) by_rank[rank[q]] = q;

  // Groups of configurations sharing consumed prefixes (x, y), processed by
  // total length so every group is complete when popped; inside a group the
  // epsilon-topological order plays the role it has in evaluate().
  using Key = std::tuple<std::size_t, LabelString, LabelString>;
  std::map<Key, std::map<StateId, Weight>> pending;
  auto add = [&](const LabelString& x, const LabelString& y, StateId q, Weight w) {
    auto& group = pending[Key{x.size() + y.size(), x, y}];
    auto [it, inserted] = group.try_emplace(rank[q], w);
    if (!inserted) it->second = sr.plus(it->second, w);
  };
  for (StateId q : t.initial_states()) add({}, {}, q, t.initial_weight(q));

  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const LabelString& x = std::get<1>(node.key());
    const LabelString& y = std::get<2>(node.key());
    auto& group = node.mapped();
    Weight accepted = sr.zero();
    for (auto it = group.begin(); it != group.end(); ++it) {
      const StateId q = by_rank[it->first];
      const Weight w = it->second;
      if (t.is_final(q)) accepted = sr.plus(accepted, sr.times(w, t.final_weight(q)));
      for (const Arc& a : t.transitions(q)) {
        const Weight nw = sr.times(w, a.weight);
        if (a.ilabel == kEpsilon && a.olabel == kEpsilon) {
          auto [jt, inserted] = group.try_emplace(rank[a.nextstate], nw);
          if (!inserted) jt->second = sr.plus(jt->second, nw);
          continue;
        }
        if ((a.ilabel != kEpsilon && x.size() == max_len) || (a.olabel != kEpsilon && y.size() == max_len)) {
          continue;
        }
        LabelString nx = x, ny = y;
        if (a.ilabel != kEpsilon) nx.push_back(a.ilabel);
        if (a.olabel != kEpsilon) ny.push_back(a.olabel);
        add(nx, ny, a.nextstate, nw);
      }
    }
    if (!sr.is_zero(accepted)) result[{x, y}] = accepted;
  }
  return result;
}

bool equivalent_by_evaluation(const Transducer& a, const Transducer& b, std::size_t max_len, double tol) {
  if (!(a.semiring() == b.semiring())) {
    throw Error(ErrorCode::kSemiringMismatch, "equivalent_by_evaluation: different semirings");
  }
  const Relation ra = bounded_relation(a, max_len);
  const Relation rb = bounded_relation(b, max_len);
  const Weight zero = a.semiring().zero();
  for (const auto& [key, w] : ra) {
    auto it = rb.find(key);
    if (!approx_equal(w, it == rb.end() ? zero : it->second, tol)) return false;
  }
  for (const auto& [key, w] : rb) {
    if (!ra.contains(key) && !approx_equal(w, zero, tol)) return false;
  }
  return true;
}

}  // namespace wfst
