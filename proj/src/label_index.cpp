#include "wfst/label_index.hpp"

namespace wfst {

namespace {

std::uint64_t state_label_key(StateId q, Label label) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(q)) << 32) |
         static_cast<std::uint32_t>(label);
}

}  // namespace

LabelIndex::LabelIndex(const Transducer& t, Side side) : side_(side), bucket_counts_(t.num_states(), 0) {
  buckets_.reserve(t.stats().num_transitions);
  for (StateId q = 0; q < t.num_states(); ++q) {
    const auto arcs = t.transitions(q);
    for (std::uint32_t i = 0; i < arcs.size(); ++i) {
      const Label l = side == Side::kInput ? arcs[i].ilabel : arcs[i].olabel;
      auto& bucket = buckets_[state_label_key(q, l)];
      if (bucket.empty()) ++bucket_counts_[q];
      bucket.push_back(i);
    }
  }
}

std::span<const std::uint32_t> LabelIndex::lookup(StateId q, Label label) const {
  auto it = buckets_.find(state_label_key(q, label));
  if (it == buckets_.end()) return {};
  return it->second;
}

PairLabelIndex::PairLabelIndex(const Transducer& t) {
  buckets_.reserve(t.stats().num_transitions);
  for (StateId q = 0; q < t.num_states(); ++q) {
    const auto arcs = t.transitions(q);
    for (std::uint32_t i = 0; i < arcs.size(); ++i) {
      buckets_[{state_label_key(q, arcs[i].ilabel), static_cast<std::uint32_t>(arcs[i].olabel)}].push_back(i);
    }
  }
}

std::span<const std::uint32_t> PairLabelIndex::lookup(StateId q, Label in, Label out) const {
  auto it = buckets_.find({state_label_key(q, in), static_cast<std::uint32_t>(out)});
  if (it == buckets_.end()) return {};
  return it->second;
}

LabelIndex build_label_index(const Transducer& t, Side side) { return LabelIndex(t, side); }

}  // namespace wfst
