#ifndef WFST_LABEL_INDEX_HPP_
#define WFST_LABEL_INDEX_HPP_

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "wfst/transducer.hpp"

namespace wfst {

enum class Side { kInput, kOutput };

// Per-state hash index from a label on one tape to the positions (within the
// state's transition list) of the transitions carrying it.
class LabelIndex {
 public:
  LabelIndex(const Transducer& t, Side side);

  Side side() const { return side_; }
  std::span<const std::uint32_t> lookup(StateId q, Label label) const;
  std::size_t num_buckets(StateId q) const { return bucket_counts_[q]; }

 private:
  Side side_;
  std::vector<std::size_t> bucket_counts_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

// Same idea keyed by the (input, output) label pair.
class PairLabelIndex {
 public:
  explicit PairLabelIndex(const Transducer& t);

  std::span<const std::uint32_t> lookup(StateId q, Label in, Label out) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
    }
  };
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::uint32_t>, KeyHash> buckets_;
};

LabelIndex build_label_index(const Transducer& t, Side side);

}  // namespace wfst

#endif  // WFST_LABEL_INDEX_HPP_
