// Reference oracles for the test suites. They only read machines through the
// public accessors and never call the algorithms under test.
#ifndef WFST_TESTS_ORACLE_HPP_
#define WFST_TESTS_ORACLE_HPP_

#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "wfst/transducer.hpp"

namespace wfst::oracle {

using Str = std::vector<Label>;
using Rel = std::map<std::pair<Str, Str>, double>;

// Sum over every accepting path of an acyclic machine, keyed by its label
// pair. Exponential; test-sized machines only.
inline Rel enumerate(const Transducer& t) {
  const Semiring& sr = t.semiring();
  Rel rel;
  Str x, y;
  std::function<void(StateId, double)> walk = [&](StateId q, double w) {
    if (t.is_final(q)) {
      const double acc = sr.times(w, t.final_weight(q));
      auto [it, inserted] = rel.try_emplace({x, y}, acc);
      if (!inserted) it->second = sr.plus(it->second, acc);
    }
    for (const Arc& a : t.transitions(q)) {
      if (a.ilabel != kEpsilon) x.push_back(a.ilabel);
      if (a.olabel != kEpsilon) y.push_back(a.olabel);
      walk(a.nextstate, sr.times(w, a.weight));
      if (a.ilabel != kEpsilon) x.pop_back();
      if (a.olabel != kEpsilon) y.pop_back();
    }
  };
  for (StateId q : t.initial_states()) walk(q, t.initial_weight(q));
  return rel;
}

inline double lookup(const Rel& r, const Str& x, const Str& y, double zero) {
  auto it = r.find({x, y});
  return it == r.end() ? zero : it->second;
}

// (R1 o R2)(x, y) = sum_z R1(x, z) R2(z, y).
inline Rel join(const Rel& r1, const Rel& r2, const Semiring& sr) {
  std::multimap<Str, std::pair<Str, double>> by_input;
  for (const auto& [k, w] : r2) by_input.emplace(k.first, std::make_pair(k.second, w));
  Rel out;
  for (const auto& [k, w1] : r1) {
    auto [lo, hi] = by_input.equal_range(k.second);
    for (auto it = lo; it != hi; ++it) {
      const double w = sr.times(w1, it->second.second);
      auto [jt, inserted] = out.try_emplace({k.first, it->second.first}, w);
      if (!inserted) jt->second = sr.plus(jt->second, w);
    }
  }
  return out;
}

// Every string over 1..alphabet of length <= max_len, shortest first.
inline std::vector<Str> all_strings(Label alphabet, std::size_t max_len) {
  std::vector<Str> out{{}};
  for (std::size_t begin = 0, len = 0; len < max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Label a = 1; a <= alphabet; ++a) {
        Str s = out[i];
        s.push_back(a);
        out.push_back(std::move(s));
      }
    }
    begin = end;
  }
  return out;
}

// Elementwise comparison over the union of keys; absent means `zero`.
inline bool same_relation(const Rel& a, const Rel& b, double zero, double tol) {
  for (const auto& [k, w] : a) {
    if (!approx_equal(w, lookup(b, k.first, k.second, zero), tol)) return false;
  }
  for (const auto& [k, w] : b) {
    if (!approx_equal(w, lookup(a, k.first, k.second, zero), tol)) return false;
  }
  return true;
}

// Keeps the pairs with |x|, |y| <= max_len.
inline Rel restrict(const Rel& r, std::size_t max_len) {
  Rel out;
  for (const auto& [k, w] : r) {
    if (k.first.size() <= max_len && k.second.size() <= max_len) out.emplace(k, w);
  }
  return out;
}

struct Triple {
  Transducer t1, t2, t3;
  Label alphabet;
};

// Seeded corpus member: up to 6 states, alphabet up to 3, epsilon
// probability `eps`, probability semiring.
inline Triple random_triple(std::uint64_t seed, double eps = 0.2) {
  std::mt19937_64 rng(seed * 7919 + 17);
  const Label alphabet = 1 + static_cast<Label>(rng() % 3);
  auto one = [&](std::uint64_t salt) {
    RandomMachineOptions o;
    o.num_states = 2 + static_cast<StateId>(rng() % 5);
    o.alphabet_size = alphabet;
    o.eps_prob = eps;
    o.density = 0.5;
    o.seed = seed * 1000003 + salt;
    return random_acyclic(o);
  };
  Transducer t1 = one(1), t2 = one(2), t3 = one(3);
  return {std::move(t1), std::move(t2), std::move(t3), alphabet};
}

}  // namespace wfst::oracle

#endif  // WFST_TESTS_ORACLE_HPP_
