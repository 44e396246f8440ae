#include "wfst/semiring.hpp"

#include <cmath>

namespace wfst {

bool ProbabilitySemiring::is_member(Weight a) { return std::isfinite(a); }

Weight LogSemiring::plus(Weight a, Weight b) {
  if (a == kInfinity) return b;
  if (b == kInfinity) return a;
  const Weight lo = a < b ? a : b;
  const Weight hi = a < b ? b : a;
  return lo - std::log1p(std::exp(lo - hi));
}

bool LogSemiring::is_member(Weight a) { return !std::isnan(a) && a != -kInfinity; }

namespace {

template <typename S>
SemiringDescriptor describe() {
  return {S::kName, S::zero(), S::one(), S::kIdempotent, true};
}

}  // namespace

SemiringDescriptor Semiring::descriptor() const {
  switch (kind_) {
    case SemiringKind::kTropical: return describe<TropicalSemiring>();
    case SemiringKind::kProbability: return describe<ProbabilitySemiring>();
    case SemiringKind::kLog: return describe<LogSemiring>();
  }
  return describe<TropicalSemiring>();
}

std::string_view Semiring::name() const { return descriptor().name; }
Weight Semiring::zero() const { return descriptor().zero; }
Weight Semiring::one() const { return descriptor().one; }
bool Semiring::is_idempotent() const { return descriptor().is_idempotent; }

Weight Semiring::plus(Weight a, Weight b) const {
  switch (kind_) {
    case SemiringKind::kTropical: return TropicalSemiring::plus(a, b);
    case SemiringKind::kProbability: return ProbabilitySemiring::plus(a, b);
    case SemiringKind::kLog: return LogSemiring::plus(a, b);
  }
  return a;
}

Weight Semiring::times(Weight a, Weight b) const {
  switch (kind_) {
    case SemiringKind::kTropical: return TropicalSemiring::times(a, b);
    case SemiringKind::kProbability: return ProbabilitySemiring::times(a, b);
    case SemiringKind::kLog: return LogSemiring::times(a, b);
  }
  return a;
}

bool Semiring::is_member(Weight a) const {
  switch (kind_) {
    case SemiringKind::kTropical: return TropicalSemiring::is_member(a);
    case SemiringKind::kProbability: return ProbabilitySemiring::is_member(a);
    case SemiringKind::kLog: return LogSemiring::is_member(a);
  }
  return false;
}

std::optional<Semiring> semiring_from_name(std::string_view name) {
  if (name == TropicalSemiring::kName) return Semiring::tropical();
  if (name == ProbabilitySemiring::kName) return Semiring::probability();
  if (name == LogSemiring::kName) return Semiring::log();
  return std::nullopt;
}

bool approx_equal(Weight a, Weight b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= tol;
}

}  // namespace wfst
