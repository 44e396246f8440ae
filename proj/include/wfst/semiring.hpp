#ifndef WFST_SEMIRING_HPP_
#define WFST_SEMIRING_HPP_

#include <limits>
#include <optional>
#include <string_view>

namespace wfst {

using Weight = double;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultTolerance = 1e-9;

// Tropical: (R+ u {inf}, min, +, inf, 0).
struct TropicalSemiring {
  static constexpr std::string_view kName = "tropical";
  static constexpr bool kIdempotent = true;
  static constexpr Weight zero() { return kInfinity; }
  static constexpr Weight one() { return 0.0; }
  static Weight plus(Weight a, Weight b) { return a < b ? a : b; }
  static Weight times(Weight a, Weight b) { return a + b; }
  static bool is_member(Weight a) { return a >= 0.0; }  // false for NaN
};

// Probability: (R, +, *, 0, 1).
struct ProbabilitySemiring {
  static constexpr std::string_view kName = "probability";
  static constexpr bool kIdempotent = false;
  static constexpr Weight zero() { return 0.0; }
  static constexpr Weight one() { return 1.0; }
  static Weight plus(Weight a, Weight b) { return a + b; }
  static Weight times(Weight a, Weight b) { return a * b; }
  static bool is_member(Weight a);
};

// Log: weights are -log(p); plus is the negated log-sum-exp.
struct LogSemiring {
  static constexpr std::string_view kName = "log";
  static constexpr bool kIdempotent = false;
  static constexpr Weight zero() { return kInfinity; }
  static constexpr Weight one() { return 0.0; }
  static Weight plus(Weight a, Weight b);
  static Weight times(Weight a, Weight b) { return a + b; }
  static bool is_member(Weight a);
};

enum class SemiringKind { kTropical, kProbability, kLog };

struct SemiringDescriptor {
  std::string_view name;
  Weight zero;
  Weight one;
  bool is_idempotent;
  bool is_commutative;
};

// Runtime handle on one of the shipped semirings. Cheap to copy; all
// operations are pure.
class Semiring {
 public:
  constexpr Semiring() = default;
  constexpr explicit Semiring(SemiringKind kind) : kind_(kind) {}

  static constexpr Semiring tropical() { return Semiring(SemiringKind::kTropical); }
  static constexpr Semiring probability() { return Semiring(SemiringKind::kProbability); }
  static constexpr Semiring log() { return Semiring(SemiringKind::kLog); }

  constexpr SemiringKind kind() const { return kind_; }

  std::string_view name() const;
  Weight zero() const;
  Weight one() const;
  bool is_idempotent() const;
  bool is_commutative() const { return true; }
  SemiringDescriptor descriptor() const;

  Weight plus(Weight a, Weight b) const;
  Weight times(Weight a, Weight b) const;

  bool is_zero(Weight a) const { return a == zero(); }
  // True when |a| is a valid element of the carrier set.
  bool is_member(Weight a) const;

  friend constexpr bool operator==(Semiring a, Semiring b) { return a.kind_ == b.kind_; }

 private:
  SemiringKind kind_ = SemiringKind::kTropical;
};

// Parses "tropical", "probability" or "log".
std::optional<Semiring> semiring_from_name(std::string_view name);

// |a - b| <= tol, with infinities equal only to themselves.
bool approx_equal(Weight a, Weight b, double tol = kDefaultTolerance);

}  // namespace wfst

#endif  // WFST_SEMIRING_HPP_
