#pragma once

// Poincaré rotation numbers of PL circle maps: exact values with periodic
// point witnesses, sound enclosures as a fallback, recurrence witnesses and
// insertion of a rational-rotation map between two ordered lifts.

#include "plcircle/pl_map.hpp"

#include <optional>
#include <variant>

namespace plcircle {

/// rot(f) = value = p/q in lowest terms, with hat_lift(f)^q(s) = s + p.
struct ExactRotation {
  Rational value;
  long period = 1;
  CirclePoint witness;
  Integer translation{0};
};

/// The rotation number lies in [lo, hi]; hi - lo <= 2 / iterations.
struct RotationEnclosure {
  Rational lo;
  Rational hi;
  long iterations = 0;

  bool contains(const Rational& r) const { return lo <= r && r <= hi; }
};

class RotationResult {
 public:
  RotationResult(ExactRotation e) : v_(std::move(e)) {}
  RotationResult(RotationEnclosure e) : v_(std::move(e)) {}

  bool is_exact() const noexcept { return std::holds_alternative<ExactRotation>(v_); }
  const ExactRotation& exact() const { return std::get<ExactRotation>(v_); }
  const RotationEnclosure& enclosure() const { return std::get<RotationEnclosure>(v_); }

 private:
  std::variant<ExactRotation, RotationEnclosure> v_;
};

inline constexpr long kDefaultEnclosureIterations = 256;

/// Searches periods q = 1..q_max for a periodic point by solving, segment by
/// segment, F^q(t) = t + p exactly; the witness is chosen as in
/// periodic_point. Falls back to an enclosure from `iterations` iterates of
/// the hat lift. Throws PreconditionError if q_max < 1 or iterations < 1.
RotationResult rotation_number(const PLCircleMap& f, long q_max,
                               long iterations = kDefaultEnclosureIterations);

/// A point s with hat^q(s) = s + p, if any: the smallest attracting one when
/// such exists, else the smallest. Does not check that q is minimal.
std::optional<ExactRotation> periodic_point(const LiftMap& hat, long q);

/// hat_lift(f)^n(x) = x + k + delta with |delta| < epsilon.
struct RecurrenceWitness {
  long n = 0;
  CirclePoint x;
  Integer k{0};
  Rational delta;
};

/// Follows the orbit of 0 until two orbit points come within epsilon of each
/// other. Requires 0 < epsilon < 1.
RecurrenceWitness recurrence_witness(const PLCircleMap& f, const Rational& epsilon);

struct RationalInsertion {
  PLCircleMap map;
  Rational shift;      // h = h0 + shift, h0 the midpoint lift
  Rational epsilon;    // half the minimum gap between the two lifts
  RecurrenceWitness recurrence;
};

/// Given hat lifts with F < G everywhere, returns h with F < H < G and a
/// periodic point. Throws PreconditionError if the lifts touch or cross.
RationalInsertion rational_insertion(const PLCircleMap& f, const PLCircleMap& g);

}  // namespace plcircle
