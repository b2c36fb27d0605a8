#pragma once

// Points, arcs and finite arc sets on the circle R/Z.

#include "plcircle/rational.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace plcircle {

/// A point of R/Z, stored as its representative in [0, 1).
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(const Rational& t) : value_(frac(t)) {}

  const Rational& value() const noexcept { return value_; }

  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
  friend auto operator<=>(const CirclePoint& a, const CirclePoint& b) {
    return compare(a.value_, b.value_);
  }

 private:
  Rational value_{0};
};

/// Clockwise arc from start to end with explicit endpoint inclusion.
///
/// start == end is either a single point (both ends closed) or the circle
/// with that one point removed (both ends open). The full circle itself is
/// never an Arc; see ArcSet::full().
struct Arc {
  CirclePoint start;
  CirclePoint end;
  bool closed_left = true;
  bool closed_right = true;

  static Arc closed(const Rational& a, const Rational& b) {
    return {CirclePoint(a), CirclePoint(b), true, true};
  }
  static Arc open(const Rational& a, const Rational& b) {
    return {CirclePoint(a), CirclePoint(b), false, false};
  }
  static Arc point(const Rational& a) { return closed(a, a); }

  bool is_point() const { return start == end && closed_left && closed_right; }
  bool wraps() const { return end.value() < start.value(); }

  /// Clockwise length from start to end (1 for a punctured circle).
  Rational length() const;

  bool contains(const CirclePoint& p) const;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// A finite union of arcs in canonical form.
///
/// Canonical form: pairwise disjoint maximal arcs sorted by start value, or
/// the full-circle tag. Two ArcSets are equal as sets iff they compare equal.
class ArcSet {
 public:
  ArcSet() = default;
  explicit ArcSet(std::vector<Arc> arcs);
  static ArcSet full();
  static ArcSet points(const std::vector<Rational>& pts);

  bool is_full() const noexcept { return full_; }
  bool empty() const noexcept { return !full_ && arcs_.empty(); }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  bool contains(const CirclePoint& p) const;
  bool contains(const Rational& t) const { return contains(CirclePoint(t)); }

  /// Endpoints of the arcs in increasing order (empty for the full circle).
  std::vector<Rational> boundary() const;

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  friend struct ArcSetAccess;
  std::vector<Arc> arcs_;
  bool full_ = false;
};

ArcSet set_union(const ArcSet& a, const ArcSet& b);
ArcSet set_intersection(const ArcSet& a, const ArcSet& b);
ArcSet set_complement(const ArcSet& a);
ArcSet set_difference(const ArcSet& a, const ArcSet& b);
bool is_subset(const ArcSet& a, const ArcSet& b);
bool is_disjoint(const ArcSet& a, const ArcSet& b);

enum class SetOp { Union, Intersect, ComplementOfFirst };

/// Dispatching form of the three set operations.
ArcSet arcset_algebra(const ArcSet& a, const ArcSet& b, SetOp op);

/// Shortest distance between two points along the circle.
Rational circle_distance(const CirclePoint& a, const CirclePoint& b);

/// Clockwise offset from `origin` to `p`, in [0, 1).
Rational clockwise_offset(const CirclePoint& origin, const CirclePoint& p);

std::string to_string(const CirclePoint& p);
std::string to_string(const Arc& a);
/// Comma separated arcs, "S1" for the full circle, "{}" for the empty set.
std::string to_string(const ArcSet& s);

Arc parse_arc(std::string_view text);
ArcSet parse_arcset(std::string_view text);

}  // namespace plcircle
