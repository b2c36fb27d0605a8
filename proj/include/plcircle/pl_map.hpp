#pragma once

// Exact piecewise-linear homeomorphisms of the circle and of the unit
// interval, their lifts, words over named generators, and the text format.

#include "plcircle/arcs.hpp"
#include "plcircle/rational.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace plcircle {

struct Breakpoint {
  Rational x;
  Rational y;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
  friend std::strong_ordering operator<=>(const Breakpoint& a, const Breakpoint& b) {
    if (auto c = compare(a.x, b.x); c != 0) return c;
    return compare(a.y, b.y);
  }
};

/// Degree-one orientation-preserving PL homeomorphism of R/Z.
///
/// Stored as the values of a designated lift F at its breakpoints on [0, 1).
/// The first breakpoint is always x = 0 with F(0) in [0, 1); F is extended
/// periodically through F(t + 1) = F(t) + 1. Consecutive collinear points
/// are merged, so two maps are equal as functions iff their breakpoint lists
/// are identical.
class PLCircleMap {
 public:
  /// The identity.
  PLCircleMap();

  /// Builds a map from lift samples with strictly increasing x in [0, 1).
  /// x = 0 need not be present. The samples must be strictly increasing in y
  /// and satisfy y_last < y_first + 1. Throws PreconditionError otherwise.
  static PLCircleMap from_lift_points(std::vector<Breakpoint> pts);

  static PLCircleMap identity() { return {}; }
  static PLCircleMap rotation(const Rational& angle);

  const std::vector<Breakpoint>& breakpoints() const noexcept { return pts_; }

  /// Value of the designated lift F at any real t.
  Rational lift(const Rational& t) const;
  /// Value of the inverse of the designated lift at any real y.
  Rational lift_inverse(const Rational& y) const;

  CirclePoint operator()(const CirclePoint& p) const { return CirclePoint(lift(p.value())); }

  /// Slope of segment i (from breakpoint i to breakpoint i + 1, cyclically).
  Rational slope(std::size_t i) const;
  /// Right-hand slope of the lift at t.
  Rational slope_at(const Rational& t) const;
  std::size_t segment_count() const noexcept { return pts_.size(); }
  /// Right end of segment i; 1 for the last segment.
  Rational segment_end(std::size_t i) const;

  bool is_identity() const;

  friend bool operator==(const PLCircleMap&, const PLCircleMap&) = default;
  friend bool operator<(const PLCircleMap& a, const PLCircleMap& b) { return a.pts_ < b.pts_; }

 private:
  std::vector<Breakpoint> pts_;
  std::size_t segment_index(const Rational& u) const;
};

/// A lift of a circle map: t -> F(t) + offset with F the designated lift.
struct LiftMap {
  PLCircleMap base;
  Integer offset{0};

  Rational operator()(const Rational& t) const { return base.lift(t) + Rational(offset); }
  Rational inverse_at(const Rational& y) const { return base.lift_inverse(y - Rational(offset)); }

  friend bool operator==(const LiftMap&, const LiftMap&) = default;
};

/// Orientation-preserving PL homeomorphism of [0, 1] fixing both ends.
class PLIntervalMap {
 public:
  PLIntervalMap();
  /// Points must start at (0,0), end at (1,1) and increase strictly in both
  /// coordinates. Collinear interior points are merged.
  explicit PLIntervalMap(std::vector<Breakpoint> pts);

  static PLIntervalMap identity() { return {}; }

  const std::vector<Breakpoint>& breakpoints() const noexcept { return pts_; }
  Rational operator()(const Rational& t) const;
  Rational inverse_at(const Rational& y) const;
  bool is_identity() const { return pts_.size() == 2; }

  /// The same map viewed on R/Z, fixing 0.
  PLCircleMap to_circle() const;

  friend bool operator==(const PLIntervalMap&, const PLIntervalMap&) = default;
  friend bool operator<(const PLIntervalMap& a, const PLIntervalMap& b) {
    return a.pts_ < b.pts_;
  }

 private:
  std::vector<Breakpoint> pts_;
};

/// Free word over named generators; letters are applied right to left.
struct Letter {
  std::string name;
  long exponent = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

class Word {
 public:
  Word() = default;
  /// Adjacent letters with equal names are merged; zero exponents dropped.
  explicit Word(std::vector<Letter> letters);
  static Word generator(std::string name, long exponent = 1) {
    return Word({Letter{std::move(name), exponent}});
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  /// Sum of absolute exponents.
  long length() const;

  Word inverse() const;
  /// this * rhs (rhs is applied first).
  Word operator*(const Word& rhs) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// "b a^-2 c"; the empty word prints as "e".
std::string to_string(const Word& w);
Word parse_word(std::string_view text);

using CircleGens = std::map<std::string, PLCircleMap>;
using IntervalGens = std::map<std::string, PLIntervalMap>;

// --- circle map algebra ----------------------------------------------------

/// f o g.
PLCircleMap compose(const PLCircleMap& f, const PLCircleMap& g);
PLCircleMap inverse(const PLCircleMap& f);
PLCircleMap power(const PLCircleMap& f, long n);
/// g o f o g^-1.
PLCircleMap conjugate(const PLCircleMap& f, const PLCircleMap& g);
CirclePoint evaluate(const PLCircleMap& f, const CirclePoint& p);

/// Image of an arc set under an orientation-preserving homeomorphism.
ArcSet image(const PLCircleMap& f, const ArcSet& s);
Arc image(const PLCircleMap& f, const Arc& a);

/// The lift closest to the identity: it has a fixed point when f does, and
/// otherwise satisfies t < F(t) < t + 1. Its translation number is in [0, 1).
LiftMap hat_lift(const PLCircleMap& f);

LiftMap compose(const LiftMap& f, const LiftMap& g);
LiftMap inverse(const LiftMap& f);
LiftMap power(const LiftMap& f, long n);

/// Product of the word's letters, rightmost first. Throws std::out_of_range
/// for an unbound generator.
PLCircleMap evaluate_word(const Word& w, const CircleGens& gens);

// --- interval map algebra --------------------------------------------------

PLIntervalMap compose(const PLIntervalMap& f, const PLIntervalMap& g);
PLIntervalMap inverse(const PLIntervalMap& f);
PLIntervalMap power(const PLIntervalMap& f, long n);
PLIntervalMap evaluate_word(const Word& w, const IntervalGens& gens);

/// Circle map acting as h rescaled affinely onto the arc from `a` running
/// clockwise for `length`, and the identity elsewhere. 0 < length <= 1.
PLCircleMap squeeze(const PLIntervalMap& h, const Rational& a, const Rational& length);

/// Affine renormalization of f on an arc [a, a + length] whose endpoints f
/// fixes and which f preserves. Throws PreconditionError if it does not.
PLIntervalMap restrict_to_arc(const PLCircleMap& f, const Rational& a, const Rational& length);

// --- text format -----------------------------------------------------------

std::string serialize(const PLCircleMap& f);
std::string serialize(const PLIntervalMap& f);

/// A parsed map file is either a circle map or an interval map.
struct MapFile {
  bool is_interval = false;
  PLCircleMap circle;
  PLIntervalMap interval;
};

/// Throws ParseError carrying the offending line number.
MapFile parse_map(std::string_view text);
PLCircleMap parse_circle_map(std::string_view text);
PLIntervalMap parse_interval_map(std::string_view text);

}  // namespace plcircle
