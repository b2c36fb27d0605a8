#pragma once

// Shared fixtures and test-side oracles. The oracles deliberately avoid the
// library's own evaluation paths: lifts are evaluated by a linear scan over
// the raw breakpoint list and arc membership by direct comparisons.

#include "plcircle/arcs.hpp"
#include "plcircle/pl_map.hpp"
#include "plcircle/thompson.hpp"

#include <random>
#include <string_view>
#include <vector>

namespace plcircle::test {

inline Rational R(std::string_view s) { return parse_rational(s); }

// --- oracles ---------------------------------------------------------------

/// Designated lift of f at t, by linear interpolation over the breakpoints
/// extended one period to the right.
inline Rational oracle_lift(const PLCircleMap& f, const Rational& t) {
  const Rational shift = floor(t);
  const Rational u = t - shift;
  std::vector<Breakpoint> pts = f.breakpoints();
  pts.push_back({pts.front().x + 1, pts.front().y + 1});
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].x <= u && u < pts[i + 1].x) {
      const Rational s = (pts[i + 1].y - pts[i].y) / (pts[i + 1].x - pts[i].x);
      return pts[i].y + s * (u - pts[i].x) + shift;
    }
  }
  throw std::logic_error("oracle_lift: point outside [0,1)");
}

inline Rational oracle_eval(const PLCircleMap& f, const Rational& t) {
  return frac(oracle_lift(f, t));
}

/// Membership of t in a single arc, by offsets from the start.
inline bool oracle_arc_contains(const Arc& a, const Rational& t) {
  const Rational p = frac(t);
  const Rational s = a.start.value();
  const Rational e = a.end.value();
  if (s == e) {
    if (a.closed_left && a.closed_right) return p == s;
    return p != s;  // punctured circle
  }
  Rational off = p - s;
  if (off < 0) off += 1;
  Rational len = e - s;
  if (len < 0) len += 1;
  if (off == 0) return a.closed_left;
  if (off == len) return a.closed_right;
  return off < len;
}

inline bool oracle_contains(const std::vector<Arc>& arcs, const Rational& t) {
  for (const Arc& a : arcs)
    if (oracle_arc_contains(a, t)) return true;
  return false;
}

/// The Solodov pair assembled from the piecewise formula for f on [0, 1/2].
inline Rational oracle_solodov_f(const Rational& t) {
  if (t <= R("3/32")) return 4 * t;
  if (t <= R("1/8")) return t + R("9/32");
  return t / 4 + R("3/8");
}

inline Rational oracle_solodov_a(const Rational& t0) {
  const Rational t = frac(t0);
  if (t <= R("1/2")) return oracle_solodov_f(t);
  return frac(oracle_solodov_f(t - R("1/2")) + R("1/2"));
}

inline Rational oracle_solodov_b(const Rational& t0) {
  return frac(oracle_solodov_a(frac(t0 - R("1/4"))) + R("1/4"));
}

// --- generators ------------------------------------------------------------

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, long max_den = 64) {
  std::uniform_int_distribution<long> den(1, max_den);
  const long q = den(rng);
  std::uniform_int_distribution<long> num(0, q - 1);
  return Rational(num(rng), q);
}

inline Rational random_dyadic(Rng& rng, int max_exp = 6) {
  std::uniform_int_distribution<int> e(0, max_exp);
  const long q = 1L << e(rng);
  std::uniform_int_distribution<long> num(0, q - 1);
  return Rational(num(rng), q);
}

/// A random element of T: a short product of x0, x1 (fixing 0), their
/// inverses and rotations by multiples of 1/8.
inline PLCircleMap random_T(Rng& rng, int letters = 4) {
  static const std::vector<PLCircleMap> pool = [] {
    std::vector<PLCircleMap> p;
    const PLCircleMap x0 = thompson_x0().to_circle();
    const PLCircleMap x1 = thompson_x1().to_circle();
    p.push_back(x0);
    p.push_back(inverse(x0));
    p.push_back(x1);
    p.push_back(inverse(x1));
    for (int k = 1; k < 8; ++k) p.push_back(PLCircleMap::rotation(Rational(k, 8)));
    return p;
  }();
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  PLCircleMap f;
  for (int i = 0; i < letters; ++i) f = compose(pool[pick(rng)], f);
  return f;
}

/// A random arc with endpoints of denominator <= 16 and random flags.
inline Arc random_arc(Rng& rng) {
  Rational a = random_rational(rng, 16);
  Rational b = random_rational(rng, 16);
  std::bernoulli_distribution coin(0.5);
  if (a == b) return Arc::point(a);
  return {CirclePoint(a), CirclePoint(b), coin(rng), coin(rng)};
}

inline std::vector<Arc> random_arcs(Rng& rng, int max_count = 4) {
  std::uniform_int_distribution<int> count(0, max_count);
  std::vector<Arc> arcs;
  for (int i = count(rng); i > 0; --i) arcs.push_back(random_arc(rng));
  return arcs;
}

/// An interval map fixing only 0 and 1, pushing points right.
inline PLIntervalMap bump_up() {
  return PLIntervalMap({{Rational(0), Rational(0)},
                        {R("1/4"), R("1/2")},
                        {R("1/2"), R("3/4")},
                        {Rational(1), Rational(1)}});
}

/// A circle map viewed as an interval map; it must fix 0.
inline PLIntervalMap as_interval(const PLCircleMap& m) {
  std::vector<Breakpoint> p = m.breakpoints();
  p.push_back({Rational(1), Rational(1)});
  return PLIntervalMap(std::move(p));
}

}  // namespace plcircle::test
