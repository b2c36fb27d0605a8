#include "plcircle/rotation.hpp"

#include <algorithm>

namespace plcircle {

namespace {

Integer ceil_int(const Rational& r) { return -floor_int(-r); }

// Right-hand slope of a lift at t, and the slope just to the left of t.
std::pair<Rational, Rational> one_sided_slopes(const LiftMap& lift, const Rational& t) {
  const auto& pts = lift.base.breakpoints();
  const Rational right = lift.base.slope_at(t);
  std::size_t i = pts.size() - 1;
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (pts[j].x < t) i = j;
  return {lift.base.slope(i), right};
}

// Chooses t in [0,1) with lift(t) = t + p for some integer p. Attracting
// solutions (slope below 1 on both sides) are preferred, since those are the
// ones a contraction argument produces; otherwise the smallest solution wins.
std::optional<std::pair<Rational, Integer>> choose_translated_point(const LiftMap& lift) {
  const auto& pts = lift.base.breakpoints();
  std::optional<std::pair<Rational, Integer>> smallest;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Rational a = pts[i].x;
    const Rational b = lift.base.segment_end(i);
    const Rational va = lift(a) - a;
    const Rational vb = lift(b) - b;
    const Integer lo = ceil_int(std::min(va, vb));
    const Integer hi = floor_int(std::max(va, vb));
    if (lo > hi) continue;
    if (va == vb) {
      // a whole segment of neutral solutions
      if (!smallest) smallest = std::make_pair(a, lo);
      continue;
    }
    // Displacement is affine and strictly monotone here, so each integer in
    // range gives one root, ordered by distance from va.
    const bool rising = va < vb;
    for (Integer p = rising ? lo : hi; rising ? p <= hi : p >= lo; rising ? ++p : --p) {
      const Rational t = a + (Rational(p) - va) * (b - a) / (vb - va);
      if (t >= 1) break;  // the point 1 is 0, handled by the first segment
      if (!smallest) smallest = std::make_pair(t, p);
      const auto [left, right] = one_sided_slopes(lift, t);
      if (left < 1 && right < 1) return std::make_pair(t, p);
    }
  }
  return smallest;
}

}  // namespace

std::optional<ExactRotation> periodic_point(const LiftMap& hat, long q) {
  LiftMap lq = power(hat, q);
  auto hit = choose_translated_point(lq);
  if (!hit) return std::nullopt;
  ExactRotation e;
  e.period = q;
  e.witness = CirclePoint(hit->first);
  e.translation = hit->second;
  e.value = frac(Rational(hit->second, Integer(q)));
  return e;
}

RotationResult rotation_number(const PLCircleMap& f, long q_max, long iterations) {
  if (q_max < 1) throw PreconditionError("q_max must be at least 1");
  if (iterations < 1) throw PreconditionError("iteration count must be at least 1");
  const LiftMap hat = hat_lift(f);

  LiftMap lq = hat;
  for (long q = 1; q <= q_max; ++q) {
    if (q > 1) lq = compose(hat, lq);
    if (auto hit = choose_translated_point(lq)) {
      ExactRotation e;
      e.period = q;
      e.witness = CirclePoint(hit->first);
      e.translation = hit->second;
      e.value = frac(Rational(hit->second, Integer(q)));
      return e;
    }
  }

  const LiftMap ln = power(hat, iterations);
  const Rational n(iterations);
  Rational lo, hi;
  bool first = true;
  for (const auto& b : ln.base.breakpoints()) {
    Rational v = (ln(b.x) - b.x) / n;
    if (first || v < lo) lo = v;
    if (first || v > hi) hi = v;
    first = false;
  }
  if (lo == hi) {
    // F^N - id is constant, so rot(f) = lo exactly and a periodic point of
    // period denominator(lo) must exist.
    const Integer d = denominator(lo);
    if (auto e = periodic_point(hat, d.convert_to<long>())) return *e;
  }
  return RotationEnclosure{lo, hi, iterations};
}

RecurrenceWitness recurrence_witness(const PLCircleMap& f, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) throw PreconditionError("epsilon must lie in (0,1)");
  const LiftMap hat = hat_lift(f);
  std::vector<CirclePoint> orbit{CirclePoint(Rational(0))};
  // Pigeonhole on ceil(1/epsilon) cells bounds the search.
  for (;;) {
    CirclePoint next = f(orbit.back());
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      if (circle_distance(orbit[i], next) < epsilon) {
        RecurrenceWitness w;
        w.n = static_cast<long>(orbit.size() - i);
        w.x = orbit[i];
        Rational t = w.x.value();
        for (long j = 0; j < w.n; ++j) t = hat(t);
        const Rational d = t - w.x.value();
        w.k = round_int(d);
        w.delta = d - Rational(w.k);
        return w;
      }
    }
    orbit.push_back(std::move(next));
  }
}

namespace {

// Next breakpoint of the lift strictly above s.
Rational next_lift_breakpoint(const PLCircleMap& f, const Rational& s) {
  const Integer n = floor_int(s);
  const Rational u = s - Rational(n);
  for (const auto& b : f.breakpoints())
    if (b.x > u) return b.x + Rational(n);
  return Rational(n + 1);
}

}  // namespace

RationalInsertion rational_insertion(const PLCircleMap& f, const PLCircleMap& g) {
  const LiftMap fh = hat_lift(f);
  const LiftMap gh = hat_lift(g);
  std::vector<Rational> xs;
  for (const auto& b : f.breakpoints()) xs.push_back(b.x);
  for (const auto& b : g.breakpoints()) xs.push_back(b.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  Rational min_gap;
  std::vector<Breakpoint> mid;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Rational fv = fh(xs[i]);
    const Rational gv = gh(xs[i]);
    const Rational gap = gv - fv;
    if (gap <= 0) throw PreconditionError("hat lifts are not strictly ordered (f < g fails)");
    if (i == 0 || gap < min_gap) min_gap = gap;
    mid.push_back(Breakpoint{xs[i], (fv + gv) / 2});
  }
  const Rational h0_at_zero = mid.front().y;
  const LiftMap h0{PLCircleMap::from_lift_points(std::move(mid)), floor_int(h0_at_zero)};

  RationalInsertion out;
  out.epsilon = min_gap / 2;
  const Rational third = out.epsilon / 3;
  out.recurrence = recurrence_witness(h0.base, third);
  const long n = out.recurrence.n;
  const Rational x = out.recurrence.x.value();
  const Rational target = x + Rational(out.recurrence.k);

  // phi(t) = (h0 + t)^n(x) is continuous, increasing and piecewise affine in t.
  // Walk its affine pieces rightwards from a point where phi <= target.
  auto phi = [&](const Rational& t, Rational& slope, Rational& next_break) {
    Rational s = x;
    Rational ds(0);
    bool have_break = false;
    for (long j = 0; j < n; ++j) {
      if (ds > 0) {
        Rational cross = t + (next_lift_breakpoint(h0.base, s) - s) / ds;
        if (!have_break || cross < next_break) next_break = cross;
        have_break = true;
      }
      ds = h0.base.slope_at(s) * ds + 1;
      s = h0(s) + t;
    }
    slope = ds;
    if (!have_break) next_break = third + 1;
    return s;
  };

  Rational slope, brk;
  Rational t(0);
  if (phi(t, slope, brk) > target) t = -third;
  for (;;) {
    const Rational v = phi(t, slope, brk);
    if (v == target) break;
    const Rational candidate = t + (target - v) / slope;
    if (candidate <= brk) {
      t = candidate;
      break;
    }
    t = brk;
    if (t > third) throw PreconditionError("rational insertion failed to bracket a periodic shift");
  }
  out.shift = t;
  out.map = compose(PLCircleMap::rotation(t), h0.base);
  return out;
}

}  // namespace plcircle
