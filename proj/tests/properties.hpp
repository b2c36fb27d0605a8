#pragma once

// Property sweeps over word balls shared by the unit tests and the
// acceptance runner.

#include "plcircle/dynamics.hpp"
#include "plcircle/group_structure.hpp"
#include "plcircle/rotation.hpp"

#include <string>
#include <vector>

namespace plcircle::test {

struct SweepReport {
  long pairs = 0;
  long equal_rotation_pairs = 0;
  long commutators = 0;
  long lift_checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Points to test from a fixed set: isolated points, closed endpoints and
/// one interior point per nondegenerate arc.
inline std::vector<Rational> sample_fixed_points(const ArcSet& fix) {
  std::vector<Rational> out;
  if (fix.is_full()) return {Rational(0), Rational(1, 3)};
  for (const Arc& a : fix.arcs()) {
    if (a.closed_left) out.push_back(a.start.value());
    if (a.is_point()) continue;
    if (a.closed_right) out.push_back(a.end.value());
    out.push_back(frac(a.start.value() + a.length() / 2));
  }
  return out;
}

/// Over ball pairs (u, v) with |u| + |v| <= word_length:
///   rot(u) = rot(v) exact  =>  u v^-1 has a fixed point;
///   [u, v] has a fixed point;
///   for each sampled fixed point s of [u, v] and lifts U, V drawn from the
///   hat lifts and the designated lifts shifted by offsets in
///   [-offset_range, offset_range], [U, V](s) = s.
inline SweepReport lemma_sweep(const GroupGens& gens, long word_length, long q_max,
                               long offset_range = 2) {
  SweepReport rep;
  const auto ball = word_ball(gens, word_length);
  RotationCache rot(q_max);
  auto fail = [&](const std::string& what, const BallElement& u, const BallElement& v) {
    if (rep.failures.size() < 10)
      rep.failures.push_back(what + " at u=" + to_string(u.word) + ", v=" + to_string(v.word));
  };
  for (const BallElement& u : ball) {
    for (const BallElement& v : ball) {
      if (u.length + v.length > word_length) continue;
      ++rep.pairs;
      const auto& ru = rot.get(u.map);
      const auto& rv = rot.get(v.map);
      if (ru.is_exact() && rv.is_exact() && ru.exact().value == rv.exact().value) {
        ++rep.equal_rotation_pairs;
        if (fixed_set(compose(u.map, inverse(v.map))).empty()) fail("u v^-1 has no fixed point", u, v);
      }
      const PLCircleMap comm =
          compose(compose(u.map, v.map), compose(inverse(u.map), inverse(v.map)));
      ++rep.commutators;
      const ArcSet fix = fixed_set(comm);
      if (fix.empty()) {
        fail("[u,v] has no fixed point", u, v);
        continue;
      }
      std::vector<LiftMap> us{hat_lift(u.map)}, vs{hat_lift(v.map)};
      for (long k = -offset_range; k <= offset_range; ++k) {
        us.push_back(LiftMap{u.map, Integer(k)});
        vs.push_back(LiftMap{v.map, Integer(k)});
      }
      for (const Rational& s : sample_fixed_points(fix)) {
        for (const LiftMap& U : us) {
          for (const LiftMap& V : vs) {
            ++rep.lift_checks;
            const Rational image = U(V(U.inverse_at(V.inverse_at(s))));
            if (image != s) fail("[U,V] moves the lifted point " + to_string(s), u, v);
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace plcircle::test
