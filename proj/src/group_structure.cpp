#include "plcircle/group_structure.hpp"

#include "plcircle/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace plcircle {

std::vector<BallElement> word_ball(const GroupGens& gens, long radius) {
  if (radius < 0) throw PreconditionError("ball radius must be nonnegative");
  std::vector<std::pair<Word, PLCircleMap>> letters;
  for (const auto& [name, g] : gens) {
    letters.emplace_back(Word::generator(name, 1), g);
    letters.emplace_back(Word::generator(name, -1), inverse(g));
  }
  std::vector<BallElement> ball{BallElement{Word(), PLCircleMap::identity(), 0}};
  std::set<PLCircleMap> seen{ball.front().map};
  std::size_t layer_begin = 0;
  for (long len = 1; len <= radius; ++len) {
    const std::size_t layer_end = ball.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (const auto& [w, m] : letters) {
        PLCircleMap next = compose(m, ball[i].map);
        if (!seen.insert(next).second) continue;
        ball.push_back(BallElement{w * ball[i].word, std::move(next), len});
      }
    layer_begin = layer_end;
    if (layer_begin == ball.size()) break;
  }
  return ball;
}

const RotationResult& RotationCache::get(const PLCircleMap& f) {
  if (auto it = memo_.find(f); it != memo_.end()) return it->second;
  return memo_.emplace(f, rotation_number(f, q_max_)).first->second;
}

bool g0_test(const PLCircleMap& f) { return !fixed_set(f).empty(); }

namespace {

const Rational& exact_or_throw(RotationCache& cache, const BallElement& e) {
  const RotationResult& r = cache.get(e.map);
  if (!r.is_exact())
    throw Inconclusive("rotation number of " + to_string(e.word) + " is only enclosed in [" +
                       to_string(r.enclosure().lo) + ", " + to_string(r.enclosure().hi) +
                       "] at q_max " + std::to_string(cache.q_max()));
  return r.exact().value;
}

}  // namespace

HomCheck rot_hom_check(const GroupGens& gens, long word_length, long q_max) {
  if (word_length < 0) throw PreconditionError("word length must be nonnegative");
  if (q_max < 1) throw PreconditionError("q_max must be at least 1");
  const std::vector<BallElement> ball = word_ball(gens, word_length);
  RotationCache cache(q_max);
  HomCheck out;
  for (long total = 0; total <= word_length; ++total)
    for (const BallElement& u : ball) {
      if (u.length > total) break;
      for (const BallElement& v : ball) {
        if (u.length + v.length > total) break;
        if (u.length + v.length != total) continue;
        ++out.pairs_checked;
        const Rational ru = exact_or_throw(cache, u);
        const Rational rv = exact_or_throw(cache, v);
        const Rational expected = frac(ru + rv);
        const RotationResult& ruv = cache.get(compose(u.map, v.map));
        bool mismatch;
        if (ruv.is_exact()) {
          mismatch = ruv.exact().value != expected;
        } else if (denominator(expected) <= q_max) {
          // no periodic point of period <= q_max exists, so rot(uv) != expected
          mismatch = true;
        } else if (!ruv.enclosure().contains(expected)) {
          mismatch = true;
        } else {
          throw Inconclusive("rotation number of " + to_string(u.word * v.word) +
                             " is only enclosed and the enclosure contains " +
                             to_string(expected));
        }
        if (mismatch) {
          out.counterexample = HomCounterexample{u.word, v.word, ru, rv, ruv};
          return out;
        }
      }
    }
  return out;
}

// --- decomposition -------------------------------------------------------------

namespace {

// Least point of a nonempty closed set in the order of [0, 1).
Rational least_point(const ArcSet& s) {
  if (s.is_full() || s.contains(Rational(0))) return Rational(0);
  Rational best = s.arcs().front().start.value();
  for (const Arc& a : s.arcs()) best = std::min(best, a.start.value());
  return best;
}

struct Quotient {
  Integer d;
  PLCircleMap sigma;  // rot(sigma) generates the quotient
  Word sigma_word;
  Rational sigma_rot;
  std::map<Rational, PLCircleMap> section;
};

Quotient quotient_and_section(const GroupGens& gens, const std::vector<BallElement>& ball,
                              RotationCache& cache, long word_length) {
  Quotient q;
  q.d = 1;
  for (const auto& [name, g] : gens) {
    const RotationResult& r = cache.get(g);
    if (!r.is_exact())
      throw Inconclusive("generator " + name +
                         " has no periodic point within q_max; the rotation quotient may be "
                         "infinite");
    const Integer den = denominator(r.exact().value);
    q.d = q.d / boost::multiprecision::gcd(q.d, den) * den;
  }
  bool found = false;
  for (const BallElement& e : ball) {
    const Rational r = exact_or_throw(cache, e);
    if (denominator(r) != q.d) continue;
    if (!found || r == Rational(1, q.d)) {
      q.sigma = e.map;
      q.sigma_word = e.word;
      q.sigma_rot = r;
      found = true;
      if (r == Rational(1, q.d)) break;
    }
  }
  if (!found)
    throw HypothesisFailure("no element with rotation number of order " + q.d.str() +
                            " within word length " + std::to_string(word_length));
  PLCircleMap p = PLCircleMap::identity();
  Rational r(0);
  for (Integer j = 0; j < q.d; ++j) {
    q.section.emplace(r, p);
    p = compose(q.sigma, p);
    r = frac(r + q.sigma_rot);
  }
  return q;
}

}  // namespace

WreathData structure_decomposition(const GroupGens& gens, long q_max, long word_length) {
  const HomCheck hom = rot_hom_check(gens, word_length, q_max);
  if (!hom.passed()) {
    const auto& c = *hom.counterexample;
    throw HypothesisFailure("rotation is not a homomorphism: rot(" + to_string(c.u) + " * " +
                            to_string(c.v) + ") != " + to_string(c.rot_u) + " + " +
                            to_string(c.rot_v) + " (free subgroup evidence)");
  }
  const std::vector<BallElement> ball = word_ball(gens, word_length);
  RotationCache cache(q_max);
  Quotient q = quotient_and_section(gens, ball, cache, word_length);

  // Schreier generators of G0 = ker(rot).
  std::vector<PLCircleMap> schreier;
  for (const auto& [ri, si] : q.section)
    for (const auto& [name, g] : gens) {
      const PLCircleMap sg = compose(si, g);
      const Rational target = frac(ri + cache.get(g).exact().value);
      schreier.push_back(compose(sg, inverse(q.section.at(target))));
    }
  ArcSet common = ArcSet::full();
  for (const PLCircleMap& h : schreier) {
    const ArcSet fs = fixed_set(h);
    if (fs.empty())
      throw HypothesisFailure("a kernel element has no fixed point: rotation is not a homomorphism");
    common = set_intersection(common, fs);
  }
  if (common.empty())
    throw HypothesisFailure("empty common fixed set of G0 (free subgroup evidence)");

  WreathData out;
  out.base_point = CirclePoint(least_point(common));
  for (const auto& [r, s] : q.section) {
    out.quotient.push_back(r);
    out.orbit.push_back(s(out.base_point));
  }
  out.quotient_section = q.section;
  out.section_word = q.sigma_word;
  std::sort(out.orbit.begin(), out.orbit.end());
  out.orbit.erase(std::unique(out.orbit.begin(), out.orbit.end()), out.orbit.end());

  std::vector<Rational> pts;
  for (const CirclePoint& p : out.orbit) pts.push_back(p.value());
  const ArcSet orbit_set = ArcSet::points(pts);
  for (const auto& [name, g] : gens)
    if (image(g, orbit_set) != orbit_set)
      throw HypothesisFailure("orbit of the base point is not invariant under " + name);

  // Complement arcs, then the least-start arc of each section orbit.
  std::vector<Arc> complement;
  for (std::size_t i = 0; i < out.orbit.size(); ++i)
    complement.push_back(Arc::open(out.orbit[i].value(),
                                   out.orbit[(i + 1) % out.orbit.size()].value()));
  std::vector<bool> covered(complement.size(), false);
  for (std::size_t i = 0; i < complement.size(); ++i) {
    if (covered[i]) continue;
    out.fundamental_domain.push_back(complement[i]);
    for (const auto& [r, s] : q.section) {
      const Arc img = image(s, complement[i]);
      for (std::size_t j = 0; j < complement.size(); ++j)
        if (complement[j] == img) covered[j] = true;
    }
  }
  for (const Arc& dom : out.fundamental_domain) {
    std::vector<ArcSet> translates;
    for (const auto& [r, s] : q.section) translates.push_back(ArcSet({image(s, dom)}));
    for (std::size_t i = 0; i < translates.size(); ++i)
      for (std::size_t j = i + 1; j < translates.size(); ++j)
        if (!is_disjoint(translates[i], translates[j]))
          throw HypothesisFailure("translates of the fundamental domain overlap");
  }

  for (const Arc& dom : out.fundamental_domain) {
    std::vector<PLIntervalMap> hs;
    for (const PLCircleMap& h : schreier) {
      PLIntervalMap r = restrict_to_arc(h, dom.start.value(), dom.length());
      if (r.is_identity() || std::find(hs.begin(), hs.end(), r) != hs.end()) continue;
      hs.push_back(std::move(r));
    }
    out.h0_generators.push_back(std::move(hs));
  }
  return out;
}

GroupGens reassembled_generators(const WreathData& data) {
  GroupGens out;
  std::size_t j = 0;
  for (const auto& [r, s] : data.quotient_section) {
    if (!s.is_identity()) out.emplace("s" + std::to_string(j), s);
    const PLCircleMap s_inv = inverse(s);
    for (std::size_t i = 0; i < data.fundamental_domain.size(); ++i) {
      const Arc& dom = data.fundamental_domain[i];
      for (std::size_t k = 0; k < data.h0_generators[i].size(); ++k) {
        const PLCircleMap h = squeeze(data.h0_generators[i][k], dom.start.value(), dom.length());
        out.emplace("h" + std::to_string(i + 1) + "_" + std::to_string(k + 1) + "_" +
                        std::to_string(j),
                    compose(s, compose(h, s_inv)));
      }
    }
    ++j;
  }
  return out;
}

// --- measures ------------------------------------------------------------------

Rational StieltjesTable::value_at(const CirclePoint& p) const {
  const Rational off = clockwise_offset(base_point, p);
  Rational v(0);
  for (const auto& [pt, val] : samples) {
    if (clockwise_offset(base_point, pt) > off) break;
    v = val;
  }
  return v;
}

StieltjesTable stieltjes_measure(const GroupGens& gens, long q_max, long word_length) {
  const std::vector<BallElement> ball = word_ball(gens, word_length);
  RotationCache cache(q_max);
  ArcSet common = ArcSet::full();
  for (const BallElement& e : ball)
    if (exact_or_throw(cache, e) == 0) common = set_intersection(common, fixed_set(e.map));
  if (common.empty())
    throw HypothesisFailure("rotation-zero ball elements have no common fixed point "
                            "(free subgroup evidence)");
  StieltjesTable t;
  t.word_length = word_length;
  t.base_point = CirclePoint(least_point(common));
  std::map<Rational, Rational> best;  // offset -> max rot
  for (const BallElement& e : ball) {
    const Rational off = clockwise_offset(t.base_point, e.map(t.base_point));
    const Rational r = exact_or_throw(cache, e);
    auto [it, fresh] = best.emplace(off, r);
    if (!fresh && it->second < r) it->second = r;
  }
  Rational running(0);
  for (const auto& [off, r] : best) {
    running = std::max(running, r);
    t.samples.emplace_back(CirclePoint(t.base_point.value() + off), running);
  }
  return t;
}

InvariantMeasure invariant_measure(const GroupGens& gens, long q_max, long word_length) {
  const HomCheck hom = rot_hom_check(gens, word_length, q_max);
  if (!hom.passed())
    throw HypothesisFailure("rotation is not a homomorphism on the word ball "
                            "(free subgroup evidence)");
  bool finite = true;
  for (const auto& [name, g] : gens)
    if (!rotation_number(g, q_max).is_exact()) finite = false;
  if (!finite) return stieltjes_measure(gens, q_max, word_length);
  const WreathData data = structure_decomposition(gens, q_max, word_length);
  return AtomicMeasure{data.orbit};
}

Rational measure_arc(const InvariantMeasure& m, const Arc& arc) {
  if (const auto* atomic = std::get_if<AtomicMeasure>(&m)) {
    long count = 0;
    for (const CirclePoint& p : atomic->atoms)
      if (arc.contains(p)) ++count;
    return Rational(count, static_cast<long>(atomic->atoms.size()));
  }
  const auto& t = std::get<StieltjesTable>(m);
  if (arc.is_point()) return Rational(0);
  if (arc.start == arc.end) return Rational(1);
  const Rational a = t.value_at(arc.start);
  const Rational b = t.value_at(arc.end);
  const bool passes_base = clockwise_offset(t.base_point, arc.end) <
                           clockwise_offset(t.base_point, arc.start);
  return passes_base ? 1 - a + b : b - a;
}

Rational measure_set(const InvariantMeasure& m, const ArcSet& set) {
  if (set.is_full()) return Rational(1);
  Rational total(0);
  for (const Arc& a : set.arcs()) total += measure_arc(m, a);
  return total;
}

// --- finite wreath embeddings ------------------------------------------------

GroupGens wreath_embed_finite(const std::vector<PLIntervalMap>& h0_gens, long q) {
  if (q < 1) throw PreconditionError("q must be positive");
  GroupGens out;
  out.emplace("top", PLCircleMap::rotation(Rational(1, q)));
  for (std::size_t i = 0; i < h0_gens.size(); ++i)
    out.emplace("h" + std::to_string(i + 1), squeeze(h0_gens[i], Rational(0), Rational(1, q)));
  return out;
}

bool wreath_structure_check(const GroupGens& gens, long q) {
  auto top_it = gens.find("top");
  if (top_it == gens.end()) return false;
  const PLCircleMap& top = top_it->second;
  const RotationResult r = rotation_number(top, q);
  if (!r.is_exact() || r.exact().value != frac(Rational(1, q))) return false;

  struct Conj {
    long k;
    PLCircleMap map;
    ArcSet supp;
  };
  std::vector<Conj> conj;
  for (const auto& [name, h] : gens) {
    if (name == "top") continue;
    for (long k = 0; k < q; ++k) {
      PLCircleMap c = conjugate(h, power(top, k));
      ArcSet s = support(c);
      conj.push_back(Conj{k, std::move(c), std::move(s)});
    }
  }
  for (std::size_t i = 0; i < conj.size(); ++i)
    for (std::size_t j = i + 1; j < conj.size(); ++j) {
      if (conj[i].k == conj[j].k) continue;
      if (!is_disjoint(conj[i].supp, conj[j].supp)) return false;
      if (compose(conj[i].map, conj[j].map) != compose(conj[j].map, conj[i].map)) return false;
    }
  return true;
}

}  // namespace plcircle
