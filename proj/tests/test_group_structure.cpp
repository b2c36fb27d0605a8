#include "properties.hpp"
#include "support.hpp"

#include "plcircle/group_structure.hpp"
#include "plcircle/thompson.hpp"

#include <doctest.h>

#include <set>

using namespace plcircle;
using plcircle::test::R;

namespace {

PLCircleMap bump_c() { return squeeze(test::bump_up(), 0, R("1/2")); }

GroupGens c_x2() { return {{"c", bump_c()}, {"x", xn_map(2)}}; }

/// Two rotation-zero maps pushing clockwise whose supports cover the circle.
GroupGens figure_one_pair() {
  return {{"f", squeeze(test::bump_up(), 0, R("3/4"))},
          {"g", squeeze(test::bump_up(), R("1/2"), R("3/4"))}};
}

bool contains_map(const std::vector<BallElement>& ball, const PLCircleMap& m) {
  for (const auto& e : ball)
    if (e.map == m) return true;
  return false;
}

}  // namespace

TEST_CASE("g0_test examples") {
  const auto [a, b] = solodov_pair();
  CHECK(g0_test(a));
  CHECK_FALSE(g0_test(PLCircleMap::rotation(R("1/4"))));
  CHECK(g0_test(compose(compose(b, a), compose(b, a))));
}

TEST_CASE("word_ball") {
  const auto ball = word_ball({{"r", PLCircleMap::rotation(R("1/4"))}}, 3);
  REQUIRE(ball.size() == 4);
  CHECK(ball[0].map.is_identity());
  CHECK(ball[0].word.empty());
  CHECK(to_string(ball[1].word) == "r");
  CHECK(to_string(ball[2].word) == "r^-1");
  CHECK(ball[3].length == 2);
  for (const auto& e : ball) CHECK(evaluate_word(e.word, {{"r", PLCircleMap::rotation(R("1/4"))}}) == e.map);
  CHECK(word_ball(c_x2(), 0).size() == 1);
}

TEST_CASE("rot_hom_check examples") {
  const auto rr = rot_hom_check({{"p", PLCircleMap::rotation(R("1/3"))}, {"q", PLCircleMap::rotation(R("1/5"))}}, 4, 15);
  CHECK(rr.passed());
  CHECK(rr.pairs_checked > 0);

  const auto fig = rot_hom_check(figure_one_pair(), 2, 8);
  REQUIRE_FALSE(fig.passed());
  const auto& cx = *fig.counterexample;
  CHECK(to_string(cx.u) == "f");
  CHECK(to_string(cx.v) == "g");
  CHECK(cx.rot_u == 0);
  CHECK(cx.rot_v == 0);
  // fg is fixed-point free.
  const auto gens = figure_one_pair();
  CHECK(fixed_set(compose(gens.at("f"), gens.at("g"))).empty());
  if (cx.rot_uv.is_exact()) CHECK(cx.rot_uv.exact().value != 0);

  const auto F = rot_hom_check({{"x0", thompson_x0().to_circle()}, {"x1", thompson_x1().to_circle()}}, 3, 4);
  CHECK(F.passed());

  CHECK_THROWS_AS(rot_hom_check({{"x", xn_map(3)}}, 2, 2), Inconclusive);
}

TEST_CASE("structure_decomposition of a rotation group") {
  const auto d = structure_decomposition({{"r", PLCircleMap::rotation(R("1/4"))}}, 8, 3);
  CHECK(d.quotient == std::vector<Rational>{0, R("1/4"), R("1/2"), R("3/4")});
  CHECK(d.orbit.size() == 4);
  REQUIRE(d.fundamental_domain.size() == 1);
  CHECK(d.fundamental_domain[0] == Arc::open(0, R("1/4")));
  CHECK(d.h0_generators[0].empty());
  for (const auto& [r, m] : d.quotient_section) CHECK(rotation_number(m, 8).exact().value == r);
}

TEST_CASE("structure_decomposition of <c, X2>") {
  const auto d = structure_decomposition(c_x2(), 8, 3);
  CHECK(d.base_point == CirclePoint(0));
  CHECK(d.orbit == std::vector<CirclePoint>{CirclePoint(0), CirclePoint(R("1/2"))});
  REQUIRE(d.fundamental_domain.size() == 1);
  CHECK(d.fundamental_domain[0] == Arc::open(0, R("1/2")));
  CHECK(d.quotient == std::vector<Rational>{0, R("1/2")});
  REQUIRE(d.h0_generators.size() == 1);
  REQUIRE(d.h0_generators[0].size() == 1);
  CHECK(d.h0_generators[0][0] == test::bump_up());
  // The translates of the domain are disjoint.
  const ArcSet D({d.fundamental_domain[0]});
  CHECK(is_disjoint(D, image(d.quotient_section.at(R("1/2")), D)));
}

TEST_CASE("structure_decomposition of <c>") {
  const auto d = structure_decomposition({{"c", bump_c()}}, 8, 2);
  CHECK(d.orbit == std::vector<CirclePoint>{CirclePoint(0)});
  CHECK(d.quotient == std::vector<Rational>{0});
  REQUIRE(d.fundamental_domain.size() == 1);
  CHECK(d.fundamental_domain[0].length() == 1);
  CHECK(to_string(d.fundamental_domain[0]) == "(0,1)");
  // c has support (0,1/2), a proper sub-arc of the punctured circle.
  REQUIRE(d.h0_generators[0].size() == 1);
  CHECK(d.h0_generators[0][0] == restrict_to_arc(bump_c(), 0, 1));
}

TEST_CASE("structure_decomposition failures") {
  const auto [a, b] = solodov_pair();
  CHECK_THROWS_AS(structure_decomposition({{"a", a}, {"b", b}}, 8, 2), HypothesisFailure);
  CHECK_THROWS_AS(structure_decomposition(figure_one_pair(), 8, 2), HypothesisFailure);
}

TEST_CASE("decomposition round trip") {
  for (const GroupGens& gens :
       {c_x2(), GroupGens{{"r", PLCircleMap::rotation(R("1/4"))}},
        GroupGens{{"c", squeeze(test::bump_up(), 0, R("1/4"))}, {"x", xn_map(3)}}}) {
    const auto d = structure_decomposition(gens, 8, 3);
    const auto re = reassembled_generators(d);
    const auto big = word_ball(re, 3);
    for (const auto& e : word_ball(gens, 1)) CHECK(contains_map(big, e.map));
  }
}

TEST_CASE("quotient consistency") {
  const GroupGens gens = wreath_FT_generators(6);
  const long L = 3;
  const auto ball = word_ball(gens, L);
  RotationCache rc(720);
  std::set<Rational> values;
  for (const auto& e : ball) {
    REQUIRE(rc.get(e.map).is_exact());
    values.insert(rc.get(e.map).exact().value);
  }
  for (const auto& u : ball)
    for (const auto& v : ball)
      if (u.length + v.length <= L)
        CHECK(values.count(frac(rc.get(u.map).exact().value + rc.get(v.map).exact().value)) == 1);
}

TEST_CASE("invariant_measure examples") {
  const auto m4 = invariant_measure({{"r", PLCircleMap::rotation(R("1/4"))}}, 8, 2);
  REQUIRE(std::holds_alternative<AtomicMeasure>(m4));
  CHECK(std::get<AtomicMeasure>(m4).atoms.size() == 4);
  CHECK(measure_arc(m4, Arc{CirclePoint(0), CirclePoint(R("1/2")), true, false}) == R("1/2"));
  CHECK(measure_set(m4, ArcSet::full()) == 1);

  const auto m = invariant_measure(c_x2(), 8, 3);
  REQUIRE(std::holds_alternative<AtomicMeasure>(m));
  CHECK(std::get<AtomicMeasure>(m).atoms == std::vector<CirclePoint>{CirclePoint(0), CirclePoint(R("1/2"))});
  CHECK(measure_arc(m, Arc::closed(0, R("1/4"))) == R("1/2"));

  const auto mc = invariant_measure({{"c", bump_c()}}, 8, 2);
  REQUIRE(std::holds_alternative<AtomicMeasure>(mc));
  CHECK(std::get<AtomicMeasure>(mc).atoms == std::vector<CirclePoint>{CirclePoint(0)});
  CHECK(measure_arc(mc, Arc::point(0)) == 1);

  const auto [a, b] = solodov_pair();
  CHECK_THROWS_AS(invariant_measure({{"a", a}, {"b", b}}, 8, 2), HypothesisFailure);
}

TEST_CASE("atomic measure is invariant") {
  const GroupGens gens = c_x2();
  const auto m = invariant_measure(gens, 8, 3);
  const auto& atoms = std::get<AtomicMeasure>(m).atoms;
  test::Rng rng(501);
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < 50; ++k) {
    const Arc A{atoms[pick(rng)], atoms[pick(rng)], coin(rng), coin(rng)};
    for (const auto& [name, g] : gens) CHECK(measure_arc(m, image(g, A)) == measure_arc(m, A));
  }
}

TEST_CASE("stieltjes table grows with the word length") {
  const GroupGens gens{{"u", qz_embed(R("1/5"))}, {"v", qz_embed(R("1/6"))}};
  const auto t2 = stieltjes_measure(gens, 720, 2);
  const auto t3 = stieltjes_measure(gens, 720, 3);
  CHECK(t2.base_point == t3.base_point);
  CHECK(t2.samples.size() <= t3.samples.size());
  test::Rng rng(502);
  for (int k = 0; k < 40; ++k) {
    const Rational x = test::random_rational(rng, 60);
    CHECK(t2.value_at(CirclePoint(x)) <= t3.value_at(CirclePoint(x)));
    const Arc A = Arc::closed(t2.base_point.value(), x);
    CHECK(measure_arc(InvariantMeasure(t2), A) <= measure_arc(InvariantMeasure(t3), A));
  }
  // phibar is nondecreasing along the circle from the base point.
  for (std::size_t i = 0; i + 1 < t3.samples.size(); ++i)
    CHECK(t3.samples[i].second <= t3.samples[i + 1].second);
}

TEST_CASE("wreath_embed_finite examples") {
  const auto g4 = wreath_embed_finite({}, 4);
  REQUIRE(g4.size() == 1);
  CHECK(g4.at("top") == PLCircleMap::rotation(R("1/4")));

  const auto g2 = wreath_embed_finite({test::bump_up()}, 2);
  REQUIRE(g2.size() == 2);
  CHECK(g2.at("top") == PLCircleMap::rotation(R("1/2")));
  const PLCircleMap h = g2.at("h1");
  CHECK(h == squeeze(test::bump_up(), 0, R("1/2")));
  const PLCircleMap ht = conjugate(h, g2.at("top"));
  CHECK(compose(h, ht) == compose(ht, h));
  CHECK(compose(compose(h, ht), compose(inverse(h), inverse(ht))).is_identity());
  CHECK(wreath_structure_check(g2, 2));

  const auto g1 = wreath_embed_finite({test::bump_up()}, 1);
  CHECK(g1.at("top").is_identity());
  CHECK(g1.at("h1") == test::bump_up().to_circle());
  CHECK(wreath_structure_check(g1, 1));

  CHECK(wreath_structure_check(wreath_embed_finite({thompson_x0(), thompson_x1()}, 3), 3));
  // A base generator too wide for its slot breaks the certificate.
  GroupGens bad = g2;
  bad["h1"] = squeeze(test::bump_up(), 0, R("3/4"));
  CHECK_FALSE(wreath_structure_check(bad, 2));
}

TEST_CASE("equal rotation, commutator and lift-commutator properties") {
  const GroupGens gens = wreath_embed_finite({thompson_x0(), test::bump_up()}, 3);
  const auto rep = test::lemma_sweep(gens, 3, 60);
  for (const auto& f : rep.failures) INFO(f);
  CHECK(rep.ok());
  CHECK(rep.equal_rotation_pairs > 0);
  CHECK(rep.lift_checks > 0);
}

TEST_CASE("FIP coherence on a wreath group") {
  const GroupGens gens = wreath_FT_generators(2);
  std::vector<PLCircleMap> zero;
  for (const auto& e : word_ball(gens, 3))
    if (g0_test(e.map)) zero.push_back(e.map);
  CHECK_FALSE(common_fixed_set(zero).empty());
}
