#pragma once

// Group-level analyses of finitely generated PL circle groups: word balls,
// the rotation homomorphism test, the wreath decomposition for a finite
// rotation quotient, invariant measures and finite wreath embeddings.

#include "plcircle/arcs.hpp"
#include "plcircle/pl_map.hpp"
#include "plcircle/rotation.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace plcircle {

using GroupGens = CircleGens;

/// A structural hypothesis of an analysis failed; the message says which.
/// These are mathematical findings (often evidence of a free subgroup), not
/// usage errors.
class HypothesisFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An analysis needed an exact rotation number but only got an enclosure.
class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BallElement {
  Word word;
  PLCircleMap map;
  long length = 0;
};

/// Distinct elements of word length <= radius, each with a shortest word.
/// Ordered by length, then by discovery (generators by name, positive letter
/// before its inverse). The identity comes first.
std::vector<BallElement> word_ball(const GroupGens& gens, long radius);

/// Memoized exact rotation numbers at a fixed q_max.
class RotationCache {
 public:
  explicit RotationCache(long q_max) : q_max_(q_max) {}
  const RotationResult& get(const PLCircleMap& f);
  long q_max() const noexcept { return q_max_; }

 private:
  long q_max_;
  std::map<PLCircleMap, RotationResult> memo_;
};

/// f has a fixed point, i.e. rot(f) = 0.
bool g0_test(const PLCircleMap& f);

struct HomCounterexample {
  Word u;
  Word v;
  Rational rot_u;
  Rational rot_v;
  RotationResult rot_uv;
};

struct HomCheck {
  std::optional<HomCounterexample> counterexample;
  long pairs_checked = 0;
  bool passed() const noexcept { return !counterexample; }
};

/// Tests rot(uv) = rot(u) + rot(v) mod 1 over pairs of ball elements with
/// |u| + |v| <= word_length, ordered by |u| + |v|, then u, then v. An
/// enclosure for uv still certifies a mismatch when it excludes the expected
/// value or when that value has denominator <= q_max. Throws Inconclusive
/// otherwise, and when rot(u) or rot(v) is not exact.
HomCheck rot_hom_check(const GroupGens& gens, long word_length, long q_max);

struct WreathData {
  CirclePoint base_point;
  std::vector<CirclePoint> orbit;
  std::vector<Arc> fundamental_domain;
  /// Generators of H0 restricted (and affinely renormalized) to each
  /// fundamental-domain arc.
  std::vector<std::vector<PLIntervalMap>> h0_generators;
  /// rot(G) = {0, 1/d, ..., (d-1)/d}.
  std::vector<Rational> quotient;
  /// For each quotient value a group element with that rotation number;
  /// these are powers of the element named by section_word.
  std::map<Rational, PLCircleMap> quotient_section;
  Word section_word;
};

/// Wreath decomposition H0 wr Q for a group with finite rotation quotient.
///
/// The homomorphism check runs first on the word ball. The quotient is
/// generated by the generators' rotation numbers; the section consists of
/// powers of a ball element whose rotation number generates it. G0 is
/// generated by the Schreier elements sigma_i g sigma_j^-1; the base point
/// is the least point of their common fixed set. Throws HypothesisFailure
/// when a hypothesis fails and Inconclusive when a rotation number is only
/// enclosed.
WreathData structure_decomposition(const GroupGens& gens, long q_max, long word_length);

/// sigma o squeeze(h) o sigma^-1 for every H0 generator and section
/// element, together with the nontrivial section elements.
GroupGens reassembled_generators(const WreathData& data);

struct AtomicMeasure {
  std::vector<CirclePoint> atoms;
};

/// Lower approximation of phibar(a) = sup{rot(g) : s^g <= a} over a word
/// ball, a measured clockwise from the base point s.
struct StieltjesTable {
  CirclePoint base_point;
  long word_length = 0;
  /// (orbit point, phibar there), sorted by clockwise offset from the base.
  std::vector<std::pair<CirclePoint, Rational>> samples;

  /// phibar at the point p.
  Rational value_at(const CirclePoint& p) const;
};

using InvariantMeasure = std::variant<AtomicMeasure, StieltjesTable>;

/// Atomic measure on the orbit of the base point when the rotation quotient
/// is finite, else stieltjes_measure. Requires the homomorphism check to
/// pass (HypothesisFailure otherwise).
InvariantMeasure invariant_measure(const GroupGens& gens, long q_max, long word_length);

/// The word-length stamped table directly, whatever the quotient. Throws
/// Inconclusive if a ball element's rotation number is not exact.
StieltjesTable stieltjes_measure(const GroupGens& gens, long q_max, long word_length);

Rational measure_arc(const InvariantMeasure& m, const Arc& arc);
Rational measure_set(const InvariantMeasure& m, const ArcSet& set);

/// top = rho_{1/q} (the identity for q = 1) named "top", and each base
/// generator squeezed into [0, 1/q] named h1, h2, ...
GroupGens wreath_embed_finite(const std::vector<PLIntervalMap>& h0_gens, long q);

/// The structural certificate of a finite wreath embedding: top has exact
/// rotation number 1/q, and the top-conjugates of each base generator have
/// pairwise disjoint supports and commute.
bool wreath_structure_check(const GroupGens& gens, long q);

}  // namespace plcircle
