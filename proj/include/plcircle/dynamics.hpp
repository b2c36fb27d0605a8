#pragma once

// Fixed sets, orbitals, free-subgroup certificates and the word searches
// that push intervals off themselves.

#include "plcircle/arcs.hpp"
#include "plcircle/pl_map.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace plcircle {

/// Bounds for every word search in the library.
struct SearchBudget {
  long max_word_length = 6;
  long max_m = 16;
  long max_n = 64;
  long max_K = 16;

  /// Parses "L,m,n,K". Throws ParseError on malformed or non-positive input.
  static SearchBudget parse(std::string_view text);
};

/// Exact Fix(f).
ArcSet fixed_set(const PLCircleMap& f);
/// Fix(f) of an interval map, with 0 and 1 identified.
ArcSet fixed_set(const PLIntervalMap& f);

/// S1 minus Fix(f): the union of the orbitals.
ArcSet support(const PLCircleMap& f);

/// The orbitals of f as open arcs. A fixed-point-free map has the whole
/// circle as its only orbital, which no Arc can express; that case returns
/// an empty list and callers should consult support() instead.
std::vector<Arc> support_components(const PLCircleMap& f);

/// True iff f moves the points of the orbital `orbital` clockwise.
bool moves_clockwise(const PLCircleMap& f, const Arc& orbital);

/// Intersection of the fixed sets. Every map must have a fixed point (rot 0);
/// throws PreconditionError naming the first that does not.
ArcSet common_fixed_set(const std::vector<PLCircleMap>& maps);

struct PingPongCertificate {
  Word gen1;
  Word gen2;
  long N = 1;
  ArcSet X1_plus;
  ArcSet X1_minus;
  ArcSet X2_plus;
  ArcSet X2_minus;
};

/// Builds absorbing half-neighbourhoods of the boundaries of Fix(f) and
/// Fix(g), shrinking them until the two families are disjoint, then raises
/// N up to budget.max_n until the certificate verifies. Requires Fix(f) and
/// Fix(g) nonempty and disjoint (PreconditionError otherwise).
std::optional<PingPongCertificate> ping_pong_search(const PLCircleMap& f, const PLCircleMap& g,
                                                    const SearchBudget& budget = {},
                                                    const std::string& name1 = "f",
                                                    const std::string& name2 = "g");

/// Checks disjointness, nonemptiness and the eight inclusions exactly.
/// Throws std::out_of_range for an unbound generator.
bool verify_ping_pong(const PingPongCertificate& cert, const CircleGens& gens);

/// Breadth-first search over freely reduced words in the generators and their
/// inverses (length up to budget.max_word_length) for one whose fixed set
/// misses [a + eps, b - eps]. Requires no common fixed point of the
/// generators inside (a, b) and 0 < eps < (b - a)/2.
std::optional<Word> orbital_cover_search(const IntervalGens& gens, const Rational& a,
                                         const Rational& b, const Rational& eps,
                                         const SearchBudget& budget = {});

struct ThrowOff {
  Word word;
  PLIntervalMap map;
};

/// True iff w moves [a + eps, b - eps] off itself.
bool displaces(const PLIntervalMap& w, const Rational& a, const Rational& b, const Rational& eps);

/// Searches pure powers of generators and orbital covers, then products
/// f^m g^n f^-m f^-K ordered by m + n + K, for an element displacing every
/// trimmed component. Each component must be an orbital of the group and
/// eps < (b - a)/2 for all of them.
std::optional<ThrowOff> throw_off_search(const IntervalGens& gens,
                                         const std::vector<std::pair<Rational, Rational>>& components,
                                         const Rational& eps, const SearchBudget& budget = {});

}  // namespace plcircle
