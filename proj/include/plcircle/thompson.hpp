#pragma once

// Thompson's groups F and T: membership, the maps X_n realizing Q/Z inside
// T, wreath generators F wr K, and the pair (a, b) of the Solodov example.

#include "plcircle/arcs.hpp"
#include "plcircle/pl_map.hpp"

#include <array>
#include <vector>

namespace plcircle {

/// Proportions for cutting an interval into 2n - 1 pieces whose lengths are
/// powers of 1/2: (1/2, 1/4, ..., 1/2^(2n-2), 1/2^(2n-2)).
struct PartitionScheme {
  int n = 2;
  std::vector<Rational> proportions;

  /// Throws PreconditionError if n < 2.
  static PartitionScheme standard(int n);
  bool valid() const;
};

/// Dyadic breakpoints and power-of-two slopes.
bool t_membership(const PLCircleMap& f);
/// t_membership plus f(0) = 0.
bool f_membership(const PLCircleMap& f);
bool f_membership(const PLIntervalMap& f);

/// Largest n accepted by xn_map.
inline constexpr int kMaxXnLevel = 7;

/// Partition of the circle into 2(n!) intervals J_{n,1}, I_{n,1}, ...,
/// returned as the 2(n!) + 1 cut points from 0 to 1. J_{n,1} = [0, 1/4]
/// for every n >= 2.
const std::vector<Rational>& xn_partition(int n);

/// The shift by 2 on xn_partition(n); X_1 is the identity. Results are
/// memoized. Throws PreconditionError unless 1 <= n <= kMaxXnLevel.
const PLCircleMap& xn_map(int n);

/// Least n with q | n!, for x = p/q in lowest terms.
int qz_level(const Rational& x);

/// The embedding Q/Z -> T: X_n^m with x = m / n! mod 1 and n = qz_level(x).
/// Throws PreconditionError when that n exceeds kMaxXnLevel.
PLCircleMap qz_embed(const Rational& x);

/// The arc J_{2,1} = [0, 1/4] permuted freely by the image of qz_embed.
Arc qz_wandering_interval();

/// The usual generators of F on [0, 1].
PLIntervalMap thompson_x0();
PLIntervalMap thompson_x1();

/// {top = qz_embed(1/q), x0 and x1 squeezed onto [0, 1/4]}.
CircleGens wreath_FT_generators(long q);

struct SolodovPair {
  PLCircleMap a;
  PLCircleMap b;
};

SolodovPair solodov_pair();

/// J_1..J_4 and R_1..R_4 of the Solodov example, as closed arcs.
std::array<Arc, 4> solodov_J();
std::array<Arc, 4> solodov_R();

}  // namespace plcircle
