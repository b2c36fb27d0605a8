#include "plcircle/thompson.hpp"

#include <map>
#include <mutex>

namespace plcircle {

PartitionScheme PartitionScheme::standard(int n) {
  if (n < 2) throw PreconditionError("partition scheme needs n >= 2");
  PartitionScheme s;
  s.n = n;
  Rational piece(1);
  for (int k = 0; k < 2 * n - 2; ++k) {
    piece /= 2;
    s.proportions.push_back(piece);
  }
  s.proportions.push_back(piece);
  return s;
}

bool PartitionScheme::valid() const {
  if (n < 2 || proportions.size() != static_cast<std::size_t>(2 * n - 1)) return false;
  Rational sum(0);
  for (const Rational& p : proportions) {
    if (p <= 0 || p > 1 || numerator(p) != 1 || !is_power_of_two(p)) return false;
    sum += p;
  }
  return sum == 1;
}

bool t_membership(const PLCircleMap& f) {
  const auto& pts = f.breakpoints();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!is_dyadic(pts[i].x) || !is_dyadic(pts[i].y)) return false;
    if (!is_power_of_two(f.slope(i))) return false;
  }
  return true;
}

bool f_membership(const PLCircleMap& f) {
  return f.breakpoints().front().y == 0 && t_membership(f);
}

bool f_membership(const PLIntervalMap& f) { return f_membership(f.to_circle()); }

namespace {

std::mutex memo_mutex;
std::map<int, std::vector<Rational>> partition_memo;
std::map<int, PLCircleMap> xn_memo;

void check_level(int n) {
  if (n < 1 || n > kMaxXnLevel)
    throw PreconditionError("X_n is available for 1 <= n <= " + std::to_string(kMaxXnLevel));
}

// Caller holds memo_mutex.
const std::vector<Rational>& partition_locked(int n) {
  if (auto it = partition_memo.find(n); it != partition_memo.end()) return it->second;
  std::vector<Rational> cuts;
  if (n == 1) {
    cuts = {Rational(0), Rational(1, 2), Rational(1)};
  } else if (n == 2) {
    cuts = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  } else {
    // Keep the J's, cut every I by the level-n scheme.
    const auto& prev = partition_locked(n - 1);
    const PartitionScheme scheme = PartitionScheme::standard(n);
    cuts.push_back(prev.front());
    for (std::size_t k = 0; k + 1 < prev.size(); ++k) {
      if (k % 2 == 0) {
        cuts.push_back(prev[k + 1]);
        continue;
      }
      const Rational len = prev[k + 1] - prev[k];
      Rational at = prev[k];
      for (std::size_t j = 0; j + 1 < scheme.proportions.size(); ++j) {
        at += scheme.proportions[j] * len;
        cuts.push_back(at);
      }
      cuts.push_back(prev[k + 1]);
    }
  }
  return partition_memo.emplace(n, std::move(cuts)).first->second;
}

// Sends interval k of the partition linearly onto interval k + shift.
PLCircleMap shift_map(const std::vector<Rational>& cuts, std::size_t shift) {
  const std::size_t count = cuts.size() - 1;
  shift %= count;
  std::vector<Breakpoint> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t target = k + shift;
    Rational y = target >= count ? cuts[target - count] + 1 : cuts[target];
    pts.push_back(Breakpoint{cuts[k], std::move(y)});
  }
  return PLCircleMap::from_lift_points(std::move(pts));
}

}  // namespace

const std::vector<Rational>& xn_partition(int n) {
  check_level(n);
  std::lock_guard lock(memo_mutex);
  return partition_locked(n);
}

const PLCircleMap& xn_map(int n) {
  check_level(n);
  std::lock_guard lock(memo_mutex);
  if (auto it = xn_memo.find(n); it != xn_memo.end()) return it->second;
  PLCircleMap x = n == 1 ? PLCircleMap::identity() : shift_map(partition_locked(n), 2);
  return xn_memo.emplace(n, std::move(x)).first->second;
}

int qz_level(const Rational& x) {
  const Integer q = denominator(frac(x));
  Integer fact(1);
  for (int n = 1;; ++n) {
    fact *= n;
    if (fact % q == 0) return n;
  }
}

PLCircleMap qz_embed(const Rational& x) {
  const Rational r = frac(x);
  const int n = qz_level(r);
  check_level(n);
  if (r == 0) return PLCircleMap::identity();
  Integer fact(1);
  for (int k = 2; k <= n; ++k) fact *= k;
  const Integer m = numerator(r) * (fact / denominator(r));
  // X_n^m is the shift by 2m on the same partition.
  std::lock_guard lock(memo_mutex);
  return shift_map(partition_locked(n), 2 * m.convert_to<std::size_t>());
}

Arc qz_wandering_interval() { return Arc::closed(Rational(0), Rational(1, 4)); }

PLIntervalMap thompson_x0() {
  return PLIntervalMap({{Rational(0), Rational(0)},
                        {Rational(1, 2), Rational(1, 4)},
                        {Rational(3, 4), Rational(1, 2)},
                        {Rational(1), Rational(1)}});
}

PLIntervalMap thompson_x1() {
  return PLIntervalMap({{Rational(0), Rational(0)},
                        {Rational(1, 2), Rational(1, 2)},
                        {Rational(3, 4), Rational(5, 8)},
                        {Rational(7, 8), Rational(3, 4)},
                        {Rational(1), Rational(1)}});
}

CircleGens wreath_FT_generators(long q) {
  if (q < 1) throw PreconditionError("q must be positive");
  const Arc j = qz_wandering_interval();
  return {{"top", qz_embed(Rational(1, q))},
          {"x0", squeeze(thompson_x0(), j.start.value(), j.length())},
          {"x1", squeeze(thompson_x1(), j.start.value(), j.length())}};
}

SolodovPair solodov_pair() {
  // f on [0, 1/2] is 4t, then t + 9/32, then t/4 + 3/8; here rescaled to [0, 1].
  const PLIntervalMap f({{Rational(0), Rational(0)},
                         {Rational(3, 16), Rational(3, 4)},
                         {Rational(1, 4), Rational(13, 16)},
                         {Rational(1), Rational(1)}});
  const PLCircleMap half = squeeze(f, Rational(0), Rational(1, 2));
  const PLCircleMap a = compose(half, conjugate(half, PLCircleMap::rotation(Rational(1, 2))));
  const PLCircleMap b = conjugate(a, PLCircleMap::rotation(Rational(1, 4)));
  return {a, b};
}

std::array<Arc, 4> solodov_J() {
  return {Arc::closed(Rational(0), Rational(1, 2)), Arc::closed(Rational(1, 4), Rational(3, 4)),
          Arc::closed(Rational(1, 2), Rational(0)), Arc::closed(Rational(3, 4), Rational(1, 4))};
}

std::array<Arc, 4> solodov_R() {
  return {Arc::closed(Rational(1, 8), Rational(1, 4)), Arc::closed(Rational(3, 8), Rational(1, 2)),
          Arc::closed(Rational(5, 8), Rational(3, 4)), Arc::closed(Rational(7, 8), Rational(0))};
}

}  // namespace plcircle
