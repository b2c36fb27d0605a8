#include "plcircle/dynamics.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace plcircle {

SearchBudget SearchBudget::parse(std::string_view text) {
  std::vector<long> v;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      long x = std::stol(item, &used);
      if (used != item.size() || x <= 0) throw ParseError("budget entries must be positive integers");
      v.push_back(x);
    } catch (const std::logic_error&) {
      throw ParseError("budget entries must be positive integers, got '" + item + "'");
    }
  }
  if (v.size() != 4) throw ParseError("budget must have the form L,m,n,K");
  return SearchBudget{v[0], v[1], v[2], v[3]};
}

ArcSet fixed_set(const PLCircleMap& f) {
  if (f.is_identity()) return ArcSet::full();
  std::vector<Arc> arcs;
  const auto& pts = f.breakpoints();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Rational a = pts[i].x;
    const Rational b = f.segment_end(i);
    const Rational va = f.lift(a) - a;
    const Rational vb = f.lift(b) - b;
    if (va == vb) {
      if (denominator(va) == 1) arcs.push_back(Arc::closed(a, b));
      continue;
    }
    const Integer lo = -floor_int(-std::min(va, vb));
    const Integer hi = floor_int(std::max(va, vb));
    for (Integer p = lo; p <= hi; ++p)
      arcs.push_back(Arc::point(a + (Rational(p) - va) * (b - a) / (vb - va)));
  }
  return ArcSet(std::move(arcs));
}

ArcSet fixed_set(const PLIntervalMap& f) { return fixed_set(f.to_circle()); }

ArcSet support(const PLCircleMap& f) { return set_complement(fixed_set(f)); }

std::vector<Arc> support_components(const PLCircleMap& f) {
  ArcSet s = support(f);
  if (s.is_full()) return {};
  return s.arcs();
}

bool moves_clockwise(const PLCircleMap& f, const Arc& orbital) {
  const LiftMap hat = hat_lift(f);
  const Rational m = orbital.start.value() + orbital.length() / 2;
  return hat(m) > m;
}

ArcSet common_fixed_set(const std::vector<PLCircleMap>& maps) {
  ArcSet out = ArcSet::full();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    ArcSet fs = fixed_set(maps[i]);
    if (fs.empty())
      throw PreconditionError("map " + std::to_string(i + 1) +
                              " has no fixed point (nonzero rotation number)");
    out = set_intersection(out, fs);
  }
  return out;
}

// --- ping-pong ---------------------------------------------------------------

namespace {

struct Absorbing {
  ArcSet plus;
  ArcSet minus;
};

// Closed half-neighbourhoods of radius r at the ends of each orbital: the end
// the map flows toward is absorbing forwards, the other backwards.
Absorbing half_neighbourhoods(const PLCircleMap& f, const Rational& r) {
  std::vector<Arc> plus, minus;
  for (const Arc& o : support_components(f)) {
    const Rational p = o.start.value();
    const Rational q = p + o.length();
    Arc near_start = Arc::closed(p, p + r);
    Arc near_end = Arc::closed(q - r, q);
    if (moves_clockwise(f, o)) {
      plus.push_back(near_end);
      minus.push_back(near_start);
    } else {
      plus.push_back(near_start);
      minus.push_back(near_end);
    }
  }
  return {ArcSet(std::move(plus)), ArcSet(std::move(minus))};
}

bool absorbs(const PLCircleMap& f, const PLCircleMap& f_inv, const PLCircleMap& fN,
             const PLCircleMap& fN_inv, const ArcSet& plus, const ArcSet& minus,
             const ArcSet& other) {
  return is_subset(image(f, plus), plus) && is_subset(image(f_inv, minus), minus) &&
         is_subset(image(fN, other), plus) && is_subset(image(fN_inv, other), minus);
}

}  // namespace

std::optional<PingPongCertificate> ping_pong_search(const PLCircleMap& f, const PLCircleMap& g,
                                                    const SearchBudget& budget,
                                                    const std::string& name1,
                                                    const std::string& name2) {
  const ArcSet ff = fixed_set(f);
  const ArcSet fg = fixed_set(g);
  if (ff.empty() || fg.empty()) throw PreconditionError("both maps need a fixed point");
  if (!is_disjoint(ff, fg)) throw PreconditionError("fixed sets are not disjoint");

  std::vector<Rational> bd = ff.boundary();
  for (const Rational& x : fg.boundary()) bd.push_back(x);
  Rational gap(1);
  for (std::size_t i = 0; i < bd.size(); ++i)
    for (std::size_t j = i + 1; j < bd.size(); ++j)
      gap = std::min(gap, circle_distance(CirclePoint(bd[i]), CirclePoint(bd[j])));

  PingPongCertificate cert;
  cert.gen1 = Word::generator(name1);
  cert.gen2 = Word::generator(name2);
  Rational r = gap / 64;
  for (int attempt = 0;; ++attempt) {
    Absorbing x1 = half_neighbourhoods(f, r);
    Absorbing x2 = half_neighbourhoods(g, r);
    if (is_disjoint(set_union(x1.plus, x1.minus), set_union(x2.plus, x2.minus))) {
      cert.X1_plus = std::move(x1.plus);
      cert.X1_minus = std::move(x1.minus);
      cert.X2_plus = std::move(x2.plus);
      cert.X2_minus = std::move(x2.minus);
      break;
    }
    if (attempt == 64) return std::nullopt;
    r /= 2;
  }

  const PLCircleMap f_inv = inverse(f);
  const PLCircleMap g_inv = inverse(g);
  const ArcSet x1 = set_union(cert.X1_plus, cert.X1_minus);
  const ArcSet x2 = set_union(cert.X2_plus, cert.X2_minus);
  PLCircleMap fN = f, gN = g, fN_inv = f_inv, gN_inv = g_inv;
  for (long n = 1; n <= budget.max_n; ++n) {
    if (n > 1) {
      fN = compose(f, fN);
      gN = compose(g, gN);
      fN_inv = compose(f_inv, fN_inv);
      gN_inv = compose(g_inv, gN_inv);
    }
    if (absorbs(f, f_inv, fN, fN_inv, cert.X1_plus, cert.X1_minus, x2) &&
        absorbs(g, g_inv, gN, gN_inv, cert.X2_plus, cert.X2_minus, x1)) {
      cert.N = n;
      return cert;
    }
  }
  return std::nullopt;
}

bool verify_ping_pong(const PingPongCertificate& cert, const CircleGens& gens) {
  if (cert.N < 1) return false;
  const PLCircleMap f = evaluate_word(cert.gen1, gens);
  const PLCircleMap g = evaluate_word(cert.gen2, gens);
  const ArcSet x1 = set_union(cert.X1_plus, cert.X1_minus);
  const ArcSet x2 = set_union(cert.X2_plus, cert.X2_minus);
  if (x1.empty() || x2.empty() || !is_disjoint(x1, x2)) return false;
  const PLCircleMap f_inv = inverse(f);
  const PLCircleMap g_inv = inverse(g);
  return absorbs(f, f_inv, power(f, cert.N), power(f, -cert.N), cert.X1_plus, cert.X1_minus,
                 x2) &&
         absorbs(g, g_inv, power(g, cert.N), power(g, -cert.N), cert.X2_plus, cert.X2_minus,
                 x1);
}

// --- interval searches ---------------------------------------------------------

namespace {

void check_trim(const Rational& a, const Rational& b, const Rational& eps) {
  if (!(0 <= a && a < b && b <= 1)) throw PreconditionError("component must satisfy 0 <= a < b <= 1");
  if (eps <= 0) throw PreconditionError("eps must be positive");
  if (eps * 2 >= b - a) throw PreconditionError("trimmed interval [a+eps, b-eps] is empty");
}

ArcSet common_fixed(const IntervalGens& gens) {
  ArcSet out = ArcSet::full();
  for (const auto& [name, g] : gens) out = set_intersection(out, fixed_set(g));
  return out;
}

void check_no_common_fixed_point(const ArcSet& common, const Rational& a, const Rational& b) {
  if (!is_disjoint(common, ArcSet({Arc::open(a, b)})))
    throw PreconditionError("the generators have a common fixed point in (" + to_string(a) + ", " +
                            to_string(b) + ")");
}

struct Signed {
  std::string name;
  long sign;
};

}  // namespace

std::optional<Word> orbital_cover_search(const IntervalGens& gens, const Rational& a,
                                         const Rational& b, const Rational& eps,
                                         const SearchBudget& budget) {
  check_trim(a, b, eps);
  check_no_common_fixed_point(common_fixed(gens), a, b);
  const ArcSet target({Arc::closed(a + eps, b - eps)});

  std::vector<Signed> alphabet;
  for (const auto& [name, g] : gens) {
    alphabet.push_back({name, 1});
    alphabet.push_back({name, -1});
  }
  std::map<std::pair<std::string, long>, PLIntervalMap> letter_maps;
  for (const auto& [name, g] : gens) {
    letter_maps[{name, 1}] = g;
    letter_maps[{name, -1}] = inverse(g);
  }

  struct Node {
    std::vector<Signed> letters;  // leftmost first
    PLIntervalMap map;
  };
  std::vector<Node> frontier{Node{{}, PLIntervalMap()}};
  for (long len = 1; len <= budget.max_word_length; ++len) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (const Signed& x : alphabet) {
        if (!node.letters.empty() && node.letters.front().name == x.name &&
            node.letters.front().sign == -x.sign)
          continue;
        Node child;
        child.letters.reserve(node.letters.size() + 1);
        child.letters.push_back(x);
        child.letters.insert(child.letters.end(), node.letters.begin(), node.letters.end());
        child.map = compose(letter_maps.at({x.name, x.sign}), node.map);
        if (is_disjoint(fixed_set(child.map), target)) {
          std::vector<Letter> ls;
          for (const Signed& s : child.letters) ls.push_back(Letter{s.name, s.sign});
          return Word(std::move(ls));
        }
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

bool displaces(const PLIntervalMap& w, const Rational& a, const Rational& b, const Rational& eps) {
  const Rational p = a + eps;
  const Rational q = b - eps;
  return w(q) < p || w(p) > q;
}

namespace {

// Lazily computed powers of a fixed element.
class PowerCache {
 public:
  explicit PowerCache(PLIntervalMap f) : pos_{PLIntervalMap(), f}, neg_{PLIntervalMap(), inverse(f)} {}

  const PLIntervalMap& get(long e) {
    auto& side = e >= 0 ? pos_ : neg_;
    const std::size_t k = static_cast<std::size_t>(e >= 0 ? e : -e);
    while (side.size() <= k) side.push_back(compose(side[1], side.back()));
    return side[k];
  }

 private:
  std::vector<PLIntervalMap> pos_;
  std::vector<PLIntervalMap> neg_;
};

}  // namespace

std::optional<ThrowOff> throw_off_search(const IntervalGens& gens,
                                         const std::vector<std::pair<Rational, Rational>>& components,
                                         const Rational& eps, const SearchBudget& budget) {
  if (components.empty()) throw PreconditionError("no components given");
  const ArcSet common = common_fixed(gens);
  for (const auto& [a, b] : components) {
    check_trim(a, b, eps);
    if (!common.contains(a) || !common.contains(b))
      throw PreconditionError("component endpoints must be fixed by every generator");
    check_no_common_fixed_point(common, a, b);
  }

  auto displaces_all = [&](const PLIntervalMap& w) {
    return std::all_of(components.begin(), components.end(),
                       [&](const auto& c) { return displaces(w, c.first, c.second, eps); });
  };

  std::vector<Word> words;
  for (const auto& [name, g] : gens) words.push_back(Word::generator(name));
  for (const auto& [a, b] : components)
    if (auto w = orbital_cover_search(gens, a, b, eps, budget))
      if (std::find(words.begin(), words.end(), *w) == words.end()) words.push_back(*w);

  std::vector<PowerCache> powers;
  for (const Word& w : words) powers.emplace_back(evaluate_word(w, gens));

  auto word_power = [](const Word& w, long e) {
    const Word base = e < 0 ? w.inverse() : w;
    Word out;
    for (long k = 0; k < (e < 0 ? -e : e); ++k) out = out * base;
    return out;
  };

  // (i) pure powers, smallest exponent first
  for (long m = 1; m <= budget.max_m; ++m)
    for (std::size_t i = 0; i < words.size(); ++i)
      for (long e : {m, -m})
        if (const PLIntervalMap& w = powers[i].get(e); displaces_all(w))
          return ThrowOff{word_power(words[i], e), w};

  // (ii) f^m g^n f^-(m+K) over ordered pairs of distinct signed candidates
  struct Oriented {
    std::size_t index;
    long sign;
  };
  std::vector<Oriented> elems;
  for (std::size_t i = 0; i < words.size(); ++i) {
    elems.push_back({i, 1});
    elems.push_back({i, -1});
  }
  const long max_total = budget.max_m + budget.max_n + budget.max_K;
  for (long total = 3; total <= max_total; ++total)
    for (long m = 1; m <= budget.max_m; ++m)
      for (long K = 1; K <= budget.max_K; ++K) {
        const long n = total - m - K;
        if (n < 1 || n > budget.max_n) continue;
        for (const Oriented& f : elems)
          for (const Oriented& g : elems) {
            if (f.index == g.index) continue;
            PLIntervalMap w =
                compose(powers[f.index].get(f.sign * m),
                        compose(powers[g.index].get(g.sign * n),
                                powers[f.index].get(-f.sign * (m + K))));
            if (displaces_all(w)) {
              const Word& fw = words[f.index];
              const Word& gw = words[g.index];
              Word word = word_power(fw, f.sign * m) * word_power(gw, g.sign * n) *
                          word_power(fw, -f.sign * (m + K));
              return ThrowOff{std::move(word), std::move(w)};
            }
          }
      }
  return std::nullopt;
}

}  // namespace plcircle
