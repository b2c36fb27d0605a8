#include "plcircle/pl_map.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace plcircle {

namespace {

bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
  return (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x);
}

// Drops interior points at which the slope does not change. `closing` is the
// point that follows the last one (the periodic image of the first point for
// circle maps, (1,1) for interval maps); it is not stored.
void merge_collinear(std::vector<Breakpoint>& pts, const Breakpoint* closing) {
  std::vector<Breakpoint> out;
  out.reserve(pts.size());
  for (auto& p : pts) {
    while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.pop_back();
    out.push_back(std::move(p));
  }
  if (closing)
    while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), *closing))
      out.pop_back();
  pts = std::move(out);
}

Rational interpolate(const Breakpoint& a, const Breakpoint& b, const Rational& t) {
  return a.y + (t - a.x) * (b.y - a.y) / (b.x - a.x);
}

}  // namespace

// --- PLCircleMap -------------------------------------------------------------

PLCircleMap::PLCircleMap() : pts_{Breakpoint{Rational(0), Rational(0)}} {}

PLCircleMap PLCircleMap::from_lift_points(std::vector<Breakpoint> pts) {
  if (pts.empty()) throw PreconditionError("a circle map needs at least one breakpoint");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].x < 0 || pts[i].x >= 1)
      throw PreconditionError("breakpoint abscissa " + to_string(pts[i].x) + " outside [0,1)");
    if (i > 0 && (pts[i].x <= pts[i - 1].x || pts[i].y <= pts[i - 1].y))
      throw PreconditionError("breakpoints must increase strictly in both coordinates");
  }
  if (pts.back().y >= pts.front().y + 1)
    throw PreconditionError("lift does not commute with unit translation");

  if (pts.front().x != 0) {
    Breakpoint wrap{pts.front().x + 1, pts.front().y + 1};
    Rational at_one = interpolate(pts.back(), wrap, Rational(1));
    pts.insert(pts.begin(), Breakpoint{Rational(0), at_one - 1});
  }
  const Rational shift = floor(pts.front().y);
  if (shift != 0)
    for (auto& p : pts) p.y -= shift;

  Breakpoint closing{Rational(1), pts.front().y + 1};
  merge_collinear(pts, &closing);
  PLCircleMap f;
  f.pts_ = std::move(pts);
  return f;
}

PLCircleMap PLCircleMap::rotation(const Rational& angle) {
  PLCircleMap f;
  f.pts_[0].y = frac(angle);
  return f;
}

std::size_t PLCircleMap::segment_index(const Rational& u) const {
  auto it = std::upper_bound(pts_.begin(), pts_.end(), u,
                             [](const Rational& v, const Breakpoint& b) { return v < b.x; });
  return static_cast<std::size_t>(it - pts_.begin()) - 1;
}

Rational PLCircleMap::segment_end(std::size_t i) const {
  return i + 1 < pts_.size() ? pts_[i + 1].x : Rational(1);
}

Rational PLCircleMap::lift(const Rational& t) const {
  const Integer n = floor_int(t);
  const Rational u = t - Rational(n);
  const std::size_t i = segment_index(u);
  const Breakpoint& a = pts_[i];
  if (u == a.x) return a.y + Rational(n);
  Breakpoint b = i + 1 < pts_.size() ? pts_[i + 1] : Breakpoint{Rational(1), pts_[0].y + 1};
  return interpolate(a, b, u) + Rational(n);
}

Rational PLCircleMap::lift_inverse(const Rational& y) const {
  const Integer n = floor_int(y - pts_[0].y);
  const Rational v = y - Rational(n);
  auto it = std::upper_bound(pts_.begin(), pts_.end(), v,
                             [](const Rational& w, const Breakpoint& b) { return w < b.y; });
  const std::size_t i = static_cast<std::size_t>(it - pts_.begin()) - 1;
  const Breakpoint& a = pts_[i];
  if (v == a.y) return a.x + Rational(n);
  Breakpoint b = i + 1 < pts_.size() ? pts_[i + 1] : Breakpoint{Rational(1), pts_[0].y + 1};
  return a.x + (v - a.y) * (b.x - a.x) / (b.y - a.y) + Rational(n);
}

Rational PLCircleMap::slope(std::size_t i) const {
  const Breakpoint& a = pts_[i];
  Breakpoint b = i + 1 < pts_.size() ? pts_[i + 1] : Breakpoint{Rational(1), pts_[0].y + 1};
  return (b.y - a.y) / (b.x - a.x);
}

Rational PLCircleMap::slope_at(const Rational& t) const { return slope(segment_index(frac(t))); }

bool PLCircleMap::is_identity() const { return pts_.size() == 1 && pts_[0].y == 0; }

// --- circle algebra ----------------------------------------------------------

PLCircleMap compose(const PLCircleMap& f, const PLCircleMap& g) {
  std::vector<Rational> xs;
  xs.reserve(f.breakpoints().size() + g.breakpoints().size());
  for (const auto& b : g.breakpoints()) xs.push_back(b.x);
  for (const auto& b : f.breakpoints()) xs.push_back(frac(g.lift_inverse(b.x)));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Breakpoint> pts;
  pts.reserve(xs.size());
  for (auto& x : xs) {
    Rational y = f.lift(g.lift(x));
    pts.push_back(Breakpoint{std::move(x), std::move(y)});
  }
  return PLCircleMap::from_lift_points(std::move(pts));
}

PLCircleMap inverse(const PLCircleMap& f) {
  std::vector<Breakpoint> pts;
  pts.reserve(f.breakpoints().size());
  for (const auto& b : f.breakpoints()) {
    Rational k = floor(b.y);
    pts.push_back(Breakpoint{b.y - k, b.x - k});
  }
  std::sort(pts.begin(), pts.end());
  return PLCircleMap::from_lift_points(std::move(pts));
}

PLCircleMap power(const PLCircleMap& f, long n) {
  PLCircleMap base = n < 0 ? inverse(f) : f;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  PLCircleMap result;
  while (e) {
    if (e & 1) result = compose(result, base);
    e >>= 1;
    if (e) base = compose(base, base);
  }
  return result;
}

PLCircleMap conjugate(const PLCircleMap& f, const PLCircleMap& g) {
  return compose(g, compose(f, inverse(g)));
}

CirclePoint evaluate(const PLCircleMap& f, const CirclePoint& p) { return f(p); }

Arc image(const PLCircleMap& f, const Arc& a) {
  return Arc{f(a.start), f(a.end), a.closed_left, a.closed_right};
}

ArcSet image(const PLCircleMap& f, const ArcSet& s) {
  if (s.is_full()) return s;
  std::vector<Arc> arcs;
  arcs.reserve(s.arcs().size());
  for (const Arc& a : s.arcs()) arcs.push_back(image(f, a));
  return ArcSet(std::move(arcs));
}

LiftMap hat_lift(const PLCircleMap& f) {
  const auto& pts = f.breakpoints();
  Rational hi = pts[0].y - pts[0].x;
  for (const auto& b : pts) hi = std::max(hi, b.y - b.x);
  return LiftMap{f, -floor_int(hi)};
}

LiftMap compose(const LiftMap& f, const LiftMap& g) {
  const Rational at_zero = f.base.lift(g.base.lift(Rational(0)));
  return LiftMap{compose(f.base, g.base), f.offset + g.offset + floor_int(at_zero)};
}

LiftMap inverse(const LiftMap& f) {
  const Rational at_zero = f.base.lift_inverse(Rational(0));
  return LiftMap{inverse(f.base), floor_int(at_zero) - f.offset};
}

LiftMap power(const LiftMap& f, long n) {
  LiftMap base = n < 0 ? inverse(f) : f;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  LiftMap result{PLCircleMap(), Integer(0)};
  while (e) {
    if (e & 1) result = compose(result, base);
    e >>= 1;
    if (e) base = compose(base, base);
  }
  return result;
}

PLCircleMap evaluate_word(const Word& w, const CircleGens& gens) {
  PLCircleMap result;
  for (const Letter& l : w.letters()) {
    auto it = gens.find(l.name);
    if (it == gens.end()) throw std::out_of_range("unbound generator '" + l.name + "'");
    result = compose(result, power(it->second, l.exponent));
  }
  return result;
}

// --- PLIntervalMap -----------------------------------------------------------

PLIntervalMap::PLIntervalMap()
    : pts_{Breakpoint{Rational(0), Rational(0)}, Breakpoint{Rational(1), Rational(1)}} {}

PLIntervalMap::PLIntervalMap(std::vector<Breakpoint> pts) {
  if (pts.size() < 2 || pts.front() != Breakpoint{Rational(0), Rational(0)} ||
      pts.back() != Breakpoint{Rational(1), Rational(1)})
    throw PreconditionError("interval map must run from (0,0) to (1,1)");
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].x <= pts[i - 1].x || pts[i].y <= pts[i - 1].y)
      throw PreconditionError("interval map breakpoints must increase strictly");
  merge_collinear(pts, nullptr);
  pts_ = std::move(pts);
}

Rational PLIntervalMap::operator()(const Rational& t) const {
  if (t <= 0) return t;
  if (t >= 1) return t;
  auto it = std::upper_bound(pts_.begin(), pts_.end(), t,
                             [](const Rational& v, const Breakpoint& b) { return v < b.x; });
  const Breakpoint& b = *it;
  const Breakpoint& a = *(it - 1);
  if (t == a.x) return a.y;
  return interpolate(a, b, t);
}

Rational PLIntervalMap::inverse_at(const Rational& y) const {
  if (y <= 0 || y >= 1) return y;
  auto it = std::upper_bound(pts_.begin(), pts_.end(), y,
                             [](const Rational& v, const Breakpoint& b) { return v < b.y; });
  const Breakpoint& b = *it;
  const Breakpoint& a = *(it - 1);
  if (y == a.y) return a.x;
  return a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
}

PLCircleMap PLIntervalMap::to_circle() const {
  std::vector<Breakpoint> pts(pts_.begin(), pts_.end() - 1);
  return PLCircleMap::from_lift_points(std::move(pts));
}

PLIntervalMap compose(const PLIntervalMap& f, const PLIntervalMap& g) {
  std::vector<Rational> xs;
  for (const auto& b : g.breakpoints()) xs.push_back(b.x);
  for (const auto& b : f.breakpoints()) xs.push_back(g.inverse_at(b.x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Breakpoint> pts;
  pts.reserve(xs.size());
  for (auto& x : xs) {
    Rational y = f(g(x));
    pts.push_back(Breakpoint{std::move(x), std::move(y)});
  }
  return PLIntervalMap(std::move(pts));
}

PLIntervalMap inverse(const PLIntervalMap& f) {
  std::vector<Breakpoint> pts;
  for (const auto& b : f.breakpoints()) pts.push_back(Breakpoint{b.y, b.x});
  return PLIntervalMap(std::move(pts));
}

PLIntervalMap power(const PLIntervalMap& f, long n) {
  PLIntervalMap base = n < 0 ? inverse(f) : f;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  PLIntervalMap result;
  while (e) {
    if (e & 1) result = compose(result, base);
    e >>= 1;
    if (e) base = compose(base, base);
  }
  return result;
}

PLIntervalMap evaluate_word(const Word& w, const IntervalGens& gens) {
  PLIntervalMap result;
  for (const Letter& l : w.letters()) {
    auto it = gens.find(l.name);
    if (it == gens.end()) throw std::out_of_range("unbound generator '" + l.name + "'");
    result = compose(result, power(it->second, l.exponent));
  }
  return result;
}

PLCircleMap squeeze(const PLIntervalMap& h, const Rational& a, const Rational& length) {
  if (length <= 0 || length > 1) throw PreconditionError("squeeze length must lie in (0,1]");
  const Rational start = frac(a);
  std::vector<Breakpoint> pts;
  const auto& hp = h.breakpoints();
  for (std::size_t i = 0; i + 1 < hp.size(); ++i)
    pts.push_back(Breakpoint{start + length * hp[i].x, start + length * hp[i].y});
  if (length < 1) pts.push_back(Breakpoint{start + length, start + length});
  for (auto& p : pts)
    if (p.x >= 1) {
      p.x -= 1;
      p.y -= 1;
    }
  std::sort(pts.begin(), pts.end());
  return PLCircleMap::from_lift_points(std::move(pts));
}

PLIntervalMap restrict_to_arc(const PLCircleMap& f, const Rational& a, const Rational& length) {
  if (length <= 0 || length > 1) throw PreconditionError("arc length must lie in (0,1]");
  const Rational start = frac(a);
  const Rational k = start - f.lift(start);
  if (denominator(k) != 1) throw PreconditionError("map does not fix the arc's start point");
  LiftMap lift{f, numerator(k)};
  const Rational stop = start + length;
  if (lift(stop) != stop) throw PreconditionError("map does not fix the arc's end point");
  std::vector<Breakpoint> pts{Breakpoint{Rational(0), Rational(0)}};
  std::vector<Rational> ts;
  for (int j = 0; j <= 1; ++j)
    for (const auto& b : f.breakpoints()) {
      Rational t = b.x + j;
      if (t > start && t < stop) ts.push_back(t);
    }
  std::sort(ts.begin(), ts.end());
  for (const Rational& t : ts) pts.push_back(Breakpoint{(t - start) / length, (lift(t) - start) / length});
  pts.push_back(Breakpoint{Rational(1), Rational(1)});
  return PLIntervalMap(std::move(pts));
}

// --- words -------------------------------------------------------------------

Word::Word(std::vector<Letter> letters) {
  for (auto& l : letters) {
    if (l.exponent == 0) continue;
    if (!letters_.empty() && letters_.back().name == l.name) {
      letters_.back().exponent += l.exponent;
      if (letters_.back().exponent == 0) letters_.pop_back();
    } else {
      letters_.push_back(std::move(l));
    }
  }
}

long Word::length() const {
  long n = 0;
  for (const auto& l : letters_) n += std::labs(l.exponent);
  return n;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return Word(std::move(out));
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

std::string to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (const auto& l : w.letters()) {
    if (!s.empty()) s += ' ';
    s += l.name;
    if (l.exponent != 1) s += "^" + std::to_string(l.exponent);
  }
  return s;
}

Word parse_word(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<Letter> letters;
  std::string tok;
  while (is >> tok) {
    if (tok == "e") continue;
    auto caret = tok.find('^');
    Letter l;
    l.name = tok.substr(0, caret);
    if (l.name.empty()) throw ParseError("empty generator name in word '" + std::string(text) + "'");
    if (caret != std::string::npos) {
      try {
        std::size_t used = 0;
        l.exponent = std::stol(tok.substr(caret + 1), &used);
        if (used != tok.size() - caret - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("malformed exponent in '" + tok + "'");
      }
    }
    letters.push_back(std::move(l));
  }
  return Word(std::move(letters));
}

// --- text format -------------------------------------------------------------

namespace {

std::string serialize_points(const char* kind, const std::vector<Breakpoint>& pts) {
  std::string s = "plmap 1\n";
  s += kind;
  s += '\n';
  for (const auto& b : pts) s += to_fraction_string(b.x) + " " + to_fraction_string(b.y) + "\n";
  return s;
}

std::string strip(const std::string& line) {
  std::string s = line;
  if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

}  // namespace

std::string serialize(const PLCircleMap& f) { return serialize_points("circle", f.breakpoints()); }

std::string serialize(const PLIntervalMap& f) {
  return serialize_points("interval", f.breakpoints());
}

MapFile parse_map(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string raw;
  int lineno = 0;
  int header = 0;
  bool interval = false;
  std::vector<Breakpoint> pts;
  int last_line = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty()) continue;
    if (header == 0) {
      if (line != "plmap 1") throw ParseError("expected header 'plmap 1'", lineno);
      ++header;
      continue;
    }
    if (header == 1) {
      if (line == "circle")
        interval = false;
      else if (line == "interval")
        interval = true;
      else
        throw ParseError("expected 'circle' or 'interval'", lineno);
      ++header;
      continue;
    }
    std::istringstream ls(line);
    std::string xs, ys, extra;
    if (!(ls >> xs >> ys) || (ls >> extra)) throw ParseError("expected 'x y' breakpoint", lineno);
    Breakpoint b;
    try {
      b.x = parse_rational(xs);
      b.y = parse_rational(ys);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
    if (!pts.empty() && (b.x <= pts.back().x || b.y <= pts.back().y))
      throw ParseError("breakpoints must increase strictly in both coordinates", lineno);
    if (!interval && (b.x < 0 || b.x >= 1)) throw ParseError("abscissa outside [0,1)", lineno);
    pts.push_back(std::move(b));
    last_line = lineno;
  }
  if (header < 2) throw ParseError("truncated map file", lineno + 1);
  if (pts.empty()) throw ParseError("map file has no breakpoints", lineno + 1);
  MapFile out;
  out.is_interval = interval;
  try {
    if (interval)
      out.interval = PLIntervalMap(std::move(pts));
    else
      out.circle = PLCircleMap::from_lift_points(std::move(pts));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), last_line);
  }
  return out;
}

PLCircleMap parse_circle_map(std::string_view text) {
  MapFile m = parse_map(text);
  if (m.is_interval) return m.interval.to_circle();
  return m.circle;
}

PLIntervalMap parse_interval_map(std::string_view text) {
  MapFile m = parse_map(text);
  if (!m.is_interval) throw ParseError("expected an interval map", 2);
  return m.interval;
}

}  // namespace plcircle
