#include "plcircle/arcs.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace plcircle {

Rational Arc::length() const {
  if (start == end) return is_point() ? Rational(0) : Rational(1);
  return clockwise_offset(start, end);
}

bool Arc::contains(const CirclePoint& p) const {
  const Rational& s = start.value();
  const Rational& e = end.value();
  const Rational& x = p.value();
  if (s == e) return is_point() ? x == s : x != s;
  if (x == s) return closed_left;
  if (x == e) return closed_right;
  if (s < e) return s < x && x < e;
  return x > s || x < e;
}

struct ArcSetAccess {
  static ArcSet make(std::vector<Arc> canonical_arcs) {
    ArcSet s;
    s.arcs_ = std::move(canonical_arcs);
    return s;
  }
};

namespace {

// A subset of the circle described on a sorted list of critical points
// c_0 = 0 < c_1 < ... < c_k < 1: membership of each c_i and of each open gap
// (c_i, c_{i+1}), the last gap running up to 1.
struct Sweep {
  std::vector<Rational> pts;
  std::vector<bool> at;
  std::vector<bool> after;
};

std::vector<Rational> critical_points(const std::vector<const ArcSet*>& sets) {
  std::vector<Rational> pts{Rational(0)};
  for (const ArcSet* s : sets)
    for (const Arc& a : s->arcs()) {
      pts.push_back(a.start.value());
      pts.push_back(a.end.value());
    }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Sweep sweep(std::vector<Rational> pts, const std::function<bool(const CirclePoint&)>& member) {
  Sweep s;
  s.pts = std::move(pts);
  const std::size_t k = s.pts.size();
  s.at.resize(k);
  s.after.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    s.at[i] = member(CirclePoint(s.pts[i]));
    const Rational next = i + 1 < k ? s.pts[i + 1] : Rational(1);
    s.after[i] = member(CirclePoint((s.pts[i] + next) / 2));
  }
  return s;
}

// Element 2i is the point c_i, element 2i+1 the gap after it.
ArcSet from_sweep(const Sweep& s) {
  const std::size_t k = s.pts.size();
  const std::size_t m = 2 * k;
  auto included = [&](std::size_t e) { return e % 2 == 0 ? s.at[e / 2] : s.after[e / 2]; };
  std::size_t first_out = m;
  bool any_in = false;
  for (std::size_t e = 0; e < m; ++e) {
    if (included(e))
      any_in = true;
    else if (first_out == m)
      first_out = e;
  }
  if (first_out == m) return ArcSet::full();
  if (!any_in) return ArcSet();

  std::vector<Arc> arcs;
  std::size_t e = (first_out + 1) % m;
  for (std::size_t step = 0; step < m;) {
    if (!included(e)) {
      e = (e + 1) % m;
      ++step;
      continue;
    }
    const std::size_t run_start = e;
    std::size_t run_end = e;
    while (step < m && included(e)) {
      run_end = e;
      e = (e + 1) % m;
      ++step;
    }
    Arc a;
    a.start = CirclePoint(s.pts[run_start / 2]);
    a.closed_left = run_start % 2 == 0;
    if (run_end % 2 == 0) {
      a.end = CirclePoint(s.pts[run_end / 2]);
      a.closed_right = true;
    } else {
      const std::size_t j = run_end / 2;
      a.end = CirclePoint(j + 1 < k ? s.pts[j + 1] : Rational(0));
      a.closed_right = false;
    }
    arcs.push_back(a);
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& x, const Arc& y) { return x.start < y.start; });
  return ArcSetAccess::make(std::move(arcs));
}

}  // namespace

ArcSet::ArcSet(std::vector<Arc> arcs) {
  for (const Arc& a : arcs)
    if (a.start == a.end && a.closed_left != a.closed_right)
      throw PreconditionError("arc with equal endpoints must be fully open or fully closed");
  ArcSet raw;
  raw.arcs_ = arcs;
  auto member = [&](const CirclePoint& p) {
    return std::any_of(arcs.begin(), arcs.end(), [&](const Arc& a) { return a.contains(p); });
  };
  *this = from_sweep(sweep(critical_points({&raw}), member));
}

ArcSet ArcSet::full() {
  ArcSet s;
  s.full_ = true;
  return s;
}

ArcSet ArcSet::points(const std::vector<Rational>& pts) {
  std::vector<Arc> arcs;
  arcs.reserve(pts.size());
  for (const Rational& p : pts) arcs.push_back(Arc::point(p));
  return ArcSet(std::move(arcs));
}

bool ArcSet::contains(const CirclePoint& p) const {
  if (full_) return true;
  return std::any_of(arcs_.begin(), arcs_.end(), [&](const Arc& a) { return a.contains(p); });
}

std::vector<Rational> ArcSet::boundary() const {
  std::vector<Rational> out;
  for (const Arc& a : arcs_) {
    out.push_back(a.start.value());
    out.push_back(a.end.value());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

ArcSet combine(const ArcSet& a, const ArcSet& b, const std::function<bool(bool, bool)>& op) {
  auto member = [&](const CirclePoint& p) { return op(a.contains(p), b.contains(p)); };
  return from_sweep(sweep(critical_points({&a, &b}), member));
}

}  // namespace

ArcSet set_union(const ArcSet& a, const ArcSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

ArcSet set_intersection(const ArcSet& a, const ArcSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

ArcSet set_complement(const ArcSet& a) {
  return combine(a, a, [](bool x, bool) { return !x; });
}

ArcSet set_difference(const ArcSet& a, const ArcSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

bool is_subset(const ArcSet& a, const ArcSet& b) { return set_difference(a, b).empty(); }

bool is_disjoint(const ArcSet& a, const ArcSet& b) { return set_intersection(a, b).empty(); }

ArcSet arcset_algebra(const ArcSet& a, const ArcSet& b, SetOp op) {
  switch (op) {
    case SetOp::Union:
      return set_union(a, b);
    case SetOp::Intersect:
      return set_intersection(a, b);
    case SetOp::ComplementOfFirst:
      return set_complement(a);
  }
  return {};
}

Rational clockwise_offset(const CirclePoint& origin, const CirclePoint& p) {
  return frac(p.value() - origin.value());
}

Rational circle_distance(const CirclePoint& a, const CirclePoint& b) {
  Rational d = clockwise_offset(a, b);
  return std::min(d, Rational(1) - d);
}

std::string to_string(const CirclePoint& p) { return to_string(p.value()); }

std::string to_string(const Arc& a) {
  std::string s(a.closed_left ? "[" : "(");
  // a punctured circle prints its end one turn later, e.g. (0,1)
  const bool punctured = a.start == a.end && !a.closed_left;
  s += to_string(a.start) + "," + (punctured ? to_string(a.end.value() + 1) : to_string(a.end));
  s += a.closed_right ? "]" : ")";
  return s;
}

std::string to_string(const ArcSet& s) {
  if (s.is_full()) return "S1";
  if (s.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < s.arcs().size(); ++i) {
    if (i) out += ",";
    out += to_string(s.arcs()[i]);
  }
  return out;
}

Arc parse_arc(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.size() < 5) throw ParseError("malformed arc '" + std::string(text) + "'");
  const char l = text.front();
  const char r = text.back();
  if ((l != '[' && l != '(') || (r != ']' && r != ')'))
    throw ParseError("malformed arc '" + std::string(text) + "'");
  std::string_view body = text.substr(1, text.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos)
    throw ParseError("malformed arc '" + std::string(text) + "'");
  Rational a = parse_rational(body.substr(0, comma));
  Rational b = parse_rational(body.substr(comma + 1));
  Arc arc{CirclePoint(a), CirclePoint(b), l == '[', r == ']'};
  if (arc.start == arc.end && arc.closed_left != arc.closed_right)
    throw ParseError("degenerate half-open arc '" + std::string(text) + "'");
  return arc;
}

ArcSet parse_arcset(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "S1") return ArcSet::full();
  if (t.empty() || t == "{}") return ArcSet();
  std::vector<Arc> arcs;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] == ',') {
      ++i;
      continue;
    }
    if (t[i] != '[' && t[i] != '(') throw ParseError("malformed arc set '" + t + "'");
    auto close = t.find_first_of("])", i);
    if (close == std::string::npos) throw ParseError("unterminated arc in '" + t + "'");
    arcs.push_back(parse_arc(std::string_view(t).substr(i, close - i + 1)));
    i = close + 1;
  }
  return ArcSet(std::move(arcs));
}

}  // namespace plcircle
