#include "plcircle/cli.hpp"

#include "plcircle/dynamics.hpp"
#include "plcircle/group_structure.hpp"
#include "plcircle/rotation.hpp"
#include "plcircle/thompson.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace plcircle::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A negative finding already reported on the output stream.
struct Negative {};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw UsageError("failed writing '" + path.string() + "'");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create directory '" + dir.string() + "': " + ec.message());
}

MapFile load_map(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_map(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

PLCircleMap load_circle(const std::string& path) {
  MapFile m = load_map(path);
  return m.is_interval ? m.interval.to_circle() : m.circle;
}

PLIntervalMap load_interval(const std::string& path) {
  MapFile m = load_map(path);
  if (!m.is_interval) throw UsageError(path + ": expected an interval map");
  return m.interval;
}

std::string stem_name(const std::string& path) { return fs::path(path).stem().string(); }

template <class Gens, class Loader>
Gens load_gens(const std::vector<std::string>& paths, Loader load) {
  Gens gens;
  for (const std::string& p : paths) {
    const std::string name = stem_name(p);
    if (name.empty()) throw UsageError("cannot derive a generator name from '" + p + "'");
    if (!gens.emplace(name, load(p)).second)
      throw UsageError("two generator files share the name '" + name + "'");
  }
  return gens;
}

GroupGens load_circle_gens(const std::vector<std::string>& paths) {
  return load_gens<GroupGens>(paths, load_circle);
}

IntervalGens load_interval_gens(const std::vector<std::string>& paths) {
  return load_gens<IntervalGens>(paths, load_interval);
}

SearchBudget default_budget() {
  if (const char* env = std::getenv("PLCIRCLE_BUDGET")) {
    try {
      return SearchBudget::parse(env);
    } catch (const ParseError& e) {
      throw UsageError(std::string("PLCIRCLE_BUDGET: ") + e.what());
    }
  }
  return {};
}

long default_qmax() {
  if (const char* env = std::getenv("PLCIRCLE_QMAX")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw UsageError("PLCIRCLE_QMAX must be a positive integer");
    return v;
  }
  return 64;
}

std::string fraction(const Rational& r, bool decimal) {
  std::string s = to_fraction_string(r);
  if (decimal) s += " ~ " + to_decimal_string(r);
  return s;
}

std::string describe(const RotationResult& r, bool decimal) {
  if (r.is_exact()) {
    const auto& e = r.exact();
    return "exact " + fraction(e.value, decimal) + " (period " + std::to_string(e.period) +
           ", witness " + to_fraction_string(e.witness.value()) + ")";
  }
  const auto& e = r.enclosure();
  return "enclosure [" + fraction(e.lo, decimal) + ", " + fraction(e.hi, decimal) + "]";
}

void emit_map(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
}

std::string join_points(const std::vector<CirclePoint>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + to_string(pts[i]);
  return s;
}

std::vector<std::pair<Rational, Rational>> components_from(const ArcSet& s) {
  if (s.is_full()) throw UsageError("components must be proper arcs of [0,1]");
  std::vector<std::pair<Rational, Rational>> out;
  for (const Arc& a : s.arcs()) {
    if (a.wraps() && a.end.value() != 0) throw UsageError("component " + to_string(a) + " wraps past 1");
    out.emplace_back(a.start.value(), a.start.value() + a.length());
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of piecewise-linear circle homeomorphisms", "plcircle"};
  app.require_subcommand(1);
  app.fallthrough();
  bool decimal = false;
  app.add_flag("--decimal", decimal, "Append approximate decimals to rotation numbers and measures");

  std::string file_a, file_b, out_path, out_dir, arc_text, eps_text, budget_text, word_text;
  std::vector<std::string> files;
  long qmax = 0, iters = kDefaultEnclosureIterations, len = 3, q = 1, n = 1;

  auto* rot = app.add_subcommand("rot", "Rotation number with a periodic-point witness");
  rot->add_option("map", file_a, "Map file")->required();
  rot->add_option("--qmax", qmax, "Largest period searched");
  rot->add_option("--iters", iters, "Iterates for the enclosure fallback");

  auto* fix = app.add_subcommand("fix", "Fixed set");
  fix->add_option("map", file_a)->required();

  auto* orbitals = app.add_subcommand("orbitals", "Components of the support and their direction");
  orbitals->add_option("map", file_a)->required();

  auto* comp = app.add_subcommand("compose", "f o g (g applied first)");
  comp->add_option("f", file_a)->required();
  comp->add_option("g", file_b)->required();
  comp->add_option("--out", out_path);

  auto* inv = app.add_subcommand("inv", "Inverse map");
  inv->add_option("map", file_a)->required();
  inv->add_option("--out", out_path);

  auto* pw = app.add_subcommand("pow", "Integer power of a map");
  pw->add_option("map", file_a)->required();
  pw->add_option("n", n)->required()->allow_extra_args(false);
  pw->add_option("--out", out_path);

  auto* fip = app.add_subcommand("fip", "Common fixed set of rotation-zero maps");
  fip->add_option("maps", files)->required();

  auto* pp = app.add_subcommand("pingpong", "Search for a ping-pong certificate");
  pp->add_option("mapA", file_a)->required();
  pp->add_option("mapB", file_b)->required();
  pp->add_option("--budget", budget_text, "L,m,n,K");

  auto* thr = app.add_subcommand("throwoff", "Find an element moving trimmed orbitals off themselves");
  thr->add_option("--gens", files, "Interval map files")->required();
  thr->add_option("--components", arc_text, "Orbitals, e.g. \"(0,1/2),(1/2,1)\"")->required();
  thr->add_option("--eps", eps_text)->required();
  thr->add_option("--budget", budget_text, "L,m,n,K");
  thr->add_option("--out", out_path);

  auto* hom = app.add_subcommand("check-hom", "Test that rot is a homomorphism on a word ball");
  hom->add_option("--gens", files)->required();
  hom->add_option("--len", len);
  hom->add_option("--qmax", qmax);

  auto* dec = app.add_subcommand("decompose", "Wreath decomposition for a finite rotation quotient");
  dec->add_option("--gens", files)->required();
  dec->add_option("--len", len);
  dec->add_option("--qmax", qmax);
  dec->add_option("--out-dir", out_dir, "Write H0 generators here");

  auto* meas = app.add_subcommand("measure", "Invariant probability measure");
  meas->add_option("--gens", files)->required();
  meas->add_option("--arc", arc_text, "Arc to measure, e.g. \"[0,1/2)\"");
  meas->add_option("--len", len);
  meas->add_option("--qmax", qmax);

  auto* ew = app.add_subcommand("embed-wreath", "Generators of H0 wr Z/q on the circle");
  ew->add_option("--base", files, "Interval map files");
  ew->add_option("--q", q)->required();
  ew->add_option("--out", out_dir, "Output directory")->required();

  auto* xn = app.add_subcommand("xn", "The map X_n");
  xn->add_option("n", n)->required();
  xn->add_option("--out", out_path);

  auto* qz = app.add_subcommand("qz", "Image of p/q under the embedding Q/Z -> T");
  qz->add_option("x", word_text, "p/q")->required();
  qz->add_option("--out", out_path);

  auto* sol = app.add_subcommand("solodov", "The maps a and b of the Solodov example");
  sol->add_option("--out-dir", out_dir)->required();

  auto* ct = app.add_subcommand("check-T", "Membership in Thompson's group T");
  ct->add_option("map", file_a)->required();

  auto* eft = app.add_subcommand("embed-FT", "Generators of F wr Z/q inside T");
  eft->add_option("--q", q)->required();
  eft->add_option("--out", out_dir)->required();

  std::vector<std::string> argv_store{"plcircle"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const SearchBudget budget =
        budget_text.empty() ? default_budget() : SearchBudget::parse(budget_text);
    if (qmax == 0) qmax = default_qmax();

    if (rot->parsed()) {
      out << describe(rotation_number(load_circle(file_a), qmax, iters), decimal) << "\n";
    } else if (fix->parsed()) {
      const MapFile m = load_map(file_a);
      out << to_string(m.is_interval ? fixed_set(m.interval) : fixed_set(m.circle)) << "\n";
    } else if (orbitals->parsed()) {
      const PLCircleMap f = load_circle(file_a);
      const ArcSet s = support(f);
      if (s.is_full()) {
        out << "S1 clockwise\n";
      } else if (s.empty()) {
        out << "{}\n";
      } else {
        for (const Arc& a : s.arcs())
          out << to_string(a) << (moves_clockwise(f, a) ? " clockwise" : " counterclockwise") << "\n";
      }
    } else if (comp->parsed()) {
      const MapFile f = load_map(file_a);
      const MapFile g = load_map(file_b);
      if (f.is_interval && g.is_interval)
        emit_map(serialize(compose(f.interval, g.interval)), out_path, out);
      else
        emit_map(serialize(compose(load_circle(file_a), load_circle(file_b))), out_path, out);
    } else if (inv->parsed()) {
      const MapFile f = load_map(file_a);
      emit_map(f.is_interval ? serialize(inverse(f.interval)) : serialize(inverse(f.circle)),
               out_path, out);
    } else if (pw->parsed()) {
      const MapFile f = load_map(file_a);
      emit_map(f.is_interval ? serialize(power(f.interval, n)) : serialize(power(f.circle, n)),
               out_path, out);
    } else if (fip->parsed()) {
      std::vector<PLCircleMap> maps;
      for (const auto& p : files) maps.push_back(load_circle(p));
      const ArcSet common = common_fixed_set(maps);
      out << to_string(common) << "\n";
      if (common.empty()) {
        out << "empty intersection: the group contains a non-abelian free subgroup\n";
        throw Negative{};
      }
    } else if (pp->parsed()) {
      const std::string na = stem_name(file_a), nb = stem_name(file_b);
      if (na == nb) throw UsageError("the two map files need distinct names");
      const PLCircleMap f = load_circle(file_a), g = load_circle(file_b);
      auto cert = ping_pong_search(f, g, budget, na, nb);
      if (!cert) {
        out << "search exhausted (N <= " << budget.max_n << "): unknown\n";
        throw Negative{};
      }
      out << "gen1 " << to_string(cert->gen1) << "\n"
          << "gen2 " << to_string(cert->gen2) << "\n"
          << "N " << cert->N << "\n"
          << "X1+ " << to_string(cert->X1_plus) << "\n"
          << "X1- " << to_string(cert->X1_minus) << "\n"
          << "X2+ " << to_string(cert->X2_plus) << "\n"
          << "X2- " << to_string(cert->X2_minus) << "\n"
          << "verified " << (verify_ping_pong(*cert, {{na, f}, {nb, g}}) ? "yes" : "no") << "\n";
    } else if (thr->parsed()) {
      const IntervalGens gens = load_interval_gens(files);
      const auto comps = components_from(parse_arcset(arc_text));
      auto found = throw_off_search(gens, comps, parse_rational(eps_text), budget);
      if (!found) {
        out << "search exhausted: unknown\n";
        throw Negative{};
      }
      out << "word " << to_string(found->word) << "\n";
      emit_map(serialize(found->map), out_path, out);
    } else if (hom->parsed()) {
      const HomCheck h = rot_hom_check(load_circle_gens(files), len, qmax);
      if (h.passed()) {
        out << "pass (" << h.pairs_checked << " pairs, word length " << len << ")\n";
      } else {
        const auto& c = *h.counterexample;
        out << "counterexample u = " << to_string(c.u) << ", v = " << to_string(c.v) << "\n"
            << "rot(u) = " << fraction(c.rot_u, decimal) << "\n"
            << "rot(v) = " << fraction(c.rot_v, decimal) << "\n"
            << "rot(uv) = " << describe(c.rot_uv, decimal) << "\n";
        throw Negative{};
      }
    } else if (dec->parsed()) {
      const WreathData d = structure_decomposition(load_circle_gens(files), qmax, len);
      out << "base_point " << to_string(d.base_point) << "\n"
          << "orbit " << join_points(d.orbit) << "\n";
      for (std::size_t i = 0; i < d.fundamental_domain.size(); ++i)
        out << "domain " << to_string(d.fundamental_domain[i]) << " h0_generators "
            << d.h0_generators[i].size() << "\n";
      out << "quotient";
      for (std::size_t i = 0; i < d.quotient.size(); ++i)
        out << (i ? ", " : " ") << to_string(d.quotient[i]);
      out << "\nsection " << to_string(d.section_word) << "\n";
      if (!out_dir.empty()) {
        ensure_dir(out_dir);
        for (std::size_t i = 0; i < d.h0_generators.size(); ++i)
          for (std::size_t k = 0; k < d.h0_generators[i].size(); ++k)
            write_file(fs::path(out_dir) /
                           ("h" + std::to_string(i + 1) + "_" + std::to_string(k + 1) + ".plmap"),
                       serialize(d.h0_generators[i][k]));
      }
    } else if (meas->parsed()) {
      const InvariantMeasure m = invariant_measure(load_circle_gens(files), qmax, len);
      if (const auto* a = std::get_if<AtomicMeasure>(&m)) {
        out << "atomic " << join_points(a->atoms) << " (weight 1/" << a->atoms.size() << " each)\n";
      } else {
        const auto& t = std::get<StieltjesTable>(m);
        out << "stieltjes word_length " << t.word_length << " base " << to_string(t.base_point)
            << "\n";
        for (const auto& [p, v] : t.samples)
          out << "  " << to_string(p) << " " << fraction(v, decimal) << "\n";
      }
      if (!arc_text.empty()) {
        const ArcSet s = parse_arcset(arc_text);
        out << "mu(" << to_string(s) << ") = " << (decimal ? fraction(measure_set(m, s), true)
                                                          : to_string(measure_set(m, s)))
            << "\n";
      }
    } else if (ew->parsed()) {
      std::vector<PLIntervalMap> base;
      for (const auto& p : files) base.push_back(load_interval(p));
      const GroupGens gens = wreath_embed_finite(base, q);
      ensure_dir(out_dir);
      for (const auto& [name, g] : gens) {
        write_file(fs::path(out_dir) / (name + ".plmap"), serialize(g));
        out << (fs::path(out_dir) / (name + ".plmap")).string() << "\n";
      }
      out << "structure " << (wreath_structure_check(gens, q) ? "verified" : "FAILED") << "\n";
    } else if (xn->parsed()) {
      if (n < 1 || n > kMaxXnLevel)
        throw UsageError("n must lie in 1.." + std::to_string(kMaxXnLevel));
      emit_map(serialize(xn_map(static_cast<int>(n))), out_path, out);
    } else if (qz->parsed()) {
      emit_map(serialize(qz_embed(parse_rational(word_text))), out_path, out);
    } else if (sol->parsed()) {
      const SolodovPair p = solodov_pair();
      ensure_dir(out_dir);
      write_file(fs::path(out_dir) / "a.plmap", serialize(p.a));
      write_file(fs::path(out_dir) / "b.plmap", serialize(p.b));
      out << (fs::path(out_dir) / "a.plmap").string() << "\n"
          << (fs::path(out_dir) / "b.plmap").string() << "\n";
    } else if (ct->parsed()) {
      const PLCircleMap f = load_circle(file_a);
      if (!t_membership(f)) {
        out << "not in T\n";
        throw Negative{};
      }
      out << (f_membership(f) ? "in T (fixes 0, in F)\n" : "in T\n");
    } else if (eft->parsed()) {
      const GroupGens gens = wreath_FT_generators(q);
      ensure_dir(out_dir);
      for (const auto& [name, g] : gens) {
        write_file(fs::path(out_dir) / (name + ".plmap"), serialize(g));
        out << (fs::path(out_dir) / (name + ".plmap")).string() << "\n";
      }
    }
    return kExitOk;
  } catch (const Negative&) {
    return kExitNegative;
  } catch (const HypothesisFailure& e) {
    out << "hypothesis failed: " << e.what() << "\n";
    return kExitNegative;
  } catch (const Inconclusive& e) {
    out << "inconclusive: " << e.what() << "\n";
    return kExitNegative;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace plcircle::cli
