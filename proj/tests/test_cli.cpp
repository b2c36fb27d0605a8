#include "support.hpp"

#include "plcircle/cli.hpp"
#include "plcircle/dynamics.hpp"
#include "plcircle/group_structure.hpp"
#include "plcircle/thompson.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace plcircle;
using plcircle::test::R;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

/// A fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& tag) {
    dir = fs::temp_directory_path() / ("plcircle_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rot examples and exit codes") {
  Scratch s("rot");
  const auto [a, b] = solodov_pair();
  const std::string fa = s.write("a.plmap", serialize(a));
  const Run r = run({"rot", fa, "--qmax", "4"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "exact 0/1 (period 1, witness 0/1)\n");

  const Run missing = run({"rot", s.path("nonexistent.plmap")});
  CHECK(missing.code == cli::kExitUsage);
  CHECK_FALSE(missing.err.empty());

  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);

  const std::string bad = s.write("bad.plmap", "plmap 1\ncircle\n0 0\n1/2 oops\n");
  const Run pe = run({"rot", bad});
  CHECK(pe.code == cli::kExitUsage);
  CHECK(pe.err.find("line 4") != std::string::npos);

  const std::string fx = s.write("x3.plmap", serialize(xn_map(3)));
  const Run enc = run({"rot", fx, "--qmax", "2"});
  CHECK(enc.code == cli::kExitOk);
  CHECK(enc.out.rfind("enclosure [", 0) == 0);
  CHECK(run({"rot", fx}).out.rfind("exact 1/6 (period 6", 0) == 0);
  // Decimals are opt-in.
  CHECK(run({"rot", fx}).out.find('.') == std::string::npos);
  CHECK(run({"--decimal", "rot", fx}).out.find('.') != std::string::npos);
}

TEST_CASE("check-hom on the figure-one pair") {
  Scratch s("hom");
  const std::string f = s.write("f.plmap", serialize(squeeze(test::bump_up(), 0, R("3/4"))));
  const std::string g = s.write("g.plmap", serialize(squeeze(test::bump_up(), R("1/2"), R("3/4"))));
  const Run r = run({"check-hom", "--gens", f, g, "--len", "2", "--qmax", "8"});
  CHECK(r.code == cli::kExitNegative);
  CHECK(r.out.find("counterexample") != std::string::npos);

  const std::string p = s.write("p.plmap", serialize(PLCircleMap::rotation(R("1/3"))));
  const std::string q = s.write("q.plmap", serialize(PLCircleMap::rotation(R("1/5"))));
  CHECK(run({"check-hom", "--gens", p, q, "--len", "4", "--qmax", "15"}).code == cli::kExitOk);
}

TEST_CASE("fix, orbitals, fip, pingpong") {
  Scratch s("dyn");
  const auto [a, b] = solodov_pair();
  const std::string fa = s.write("a.plmap", serialize(a));
  const std::string fb = s.write("b.plmap", serialize(b));
  CHECK(run({"fix", fa}).out == "[0,0],[1/2,1/2]\n");
  const Run orb = run({"orbitals", fa});
  CHECK(orb.code == 0);
  CHECK(orb.out.find("clockwise") != std::string::npos);
  const Run fip = run({"fip", fa, fb});
  CHECK(fip.code == cli::kExitNegative);
  CHECK(run({"fip", fa, fa}).code == cli::kExitOk);
  const Run pp = run({"pingpong", fa, fb});
  CHECK(pp.code == cli::kExitOk);
  CHECK(pp.out.find("verified yes") != std::string::npos);
  const Run tight = run({"pingpong", fa, fb, "--budget", "1,1,1,1"});
  CHECK(tight.code == cli::kExitNegative);
  CHECK(run({"pingpong", fa, fb, "--budget", "1,1"}).code == cli::kExitUsage);
  const std::string fr = s.write("r.plmap", serialize(PLCircleMap::rotation(R("1/3"))));
  CHECK(run({"fip", fa, fr}).code == cli::kExitUsage);
}

TEST_CASE("construction subcommands round trip") {
  Scratch s("build");
  const auto [a, b] = solodov_pair();
  const std::string fa = s.write("a.plmap", serialize(a));
  const std::string fb = s.write("b.plmap", serialize(b));

  CHECK(run({"compose", fb, fa, "--out", s.path("ba.plmap")}).code == 0);
  CHECK(parse_circle_map(slurp(s.path("ba.plmap"))) == compose(b, a));
  CHECK(run({"inv", fa, "--out", s.path("ai.plmap")}).code == 0);
  CHECK(parse_circle_map(slurp(s.path("ai.plmap"))) == inverse(a));
  CHECK(run({"pow", fa, "-3", "--out", s.path("a3.plmap")}).code == 0);
  CHECK(parse_circle_map(slurp(s.path("a3.plmap"))) == power(a, -3));
  // Without --out the map is printed.
  CHECK(run({"pow", fa, "2"}).out == serialize(power(a, 2)));

  CHECK(run({"xn", "4", "--out", s.path("x4.plmap")}).code == 0);
  CHECK(parse_circle_map(slurp(s.path("x4.plmap"))) == xn_map(4));
  CHECK(run({"xn", "9"}).code == cli::kExitUsage);
  CHECK(run({"qz", "5/6", "--out", s.path("q.plmap")}).code == 0);
  CHECK(parse_circle_map(slurp(s.path("q.plmap"))) == qz_embed(R("5/6")));
  CHECK(run({"qz", "one half"}).code == cli::kExitUsage);

  CHECK(run({"solodov", "--out-dir", s.path("sol")}).code == 0);
  CHECK(parse_circle_map(slurp(s.path("sol/a.plmap"))) == a);
  CHECK(parse_circle_map(slurp(s.path("sol/b.plmap"))) == b);

  CHECK(run({"embed-FT", "--q", "6", "--out", s.path("ft")}).code == 0);
  const auto ft = wreath_FT_generators(6);
  for (const auto& [name, m] : ft) CHECK(parse_circle_map(slurp(s.path("ft/" + name + ".plmap"))) == m);

  const std::string h = s.write("h.plmap", serialize(test::bump_up()));
  CHECK(run({"embed-wreath", "--base", h, "--q", "2", "--out", s.path("wr")}).code == 0);
  const auto wr = wreath_embed_finite({test::bump_up()}, 2);
  for (const auto& [name, m] : wr) CHECK(parse_circle_map(slurp(s.path("wr/" + name + ".plmap"))) == m);

  CHECK(run({"check-T", fa}).code == cli::kExitOk);
  const std::string r3 = s.write("r3.plmap", serialize(PLCircleMap::rotation(R("1/3"))));
  CHECK(run({"check-T", r3}).code == cli::kExitNegative);
}

TEST_CASE("throwoff, decompose and measure") {
  Scratch s("grp");
  const std::string f = s.write("f.plmap", serialize(test::bump_up()));
  const Run t = run({"throwoff", "--gens", f, "--components", "(0,1)", "--eps", "1/8",
                     "--out", s.path("w.plmap")});
  CHECK(t.code == 0);
  CHECK(displaces(parse_interval_map(slurp(s.path("w.plmap"))), 0, 1, R("1/8")));
  CHECK(run({"throwoff", "--gens", f, "--components", "(0,1)", "--eps", "1/2"}).code == cli::kExitUsage);

  const std::string c = s.write("c.plmap", serialize(squeeze(test::bump_up(), 0, R("1/2"))));
  const std::string x = s.write("x.plmap", serialize(xn_map(2)));
  const Run d = run({"decompose", "--gens", c, x});
  CHECK(d.code == 0);
  CHECK(d.out.find("base_point 0\n") != std::string::npos);
  CHECK(d.out.find("domain (0,1/2)") != std::string::npos);
  CHECK(d.out.find("quotient 0, 1/2\n") != std::string::npos);

  const Run m = run({"measure", "--gens", c, x, "--arc", "[0,1/4]"});
  CHECK(m.code == 0);
  CHECK(m.out.find("mu([0,1/4]) = 1/2") != std::string::npos);

  const auto [a, b] = solodov_pair();
  const std::string fa = s.write("a.plmap", serialize(a));
  const std::string fb = s.write("b.plmap", serialize(b));
  CHECK(run({"decompose", "--gens", fa, fb}).code == cli::kExitNegative);
}

TEST_CASE("reports are deterministic") {
  Scratch s("det");
  const auto [a, b] = solodov_pair();
  const std::string fa = s.write("a.plmap", serialize(a));
  const std::string fb = s.write("b.plmap", serialize(b));
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"pingpong", fa, fb}, {"rot", fa}, {"orbitals", fb},
        {"check-hom", "--gens", fa, fb, "--len", "2"}}) {
    const Run r1 = run(args);
    const Run r2 = run(args);
    CHECK(r1.code == r2.code);
    CHECK(r1.out == r2.out);
  }
}
