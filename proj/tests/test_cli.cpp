#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "sk/input.hpp"

using namespace sk;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(SK_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(SK_DATA_DIR) + "/" + name; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("skoszul_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("input parsing") {
  auto in = parse_input("ring\n vars x y z  # three\n weights 1 1 2\n char 0\nideal\n x^2\n yz\n z\nmodule\n x\n");
  CHECK(in.ring->nvars() == 3);
  CHECK(in.ring->field.p == 0);
  CHECK(in.ring->weights == std::vector<int>{1, 1, 2});
  CHECK(in.ideal.size() == 3);
  CHECK(in.ideal[2].degree() == 2);
  REQUIRE(in.module_spec());
  CHECK(in.module_spec()->gens.size() == 4);

  auto d = parse_input("ring\nvars a b\nideal\nab\nregular\n");
  CHECK(d.ring->field.p == kDefaultCharacteristic);
  CHECK(d.regular);
  CHECK_FALSE(d.module_spec());
  CHECK(parse_input("ring\nvars a b\nchar 7\nideal\na^2\n", 0u).ring->field.p == 0);

  auto where = [](const std::string& text) {
    try {
      parse_input(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line, e.column);
    }
    return std::make_pair(-1, -1);
  };
  CHECK(where("ring\nvars x y\nideal\nx^2\n  x*+y\n") == std::make_pair(5, 5));
  CHECK(where("ring\nvars x y\nideal\nx^2+y\n").first == 4);
  CHECK(where("vars x\n").first == 1);
  CHECK(where("ring\nvars x\nchar 6\nideal\nx\n").first == 3);
  CHECK(where("ring\nvars x\nsize 3\nideal\nx\n").first == 3);
  CHECK(where("ring\nvars x y\nweights 1\nideal\nx\n").first > 0);
  CHECK(where("ring\nvars x\nideal\n").first > 0);
  CHECK(where("ring\nvars x\nideal\n0\n").first == 4);
}

TEST_CASE("fnv1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("resolve") {
  auto r = run("resolve " + data("burke.txt"));
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "betti totals: 1,5,5,1");
  auto t = run("resolve " + data("dominant.txt") + " --hdeg 2");
  CHECK(t.code == 3);
  CHECK(t.out.find("truncated at hdeg 2") != std::string::npos);
}

TEST_CASE("poincare and classify") {
  auto p = run("poincare " + data("burke.txt") + " --hdeg 4");
  CHECK(p.code == 0);
  CHECK(first_line(p.out) == "P^R_k: 1,3,8,21,55 [matches formula]");

  auto te = run("classify " + data("te-example.txt"));
  CHECK(te.code == 2);
  CHECK(first_line(te.out) == "class: TE; cohen_koszul: refuted");

  auto b = run("classify " + data("burke.txt"));
  CHECK(b.code == 0);
  CHECK(first_line(b.out) == "class: G(5); cohen_koszul: certified");
  CHECK(b.out.find("almost_golod_gorenstein: yes") != std::string::npos);

  auto d = run("classify " + data("dominant.txt"));
  CHECK(d.code == 0);
  CHECK(d.out.find("taylor: minimal") != std::string::npos);
  CHECK(d.out.find("dominance: dominant") != std::string::npos);

  auto g = run("report " + data("golod.txt"));
  CHECK(g.code == 0);
  CHECK(first_line(g.out) == "cohen_koszul: certified");
}

TEST_CASE("priddy and shamash") {
  auto p = run("priddy " + data("ci.txt") + " --hdeg 5");
  CHECK(p.code == 0);
  CHECK(p.out.find("totals: 1,2,3,4,5,6 (truncated at hdeg 5)") != std::string::npos);
  CHECK(p.out.find("minimal: yes") != std::string::npos);

  auto m = run("priddy " + data("ci.txt") + " --hdeg 4 --module " + data("module-x.txt"));
  CHECK(m.code == 0);
  CHECK(m.out.find("module: Q/J") != std::string::npos);
  CHECK(m.out.find("acyclic: yes") != std::string::npos);

  auto s = run("shamash " + data("ci.txt") + " --hdeg 5");
  CHECK(s.code == 0);
  CHECK(s.out.find("comparison: ok") != std::string::npos);
  CHECK(s.out.find("higher homotopies: ok") != std::string::npos);

  auto ng = run("shamash " + data("golod.txt"));
  CHECK(ng.code == 3);
  CHECK(first_line(ng.out).find("inconclusive") == 0);
}

TEST_CASE("ainf round trip and tampering") {
  auto dir = scratch("ainf");
  auto a = run("ainf " + data("burke.txt") + " --arity 5 --out " + dir.string());
  CHECK(a.code == 0);
  REQUIRE(fs::exists(dir / "ainf.txt"));
  auto v = run("verify " + (dir / "ainf.txt").string());
  CHECK(v.code == 0);
  CHECK(first_line(v.out).find("stasheff: ok") == 0);

  std::string text = slurp(dir / "ainf.txt");
  auto at = text.find("m 2 e1_1 e1_2 : e2_1 (y) ;");
  REQUIRE(at != std::string::npos);
  text.replace(at, 26, "m 2 e1_1 e1_2 : e2_1 (2*y) ;");
  std::ofstream(dir / "bad.txt") << text;
  CHECK(run("verify " + (dir / "bad.txt").string()).code == 2);
  std::ofstream(dir / "garbage.txt") << "field 0\nvars x:1\ngen\n";
  CHECK(run("verify " + (dir / "garbage.txt").string()).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("manifest and determinism") {
  auto d1 = scratch("det1"), d2 = scratch("det2");
  for (auto& d : {d1, d2}) CHECK(run("poincare " + data("golod.txt") + " --hdeg 5 --out " + d.string()).code == 0);
  CHECK(slurp(d1 / "poincare.txt") == slurp(d2 / "poincare.txt"));
  std::string m = slurp(d1 / "manifest.json");
  CHECK(m.find("\"command\": \"poincare\"") != std::string::npos);
  CHECK(m.find("\"input_hash\"") != std::string::npos);
  CHECK(m.find("\"wall_time_s\"") != std::string::npos);
  CHECK(m.find("\"file\": \"poincare.txt\"") != std::string::npos);
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("errors") {
  auto p = run("resolve " + data("bad.txt"));
  CHECK(p.code == 1);
  CHECK(p.out.find("bad.txt:5:3: parse error") != std::string::npos);
  CHECK(run("resolve " + data("inhomogeneous.txt")).code == 1);
  CHECK(run("resolve /nonexistent/file.txt").code == 1);
  CHECK(run("resolve " + data("burke.txt") + " --format xml").code == 1);
  CHECK(run("resolve " + data("burke.txt") + " --char 6").code == 1);
  CHECK(run("frobnicate " + data("burke.txt")).code == 1);
}
