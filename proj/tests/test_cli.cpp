#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "cnc/graph_io.hpp"
#include "cnc/tree_decomposition.hpp"
#include "support/oracles.hpp"

using namespace cnc;
using namespace cnc::testing;
using json = nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = 0;
  std::string out, err;

  json record(std::size_t line = 0) const {
    std::istringstream ss(out);
    std::string text;
    for (std::size_t i = 0; i <= line; ++i) std::getline(ss, text);
    return json::parse(text);
  }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("cnc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const auto path = (scratch() / name).string();
  std::ofstream(path) << text;
  return path;
}

std::string write_graph_file(const std::string& name, const Graph& g) {
  std::ostringstream ss;
  write_graph(ss, g);
  return write(name, ss.str());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli solve") {
  const auto p5 = write_graph_file("p5.gr", path_graph(5));
  for (const char* algo : {"oracle", "maxleaf", "vi", "mw", "tw-exact"}) {
    auto r = run({"solve", "--algo", algo, "--in", p5, "--k", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.record()["opt"] == 2);
    CHECK(r.record()["witness"] == json::array({3}));
  }
  auto apx = run({"solve", "--algo", "tw-apx", "--eps", "0.5", "--in", p5, "--k", "1", "--x", "2"});
  REQUIRE(apx.code == 0);
  CHECK(apx.record()["opt"].get<int>() <= 3);
  CHECK(apx.record()["decision"] == true);

  // Budget from the file's b line.
  const auto with_budget = write("p5b.gr", "p cnc 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\nb 1 1\n");
  auto fb = run({"solve", "--algo", "oracle", "--in", with_budget});
  REQUIRE(fb.code == 0);
  CHECK(fb.record()["decision"] == false);

  const auto td = write("p5.td", "s td 4 2 5\nb 1 1 2\nb 2 2 3\nb 3 3 4\nb 4 4 5\n1 2\n2 3\n3 4\n");
  auto given = run({"solve", "--algo", "tw-exact", "--in", p5, "--k", "1", "--td", td});
  REQUIRE(given.code == 0);
  CHECK(given.record()["width"] == 1);
}

TEST_CASE("cli errors and caps") {
  const auto p5 = write_graph_file("p5.gr", path_graph(5));
  CHECK(run({"solve", "--algo", "cw", "--in", p5, "--k", "1"}).code == 1);
  CHECK(run({"solve", "--algo", "oracle", "--in", p5}).code == 1);
  CHECK(run({"solve", "--algo", "nope", "--in", p5, "--k", "1"}).code == 1);
  CHECK(run({"solve", "--algo", "oracle", "--in", (scratch() / "missing.gr").string(), "--k", "1"}).code == 1);
  CHECK(run({"solve", "--algo", "tw-apx", "--eps", "0", "--in", p5, "--k", "1"}).code == 1);
  const auto bad = write("bad.gr", "p cnc 2 1\ne 1 1\n");
  CHECK(run({"solve", "--algo", "oracle", "--in", bad, "--k", "1"}).code == 1);
  const auto bad_td = write("bad.td", "s td 2 2 5\nb 1 1 2\nb 2 4 5\n1 2\n");
  CHECK(run({"solve", "--algo", "tw-exact", "--in", p5, "--k", "1", "--td", bad_td}).code == 1);

  const auto k5 = write_graph_file("k5.gr", complete_graph(5));
  auto cap = run({"solve", "--algo", "tw-exact", "--in", k5, "--k", "1", "--max-tw-exact", "2"});
  CHECK(cap.code == 2);
  CHECK(cap.record()["caps_hit"].size() == 1);
  CHECK(run({"solve", "--algo", "oracle", "--in", k5, "--k", "3", "--cap-oracle", "5"}).code == 2);
  CHECK(run({"solve", "--algo", "mw", "--in", k5, "--k", "1", "--max-mw", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 1);
}

TEST_CASE("cli count") {
  const auto p3 = write("p3.cw", "j(2,3,u(j(1,2,u(v(1),v(2))),v(3)))\n");
  auto all = run({"count", "--algo", "cw", "--expr", p3});
  REQUIRE(all.code == 0);
  CHECK(all.record(0)["min"] == 3);
  CHECK(all.record(0)["count"] == "1");
  CHECK(all.record(1)["min"] == 0);
  CHECK(all.record(1)["count"] == "1");
  CHECK(all.record(3)["min"] == 0);
  CHECK(all.record(3)["count"] == "1");
  auto one = run({"count", "--expr", p3, "--k", "1"});
  CHECK(one.record()["k"] == 1);
  auto solved = run({"solve", "--algo", "cw", "--expr", p3, "--k", "1"});
  REQUIRE(solved.code == 0);
  CHECK(solved.record()["opt"] == 0);
  const auto redundant = write("red.cw", "j(1,2,j(1,2,u(v(1),v(2))))");
  CHECK(run({"count", "--expr", redundant}).code == 1);
}

TEST_CASE("cli gen-random, params, verify-witness") {
  const auto a = (scratch() / "a.gr").string(), b = (scratch() / "b.gr").string();
  REQUIRE(run({"gen-random", "--n", "12", "--p", "0.3", "--seed", "99", "--out", a}).code == 0);
  REQUIRE(run({"gen-random", "--n", "12", "--p", "0.3", "--seed", "99", "--out", b}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != run({"gen-random", "--n", "12", "--p", "0.3", "--seed", "98"}).out);
  CHECK(run({"gen-random", "--n", "5", "--p", "1.5", "--seed", "1"}).code == 1);
  CHECK(run({"gen-random", "--n", "5", "--p", "0.5"}).code == 1);
  std::istringstream back(slurp(a));
  CHECK(read_graph(back).size() == 12);

  const auto k4 = write_graph_file("k4.gr", complete_graph(4));
  auto params = run({"params", "--in", k4, "--mw", "--tw"});
  REQUIRE(params.code == 0);
  CHECK(params.record()["fes"] == 3);
  CHECK(params.record()["treewidth_upper_bound"] == 3);

  const auto p5 = write_graph_file("p5.gr", path_graph(5));
  auto pass = run({"verify-witness", "--in", p5, "--set", "1,3", "--x", "5"});
  REQUIRE(pass.code == 0);
  CHECK(pass.record()["pairs"] == 1);
  CHECK(pass.record()["pass"] == true);
  auto fail = run({"verify-witness", "--in", p5, "--set", "1", "--x", "5", "--k", "1"});
  CHECK(fail.record()["pairs"] == 6);
  CHECK(fail.record()["pass"] == false);
  CHECK(run({"verify-witness", "--in", p5, "--set", "9"}).code == 1);
  CHECK(run({"verify-witness", "--in", p5, "--set", "2,2"}).code == 1);
  CHECK(run({"verify-witness", "--in", p5, "--set", ""}).record()["pairs"] == 10);
}

TEST_CASE("cli decomp") {
  const auto p5 = write_graph_file("p5.gr", path_graph(5));
  const auto out = (scratch() / "p5.td").string();
  auto td = run({"decomp", "--in", p5, "--kind", "td", "--out", out});
  REQUIRE(td.code == 0);
  CHECK(td.record()["width"] == 1);
  validate(read_td(out), path_graph(5));
  CHECK(run({"decomp", "--in", p5, "--kind", "nice"}).record()["width"] == 1);
  CHECK(run({"decomp", "--in", p5, "--kind", "mw"}).record()["root"] == "prime");
  CHECK(run({"decomp", "--in", p5, "--kind", "vi"}).record()["p"] == 3);
  auto md = run({"decomp", "--in", p5, "--kind", "md"});
  CHECK(md.code == 0);
  CHECK(md.out.find("prime") != std::string::npos);
}

TEST_CASE("cli reduce") {
  const auto rubp = write("ex.rubp", "r 2\na 1 1 2\na 1 1 2\n");
  const auto out = (scratch() / "rubp.gr").string(), roles = (scratch() / "roles.json").string();
  auto r = run({"reduce", "rubp", "--in", rubp, "--out", out, "--roles", roles, "--check"});
  REQUIRE(r.code == 0);
  auto rec = r.record();
  CHECK(rec["n"] == 3476);
  CHECK(rec["x"] == 3008492);
  CHECK(rec["seed_yes"] == true);
  CHECK(rec["witness_pairs"].get<Count>() <= 3008492);
  CHECK(rec["params"]["ok"] == true);
  auto file = read_graph_file(out);
  CHECK(file.graph.size() == 3476);
  CHECK(*file.k == 2);
  CHECK(*file.x == 3008492);
  CHECK(json::parse(slurp(roles))["vertices"].size() == 56);

  std::string set;
  for (auto v : rec["witness"]) set += (set.empty() ? "" : ",") + std::to_string(v.get<int>());
  CHECK(run({"verify-witness", "--in", out, "--set", set}).record()["pass"] == true);

  const auto mc = write("ex.mc", "m 2 2\ne 1 1 2 2\n");
  const auto mc_out = (scratch() / "mc.gr").string();
  auto m = run({"reduce", "mc", "--in", mc, "--out", mc_out, "--check"});
  REQUIRE(m.code == 0);
  CHECK(m.record()["k"] == 2);
  CHECK(run({"solve", "--algo", "oracle", "--in", mc_out}).record()["decision"] == true);

  const auto odd = write("odd.mc", "m 2 3\n");
  CHECK(run({"reduce", "mc", "--in", odd, "--out", mc_out}).code == 1);
  CHECK(run({"reduce", "rubp", "--in", rubp, "--out", out, "--max-vertices", "100"}).code == 2);
}
