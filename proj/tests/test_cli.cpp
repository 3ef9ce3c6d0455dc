#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "dagwish/cli.hpp"
#include "dagwish/io.hpp"
#include "test_util.hpp"

using namespace dagwish;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("dagwish_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string s(const fs::path& p) { return p.string(); }

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"generate"}).code == 2);
  CHECK(run({"generate", "--p", "-3"}).code == 2);
  CHECK(run({"generate", "--p", "4", "--edge-prob", "1.5"}).code == 2);
  CHECK(run({"select", "--data", "x.csv", "--out", "y", "--method", "magic"}).code == 2);
  Run h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("generate") != std::string::npos);
  Run v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out == std::string(kVersion) + "\n");
}

TEST_CASE("computation errors exit 1 with a JSON error") {
  fs::path dir = scratch("errors");
  Run missing = run({"select", "--data", s(dir / "nope.csv"), "--out", s(dir / "r.json")});
  CHECK(missing.code == 1);
  json e = json::parse(missing.err);
  CHECK(e.at("error").at("kind") == "error");

  // theta with a zero conditional variance
  io::write_file(s(dir / "bad.json"),
                 R"({"graph":{"p":2,"edges":[]},"D":[1,0],"L":[]})");
  Run bad = run({"sample", "--theta", s(dir / "bad.json"), "--n", "5", "--out", s(dir / "x.csv")});
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.err).contains("error"));

  // n <= max parent count for the MLE
  io::write_file(s(dir / "g.json"), R"({"p":3,"edges":[[2,1],[3,1],[3,2]]})");
  io::write_file(s(dir / "d.csv"), "x1,x2,x3\n1,2,3\n0.5,-1,2\n");
  Run fit = run({"fit", "--data", s(dir / "d.csv"), "--graph", s(dir / "g.json"), "--out",
                 s(dir / "f.json")});
  CHECK(fit.code == 1);
  CHECK(json::parse(fit.err).at("error").at("message").get<std::string>().size() > 0);
}

TEST_CASE("generate writes graph, theta and manifest") {
  fs::path dir = scratch("generate");
  const std::string out = s(dir / "g");
  REQUIRE(run({"generate", "--p", "50", "--edge-prob", "0.01", "--seed", "7", "--out", out}).code == 0);
  json g = io::read_json_file(out + ".graph.json");
  CHECK(g.at("p") == 50);
  for (const auto& e : g.at("edges")) CHECK(e[0].get<int>() > e[1].get<int>());
  CholeskyFactor t = io::theta_from_json(io::read_json_file(out + ".theta.json"));
  CHECK(t.dag == io::graph_from_json(g));
  for (Eigen::Index k = 0; k < t.L.size(); ++k) {
    CHECK(std::abs(t.L(k)) >= 0.2);
    CHECK(std::abs(t.L(k)) <= 0.8);
  }
  json m = io::read_json_file(out + ".manifest.json");
  CHECK(m.at("command") == "generate");
  CHECK(m.at("seed") == 7);
  CHECK(m.at("outputs").size() == 2);
  CHECK(m.at("outputs")[0].at("sha256") == sha256_hex(io::read_file(out + ".graph.json")));
}

TEST_CASE("pipeline is byte-reproducible and replays") {
  fs::path dir = scratch("pipeline");
  const std::string pre = s(dir / "m"), data = s(dir / "x.csv"), sel = s(dir / "sel.json");
  REQUIRE(run({"generate", "--p", "12", "--edge-prob", "0.2", "--seed", "3", "--out", pre}).code == 0);
  const std::string theta_bytes = io::read_file(pre + ".theta.json");
  REQUIRE(run({"sample", "--theta", pre + ".theta.json", "--n", "60", "--seed", "4", "--out", data})
              .code == 0);
  CHECK(io::read_file(pre + ".theta.json") == theta_bytes);
  CHECK(io::read_csv_file(data).rows() == 60);

  const std::vector<std::string> sel_args = {"select", "--data", data, "--restarts", "3", "--steps",
                                             "10", "--seed", "5", "--out", sel};
  REQUIRE(run(sel_args).code == 0);
  const std::string first = io::read_file(sel), first_manifest = io::read_file(sel + ".manifest.json");
  REQUIRE(run(sel_args).code == 0);
  CHECK(io::read_file(sel) == first);
  CHECK(io::read_file(sel + ".manifest.json") == first_manifest);

  json m = json::parse(first_manifest);
  CHECK(m.at("config").at("restarts") == 3);
  CHECK(m.at("config").at("neighborhood") == 30);
  CHECK(m.at("config").at("method") == "dagw");
  CHECK(m.at("inputs")[0].at("sha256") == sha256_hex(io::read_file(data)));

  fs::remove(sel);
  REQUIRE(run({"replay", sel + ".manifest.json"}).code == 0);
  CHECK(io::read_file(sel) == first);

  for (const std::string est : {"mle", "map", "bayes-sigma", "bayes-omega"}) {
    const std::string rep = s(dir / (est + ".json"));
    REQUIRE(run({"fit", "--data", data, "--graph", pre + ".graph.json", "--estimator", est,
                 "--truth", pre + ".theta.json", "--out", rep})
                .code == 0);
    json r = io::read_json_file(rep);
    CHECK(r.at("losses").at("stein").get<double>() >= 0.0);
    const std::string csv = s(dir / (est + ".losses.csv"));
    REQUIRE(run({"evaluate", "--truth", pre + ".theta.json", "--estimate", rep, "--losses", "--out",
                 csv})
                .code == 0);
  }
  const std::string conf = s(dir / "conf.csv");
  REQUIRE(run({"evaluate", "--truth", pre + ".graph.json", "--estimate", sel, "--out", conf}).code ==
          0);
  CHECK(io::read_file(conf).find("sensitivity") != std::string::npos);

  // A changed input blocks replay.
  io::write_file(data, io::read_file(data) + "0,0,0,0,0,0,0,0,0,0,0,0\n");
  CHECK(run({"replay", sel + ".manifest.json"}).code == 1);
}

TEST_CASE("select echoes the large-p defaults") {
  fs::path dir = scratch("bigp");
  const std::string pre = s(dir / "m"), data = s(dir / "x.csv"), sel = s(dir / "sel.json");
  REQUIRE(run({"generate", "--p", "500", "--edge-prob", "0.002", "--seed", "1", "--out", pre}).code == 0);
  REQUIRE(run({"sample", "--theta", pre + ".theta.json", "--n", "40", "--seed", "2", "--out", data})
              .code == 0);
  REQUIRE(run({"select", "--data", data, "--steps", "2", "--neighborhood", "5", "--out", sel}).code ==
          0);
  json c = io::read_json_file(sel + ".manifest.json").at("config");
  CHECK(c.at("restarts") == 9);
  CHECK(c.at("steps") == 2);
  CHECK(io::read_json_file(sel).at("per_restart").size() == 9);
}

TEST_CASE("table commands are reproducible") {
  fs::path dir = scratch("tables");
  const std::string t1 = s(dir / "t1.csv"), t2 = s(dir / "t2.csv");
  const std::vector<std::string> a1 = {"table1", "--p", "10", "--n", "50", "--edge-prob", "0.2",
                                       "--reps", "2", "--restarts", "2", "--steps", "5",
                                       "--seed", "9", "--out", t1};
  REQUIRE(run(a1).code == 0);
  const std::string b1 = io::read_file(t1);
  REQUIRE(run(a1).code == 0);
  CHECK(io::read_file(t1) == b1);
  CHECK(b1.find("LassoDAG") != std::string::npos);
  CHECK(b1.find("DAG-W") != std::string::npos);

  REQUIRE(run({"table2", "--p", "8", "--n", "30,60", "--edge-prob", "0.3", "--reps", "3", "--seed",
               "2", "--out", t2})
              .code == 0);
  CHECK(io::read_file(t2).find("Sigma_BAYES") != std::string::npos);
}

TEST_CASE("installed binary behaves like run_cli") {
  fs::path dir = scratch("binary");
  const std::string bin = DAGWISH_CLI_PATH;
  const std::string err = s(dir / "err.txt");
  CHECK(std::system((bin + " --version > " + s(dir / "v.txt")).c_str()) == 0);
  CHECK(io::read_file(s(dir / "v.txt")) == std::string(kVersion) + "\n");
  int code = std::system((bin + " generate 2> " + err + " > /dev/null").c_str());
  CHECK(WEXITSTATUS(code) == 2);
  code = std::system((bin + " select --data " + s(dir / "none.csv") + " --out " + s(dir / "o.json") +
                      " 2> " + err)
                         .c_str());
  CHECK(WEXITSTATUS(code) == 1);
  CHECK(json::parse(io::read_file(err)).contains("error"));
}
