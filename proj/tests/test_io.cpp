#include <doctest.h>

#include <cstring>
#include <limits>
#include <sstream>

#include "dagwish/errors.hpp"
#include "dagwish/io.hpp"
#include "test_util.hpp"

using namespace dagwish;
using namespace testutil;
using io::json;

namespace {

std::uint64_t bits(double x) {
  std::uint64_t b;
  std::memcpy(&b, &x, sizeof b);
  return b;
}

}  // namespace

TEST_CASE("format_double round trips") {
  Rng rng(1);
  std::uniform_int_distribution<std::uint64_t> any;
  int tested = 0;
  while (tested < 20000) {
    std::uint64_t b = any(rng);
    double x;
    std::memcpy(&x, &b, sizeof x);
    if (!std::isfinite(x)) continue;
    ++tested;
    std::string s = io::format_double(x);
    REQUIRE(bits(std::strtod(s.c_str(), nullptr)) == b);
  }
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(-2.5e-300) == "-2.5e-300");
}

TEST_CASE("graph JSON is 1-based") {
  Dag d = four_cycle();
  json j = io::graph_to_json(d);
  CHECK(j.at("p") == 4);
  CHECK(j.at("edges") == json::parse("[[2,1],[3,1],[4,2],[4,3]]"));
  CHECK(io::graph_from_json(j) == d);

  CHECK_THROWS(io::graph_from_json(json::parse(R"({"p":3,"edges":[[1,2]]})")));
  CHECK_THROWS(io::graph_from_json(json::parse(R"({"p":3,"edges":[[4,1]]})")));
  CHECK_THROWS(io::graph_from_json(json::parse(R"({"p":3,"edges":[[2]]})")));

  Rng rng(2);
  for (int rep = 0; rep < 50; ++rep) {
    Dag g = random_graph(unif_int(rng, 1, 15), 0.3, rng);
    CHECK(io::graph_from_json(json::parse(io::dump(io::graph_to_json(g)))) == g);
  }
}

TEST_CASE("theta, matrix and incomplete JSON round trips are exact") {
  Rng rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    Dag d = random_graph(unif_int(rng, 1, 10), 0.4, rng);
    CholeskyFactor t = random_theta(d, rng);
    CholeskyFactor t2 = io::theta_from_json(json::parse(io::dump(io::theta_to_json(t))));
    CHECK(t2.dag == d);
    CHECK((t2.D.array() == t.D.array()).all());
    CHECK((t2.L.array() == t.L.array()).all());

    Matrix M = random_spd(d.p(), rng);
    Matrix M2 = io::matrix_from_json(json::parse(io::dump(io::matrix_to_json(M))));
    CHECK((M2.array() == M.array()).all());

    IncompleteMatrix g = project(M, d);
    IncompleteMatrix g2 = io::incomplete_from_json(json::parse(io::dump(io::incomplete_to_json(g))));
    CHECK((g2.diag.array() == g.diag.array()).all());
    CHECK((g2.off.array() == g.off.array()).all());
  }

  json bad = io::theta_to_json(random_theta(four_cycle(), rng));
  bad["L"][0]["i"] = 4;
  bad["L"][0]["j"] = 1;
  CHECK_THROWS(io::theta_from_json(bad));
  json missing = io::theta_to_json(random_theta(four_cycle(), rng));
  missing["L"].erase(1);
  CHECK_THROWS(io::theta_from_json(missing));
}

TEST_CASE("params spec forms") {
  json rule = json::parse(R"({"U":{"scaled_identity":3},"alpha":{"rule":{"b":3,"c":1}}})");
  io::ParamsSpec s = io::params_spec_from_json(rule);
  Dag d = four_cycle();
  DagWishartParams p = io::resolve(s, &d);
  CHECK(p.U.isApprox(3 * Matrix::Identity(4, 4)));
  CHECK(p.alpha == alpha_rule(d, 3, 1));
  CHECK_THROWS(io::resolve(s));
  CHECK(io::params_spec_to_json(s) == rule);

  json explicit_form = json::parse(
      R"({"graph":{"p":2,"edges":[[2,1]]},"U":[2,0.5,0.5,1],"alpha":[5,6]})");
  io::ParamsSpec e = io::params_spec_from_json(explicit_form);
  DagWishartParams q = io::resolve(e);
  CHECK(q.U(1, 0) == 0.5);
  CHECK(q.alpha(1) == 6);
  CHECK(io::params_spec_to_json(e) == explicit_form);

  CHECK_THROWS(io::params_spec_from_json(json::parse(R"({"U":[1,2,3],"alpha":[1]})")));
  json indefinite = json::parse(R"({"graph":{"p":2,"edges":[[2,1]]},"U":[1,2,2,1],"alpha":[5,6]})");
  CHECK_THROWS(io::resolve(io::params_spec_from_json(indefinite)));
}

TEST_CASE("CSV reading and writing") {
  Rng rng(4);
  Matrix X(7, 3);
  for (int i = 0; i < 7; ++i)
    for (int k = 0; k < 3; ++k) X(i, k) = unif(rng, -1e6, 1e6) * std::pow(10.0, unif_int(rng, -20, 0));
  for (bool header : {true, false}) {
    std::stringstream ss;
    io::write_csv(ss, X, header);
    Matrix Y = io::read_csv(ss);
    CHECK((Y.array() == X.array()).all());
  }

  std::stringstream h;
  io::write_csv(h, X.topRows(1));
  CHECK(h.str().rfind("x1,x2,x3\n", 0) == 0);

  std::istringstream spaced("a, b\n 1 , 2\r\n\n+3,-4e-2\n");
  Matrix Z = io::read_csv(spaced);
  REQUIRE(Z.rows() == 2);
  CHECK(Z(1, 0) == 3.0);
  CHECK(Z(1, 1) == -0.04);

  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(io::read_csv(ragged), std::invalid_argument);
  std::istringstream text("1,2\n3,x\n");
  CHECK_THROWS_AS(io::read_csv(text), std::invalid_argument);
}

TEST_CASE("search result JSON fields") {
  SearchResult r;
  r.best = {four_cycle(), -12.5};
  r.visited = {r.best, {Dag(4), -20.0}};
  r.per_restart = {{0.1, -12.5}};
  json j = io::search_result_to_json(r);
  CHECK(j.at("best").at("score") == -12.5);
  CHECK(io::graph_from_json(j.at("best").at("graph")) == four_cycle());
  CHECK(j.at("visited_count") == 2);
  CHECK(j.at("per_restart").size() == 1);
}
