#include <doctest.h>

#include "dagwish/chol_param.hpp"
#include "dagwish/errors.hpp"
#include "test_util.hpp"

using namespace dagwish;
using namespace testutil;

namespace {

XiPoint matching_xi(const CholeskyFactor& t) { return {t.dag, t.D, -t.L}; }

// Omega by dense products, independent of the sparse accumulation.
Matrix dense_omega(const CholeskyFactor& t) {
  Matrix L = Matrix::Identity(t.dag.p(), t.dag.p());
  for (std::size_t k = 0; k < t.dag.num_edges(); ++k) {
    const Edge& e = t.dag.edges()[k];
    L(e.from, e.to) = t.L(static_cast<Eigen::Index>(k));
  }
  return L * t.D.cwiseInverse().asDiagonal() * L.transpose();
}

}  // namespace

TEST_CASE("precision_from_cholesky examples") {
  CholeskyFactor id{Dag(3), Vector::Ones(3), Vector(0)};
  CHECK(precision_from_cholesky(id).isIdentity());

  const double d1 = 0.7, d2 = 1.9, l = -0.4;
  CholeskyFactor t{Dag::from_one_based(2, {{2, 1}}), Vector(2), Vector(1)};
  t.D << d1, d2;
  t.L << l;
  Matrix o = precision_from_cholesky(t);
  CHECK(o(0, 0) == doctest::Approx(1 / d1));
  CHECK(o(0, 1) == doctest::Approx(l / d1));
  CHECK(o(1, 0) == doctest::Approx(l / d1));
  CHECK(o(1, 1) == doctest::Approx(l * l / d1 + 1 / d2));

  Rng rng(1);
  Matrix c = precision_from_cholesky(random_theta(four_cycle(), rng));
  CHECK(c(3, 0) == 0.0);
  CHECK(c(0, 3) == 0.0);
  CHECK(c(2, 1) != 0.0);
}

TEST_CASE("precision has exact zeros outside the moral graph") {
  Rng rng(2);
  for (int rep = 0; rep < 50; ++rep) {
    Dag d = random_graph(unif_int(rng, 2, 12), 0.3, rng);
    CholeskyFactor t = random_theta(d, rng);
    Matrix o = precision_from_cholesky(t);
    auto m = moral_graph(d);
    for (int i = 0; i < d.p(); ++i)
      for (int j = 0; j < i; ++j)
        if (!m.contains(i, j)) REQUIRE(o(i, j) == 0.0);
    CHECK(max_rel_diff(o, dense_omega(t)) < 1e-12);
  }
}

TEST_CASE("cholesky_from_precision examples") {
  CholeskyFactor t = cholesky_from_precision(Matrix::Identity(4, 4), four_cycle());
  CHECK(t.D.isOnes());
  CHECK(t.L.isZero());

  CholeskyFactor two{Dag::from_one_based(2, {{2, 1}}), Vector(2), Vector(1)};
  two.D << 0.7, 1.9;
  two.L << -0.4;
  CholeskyFactor back = cholesky_from_precision(precision_from_cholesky(two), two.dag);
  CHECK(back.D(0) == doctest::Approx(0.7));
  CHECK(back.D(1) == doctest::Approx(1.9));
  CHECK(back.L(0) == doctest::Approx(-0.4));

  Rng rng(3);
  Matrix o = precision_from_cholesky(random_theta(four_cycle(), rng));
  o(3, 0) = o(0, 3) = 0.2;
  CHECK_THROWS_AS(cholesky_from_precision(o, four_cycle()), PatternError);

  Matrix bad = Matrix::Identity(4, 4);
  bad(3, 3) = -1.0;
  CHECK_THROWS_AS(cholesky_from_precision(bad, four_cycle()), NotPositiveDefinite);
}

TEST_CASE("sigma_from_xi examples") {
  XiPoint id{Dag(3), Vector::Ones(3), Vector(0)};
  CHECK(sigma_from_xi(id).isIdentity());

  XiPoint xi{Dag::from_one_based(2, {{2, 1}}), Vector(2), Vector(1)};
  xi.lambda << 1.0, 2.0;
  xi.beta << 0.5;
  Matrix s = sigma_from_xi(xi);
  CHECK(s(1, 1) == doctest::Approx(2.0));
  CHECK(s(1, 0) == doctest::Approx(1.0));
  CHECK(s(0, 1) == doctest::Approx(1.0));
  CHECK(s(0, 0) == doctest::Approx(1.5));

  XiPoint back = xi_from_sigma(s, xi.dag);
  CHECK(back.lambda(0) == doctest::Approx(1.0));
  CHECK(back.lambda(1) == doctest::Approx(2.0));
  CHECK(back.beta(0) == doctest::Approx(0.5));

  XiPoint fromI = xi_from_sigma(Matrix::Identity(4, 4), four_cycle());
  CHECK(fromI.lambda.isOnes());
  CHECK(fromI.beta.isZero());
}

TEST_CASE("xi_from_sigma rejects non-SPD input") {
  Matrix m = Matrix::Identity(3, 3);
  m(0, 1) = m(1, 0) = 2.0;
  CHECK_THROWS_AS(xi_from_sigma(m, Dag::complete(3)), NotPositiveDefinite);
  CHECK_THROWS_AS(is_dag_markov(m, Dag::complete(3)), NotPositiveDefinite);
}

TEST_CASE("round trips and cross-consistency") {
  Rng rng(4);
  int n = 0;
  for (double prob : {0.1, 0.5, 1.0}) {
    for (int rep = 0; rep < 70; ++rep, ++n) {
      Dag d = random_graph(unif_int(rng, 1, 20), prob, rng);
      CholeskyFactor t = random_theta(d, rng);
      Matrix o = precision_from_cholesky(t);
      CholeskyFactor t2 = cholesky_from_precision(o, d);
      REQUIRE((t2.D - t.D).cwiseAbs().maxCoeff() <= 1e-10 * t.D.cwiseAbs().maxCoeff());
      if (t.L.size() > 0)
        REQUIRE((t2.L - t.L).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, t.L.cwiseAbs().maxCoeff()));

      XiPoint xi = matching_xi(t);
      Matrix s = sigma_from_xi(xi);
      XiPoint xi2 = xi_from_sigma(s, d);
      REQUIRE((xi2.lambda - xi.lambda).cwiseAbs().maxCoeff() <= 1e-10 * xi.lambda.maxCoeff());
      if (xi.beta.size() > 0)
        REQUIRE((xi2.beta - xi.beta).cwiseAbs().maxCoeff() <=
                1e-10 * std::max(1.0, xi.beta.cwiseAbs().maxCoeff()));

      REQUIRE(max_rel_diff(s, o.inverse()) < 1e-9);
      REQUIRE(is_dag_markov(s, d, 1e-9));
      REQUIRE(Eigen::SelfAdjointEigenSolver<Matrix>(s).eigenvalues().minCoeff() > 0.0);

      CholeskyFactor t3 = cholesky_from_xi(xi_from_cholesky(t));
      REQUIRE(t3.L == t.L);
    }
  }
  CHECK(n >= 200);
}

TEST_CASE("is_dag_markov examples") {
  CHECK(is_dag_markov(Matrix::Identity(4, 4), four_cycle()));
  Matrix s = Matrix::Identity(4, 4);
  s(3, 0) = s(0, 3) = 0.5;
  CHECK_FALSE(is_dag_markov(s, four_cycle()));
  CHECK(is_dag_markov(s, Dag::complete(4)));
}

TEST_CASE("sample_data covariance") {
  Rng rng(5);
  Dag d = four_cycle();
  CholeskyFactor t = random_theta(d, rng);
  Matrix sigma = sigma_from_xi(matching_xi(t));
  const int n = 100000;
  Matrix X = sample_data(t, n, rng);
  Matrix S = X.transpose() * X / n;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double se = std::sqrt((sigma(i, i) * sigma(j, j) + sigma(i, j) * sigma(i, j)) / n);
      CHECK(std::abs(S(i, j) - sigma(i, j)) < 3 * se);
    }
}

TEST_CASE("sample_data identity and determinism") {
  CholeskyFactor id{Dag(3), Vector::Ones(3), Vector(0)};
  Rng a(9);
  Matrix X = sample_data(id, 20000, a);
  CHECK(X.colwise().mean().cwiseAbs().maxCoeff() < 4 / std::sqrt(20000.0));
  Matrix S = X.transpose() * X / 20000.0;
  CHECK((S - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 0.05);

  Rng rng(1);
  CholeskyFactor t = random_theta(four_cycle(), rng);
  Rng c(42), e(42);
  Matrix Y1 = sample_data(t, 50, c), Y2 = sample_data(t, 50, e);
  CHECK((Y1.array() == Y2.array()).all());
}

TEST_CASE("validate rejects bad factors") {
  CholeskyFactor t{four_cycle(), Vector::Ones(4), Vector::Zero(4)};
  CHECK_NOTHROW(validate(t));
  t.D(2) = 0.0;
  CHECK_THROWS(validate(t));
  CholeskyFactor short_l{four_cycle(), Vector::Ones(4), Vector::Zero(3)};
  CHECK_THROWS(validate(short_l));
  XiPoint xi{four_cycle(), Vector::Ones(4), Vector::Zero(4)};
  xi.lambda(0) = -1.0;
  CHECK_THROWS(validate(xi));
}

TEST_CASE("dense_L places values") {
  CholeskyFactor t{four_cycle(), Vector::Ones(4), Vector(4)};
  t.L << 1, 2, 3, 4;
  Matrix L = t.dense_L();
  CHECK(L(1, 0) == 1);
  CHECK(L(2, 0) == 2);
  CHECK(L(3, 1) == 3);
  CHECK(L(3, 2) == 4);
  CHECK(L.diagonal().isOnes());
  CHECK(L(3, 0) == 0);
}
