#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "psk/banded.hpp"
#include "psk/error.hpp"
#include "psk/penalty.hpp"

using namespace psk;

TEST_CASE("difference matrices carry binomial rows") {
  const auto d1 = diff_matrix(1, 3).to_dense();
  CHECK(d1 == std::vector<double>{-1, 1, 0, 0, -1, 1});
  const auto d2 = diff_matrix(2, 4).to_dense();
  CHECK(d2 == std::vector<double>{1, -2, 1, 0, 0, 1, -2, 1});
  const auto d3 = diff_matrix(3, 5);
  CHECK(d3.rows() == 2);
  for (int r = 0; r < 2; ++r) {
    CHECK(d3.at(r, r) == -1);
    CHECK(d3.at(r, r + 1) == 3);
    CHECK(d3.at(r, r + 2) == -3);
    CHECK(d3.at(r, r + 3) == 1);
  }
  CHECK_THROWS_AS(diff_matrix(4, 4), ArgumentError);
  CHECK_THROWS_AS(diff_matrix(0, 4), ArgumentError);
}

TEST_CASE("difference operator annihilates low-degree index polynomials") {
  for (int m = 1; m <= 4; ++m) {
    const auto D = diff_matrix(m, 20);
    for (int deg = 0; deg < m; ++deg) {
      std::vector<double> v(20);
      for (int k = 0; k < 20; ++k) v[k] = std::pow(k + 1.0, deg);
      double nrm = 0;
      for (double x : D.apply(v)) nrm += x * x;
      CHECK(std::sqrt(nrm) < 1e-10);
    }
  }
}

TEST_CASE("D^T D interior band and exact entries match the dense product") {
  for (int m = 1; m <= 4; ++m) {
    const int c = 15;
    const auto pen = diff_matrix(m, c);
    const Eigen::MatrixXd D = oracle::dense_diff(m, c);
    const Eigen::MatrixXd P = D.transpose() * D;
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j) CHECK(pen.dtd(i, j) == doctest::Approx(P(i, j)).epsilon(1e-14));
    for (int d = -m; d <= m; ++d) CHECK(pen.dtd_band()[d + m] == P(7, 7 + d));
  }
}

TEST_CASE("assemble_lambda matches the dense oracle") {
  for (int p : {0, 1, 3}) {
    for (int m : {1, 2, 3}) {
      const SplineBasis b(p, 4);
      const auto xs = midpoint_design(40);
      const auto d = design_matrix(b, xs);
      const auto pen = diff_matrix(m, b.num_basis());
      const double lambda = 1.0;
      const auto lam = assemble_lambda(d, pen, lambda);
      CHECK(lam.half_bandwidth() == std::max(p, m));
      const Eigen::MatrixXd ref = oracle::dense_lambda(oracle::dense_design(b, xs), m, lambda, 10.0);
      for (int i = 0; i < b.num_basis(); ++i)
        for (int j = 0; j < b.num_basis(); ++j) CHECK(lam(i, j) == doctest::Approx(ref(i, j)).epsilon(1e-13));
    }
  }
  const SplineBasis b(2, 5);
  CHECK_THROWS_AS(assemble_lambda(design_matrix(b, midpoint_design(20)), diff_matrix(2, 6), 1.0), ArgumentError);
}

TEST_CASE("lambda = 0 gives Gram matrix with unit interior row sums") {
  for (int p = 0; p <= 4; ++p) {
    const SplineBasis b(p, 12);
    const auto d = design_matrix(b, midpoint_design(120));
    const auto lam = assemble_lambda(d, diff_matrix(2, b.num_basis()), 0.0);
    for (int k = p; k < b.num_basis() - p; ++k) {
      double s = 0;
      for (int j = 0; j < b.num_basis(); ++j) s += lam(k, j);
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("assembly is linear in lambda") {
  const SplineBasis b(3, 10);
  const auto d = design_matrix(b, midpoint_design(200));
  const auto pen = diff_matrix(2, b.num_basis());
  const auto a1 = assemble_lambda(d, pen, 0.7);
  const auto a2 = assemble_lambda(d, pen, 5.3);
  const auto pm = penalty_matrix(pen, 3);
  for (int i = 0; i < b.num_basis(); ++i)
    for (int j = 0; j < b.num_basis(); ++j) CHECK(std::abs(a1(i, j) + (5.3 - 0.7) * pm(i, j) - a2(i, j)) < 1e-12);
}

TEST_CASE("penalty vanishes on polynomial coefficient sequences") {
  const auto pen = diff_matrix(3, 30);
  const auto pm = penalty_matrix(pen, 3);
  std::vector<double> theta(30);
  for (int k = 0; k < 30; ++k) theta[k] = 1.0 - 0.5 * k + 0.25 * k * k;
  const auto pt = pm.multiply(theta);
  double quad = 0;
  for (int k = 0; k < 30; ++k) quad += theta[k] * pt[k];
  CHECK(std::abs(quad) < 1e-9);
}

TEST_CASE("interior band of Lambda is constant") {
  const SplineBasis b(3, 40);
  const auto d = design_matrix(b, midpoint_design(400));
  const auto lam = assemble_lambda(d, diff_matrix(2, b.num_basis()), 1e4);
  const auto w = interior_band(lam);
  REQUIRE(w.size() == 4u);
  for (int k = 3; k < b.num_basis() - 3; ++k)
    for (int dd = 0; dd <= 3; ++dd) CHECK(std::abs(lam.band(dd, k) - w[dd]) < 1e-9);
}

TEST_CASE("gram band") {
  SUBCASE("degree zero") {
    const auto u = gram_band(design_matrix(SplineBasis(0, 10), midpoint_design(50)));
    CHECK(u[0] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("finite-M summation oracle for p=1, M=50") {
    const int K = 10, M = 50;
    const SplineBasis b(1, K);
    const auto xs = midpoint_design(K * M);
    const auto u = gram_band(design_matrix(b, xs));
    // Direct sum over points of B_k B_j / M for an interior column.
    const int k = 5;
    double u0 = 0, u1 = 0;
    for (double x : xs) {
      const auto v = oracle::all_basis(b, x);
      u0 += v[k] * v[k] / M;
      u1 += v[k] * v[k + 1] / M;
    }
    CHECK(u[0] == doctest::Approx(u0).epsilon(1e-12));
    CHECK(u[1] == doctest::Approx(u1).epsilon(1e-12));
    CHECK(std::abs(u[0] - 2.0 / 3.0) < 1.0 / (M * M));
    CHECK(std::abs(u[1] - 1.0 / 6.0) < 1.0 / (M * M));
  }
  SUBCASE("band sums to one") {
    for (int p = 0; p <= 5; ++p) {
      for (int M : {2, 3, 10}) {
        const int K = 4 * p + 6;
        const auto u = gram_band(design_matrix(SplineBasis(p, K), midpoint_design(K * M)));
        double s = u[0];
        for (int i = 1; i <= p; ++i) s += 2 * u[i];
        CHECK(std::abs(s - 1.0) < 1e-10);
      }
    }
  }
  SUBCASE("fractional M breaks translation invariance") {
    CHECK_THROWS_AS(gram_band(design_matrix(SplineBasis(2, 10), midpoint_design(125))), DomainError);
  }
  SUBCASE("continuous limit") {
    const auto u1 = continuous_gram_band(1);
    CHECK(u1[0] == doctest::Approx(2.0 / 3));
    CHECK(u1[1] == doctest::Approx(1.0 / 6));
    const auto u2 = continuous_gram_band(2);
    CHECK(u2[0] == doctest::Approx(11.0 / 20));
    CHECK(u2[1] == doctest::Approx(13.0 / 60));
    CHECK(u2[2] == doctest::Approx(1.0 / 120));
    const auto u3 = continuous_gram_band(3);
    CHECK(u3[0] == doctest::Approx(151.0 / 315));
    CHECK(u3[1] == doctest::Approx(397.0 / 1680));
    CHECK(u3[2] == doctest::Approx(1.0 / 42));
    CHECK(u3[3] == doctest::Approx(1.0 / 5040));
    // Finite-M band converges to the limit.
    const auto uf = gram_band(design_matrix(SplineBasis(3, 20), midpoint_design(20 * 400)));
    for (int d = 0; d <= 3; ++d) CHECK(std::abs(uf[d] - u3[d]) < 1e-5);
  }
}

TEST_CASE("banded solve") {
  SUBCASE("identity") {
    BandedSymmetric a(5, 2);
    for (int j = 0; j < 5; ++j) a.band(0, j) = 1.0;
    const std::vector<double> rhs{1, -2, 3, 4.5, 0};
    CHECK(banded_solve(a, rhs) == rhs);
  }
  SUBCASE("tridiagonal Toeplitz against its analytic inverse") {
    const int n = 40;
    BandedSymmetric a(n, 1);
    for (int j = 0; j < n; ++j) a.band(0, j) = 2.0;
    for (int j = 0; j + 1 < n; ++j) a.band(1, j) = -1.0;
    const BandedCholesky f(a);
    for (int col : {1, 7, 20, 40}) {
      std::vector<double> e(n, 0.0);
      e[col - 1] = 1.0;
      const auto x = f.solve(e);
      for (int i = 1; i <= n; ++i) CHECK(std::abs(x[i - 1] - oracle::toeplitz_inverse(n, i, col)) < 1e-10);
    }
  }
  SUBCASE("random SPD band against dense Cholesky") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 50, q = 3;
      BandedSymmetric a(n, q);
      for (int d = 1; d <= q; ++d)
        for (int j = 0; j + d < n; ++j) a.band(d, j) = u(gen);
      for (int j = 0; j < n; ++j) a.band(0, j) = 2.0 * q + 1.0 + u(gen);
      Eigen::MatrixXd A(n, n);
      const auto dense = a.to_dense();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = dense[i * n + j];
      Eigen::VectorXd rhs(n);
      std::vector<double> r(n);
      for (int i = 0; i < n; ++i) r[i] = rhs(i) = u(gen);
      const Eigen::VectorXd ref = A.llt().solve(rhs);
      const auto x = banded_solve(a, r);
      for (int i = 0; i < n; ++i) CHECK(std::abs(x[i] - ref(i)) < 1e-10);
      const auto ax = a.multiply(x);
      double rn = 0;
      for (int i = 0; i < n; ++i) rn = std::max(rn, std::abs(ax[i] - r[i]));
      CHECK(rn <= 1e-9 * (1.0 + 1.0));
    }
  }
  SUBCASE("non positive definite matrix reports the pivot") {
    BandedSymmetric a(4, 1);
    for (int j = 0; j < 4; ++j) a.band(0, j) = 1.0;
    for (int j = 0; j < 3; ++j) a.band(1, j) = 1.0;  // rank-deficient at the second pivot
    try {
      BandedCholesky f(a);
      FAIL("expected a singularity error");
    } catch (const SingularityError& e) {
      CHECK(e.pivot() == 1u);
    }
  }
}
