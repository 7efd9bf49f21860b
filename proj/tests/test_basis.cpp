#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "psk/basis.hpp"
#include "psk/error.hpp"

using namespace psk;

TEST_CASE("knot grid is uniform and extended") {
  const SplineBasis b(3, 10);
  CHECK(b.num_basis() == 13);
  const auto& t = b.knots();
  REQUIRE(t.size() == 17u);
  CHECK(t.front() == doctest::Approx(-0.3));
  CHECK(t.back() == doctest::Approx(1.3));
  for (std::size_t j = 1; j < t.size(); ++j) CHECK(std::abs((t[j] - t[j - 1]) - 0.1) < 1e-12 * 0.1 + 1e-15);
}

TEST_CASE("degree zero basis is an interval indicator") {
  const SplineBasis b(0, 4);
  const auto v = eval_basis(b, 0.3);
  CHECK(v.first_index == 1);
  REQUIRE(v.values.size() == 1u);
  CHECK(v.values[0] == 1.0);
}

TEST_CASE("linear hat peaks at interior knots") {
  const SplineBasis b(1, 8);
  for (int j = 1; j < 8; ++j) {
    const auto v = eval_basis(b, j / 8.0);
    int ones = 0, zeros = 0;
    for (double x : v.values) {
      if (std::abs(x - 1.0) < 1e-14) ++ones;
      if (std::abs(x) < 1e-14) ++zeros;
    }
    CHECK(ones == 1);
    CHECK(zeros == 1);
  }
}

TEST_CASE("local evaluation matches naive recursion over the full knot vector") {
  for (int p : {0, 1, 2, 3, 5}) {
    for (int K : {3, 10, 17}) {
      const SplineBasis b(p, K);
      for (double x : {0.0, 0.5, 0.123, 1.0 / K, 0.999, 1.0}) {
        const auto local = eval_basis(b, x);
        const auto full = oracle::all_basis(b, x);
        for (int j = 0; j < b.num_basis(); ++j) {
          const int off = j - local.first_index;
          const double mine = (off >= 0 && off <= p) ? local.values[off] : 0.0;
          CHECK(mine == doctest::Approx(full[j]).epsilon(1e-12));
        }
      }
    }
  }
  const SplineBasis b(3, 10);
  const auto v = eval_basis(b, 0.55);
  double s = 0;
  for (double x : v.values) {
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    s += x;
  }
  CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("evaluation outside [0,1] is a domain error") {
  const SplineBasis b(2, 5);
  CHECK_THROWS_AS(eval_basis(b, -1e-9), DomainError);
  CHECK_THROWS_AS(eval_basis(b, 1.0 + 1e-9), DomainError);
  CHECK_THROWS_AS(SplineBasis(2, 1), ArgumentError);
}

TEST_CASE("partition of unity on random points") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p = 0; p <= 5; ++p) {
    for (int K : {2, 7, 50, 200}) {
      const SplineBasis b(p, K);
      double worst = 0;
      for (int i = 0; i < 1000; ++i) {
        const auto v = eval_basis(b, u(gen));
        double s = 0;
        for (double x : v.values) {
          CHECK(x >= 0.0);
          s += x;
        }
        worst = std::max(worst, std::abs(s - 1.0));
      }
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("local support and at most p+1 nonzeros") {
  const SplineBasis b(3, 12);
  for (double x : {0.0, 0.2, 0.51, 1.0}) {
    const auto full = oracle::all_basis(b, x);
    int nz = 0;
    for (int k = 0; k < b.num_basis(); ++k) {
      if (full[k] != 0.0) {
        ++nz;
        // Support of 0-based basis k is [(k-p)/K, (k+1)/K].
        CHECK(x >= (k - 3) / 12.0 - 1e-12);
        CHECK(x <= (k + 1) / 12.0 + 1e-12);
      }
    }
    CHECK(nz <= 4);
  }
}

TEST_CASE("design matrix rows sum to one") {
  const SplineBasis b(3, 5);
  const auto d = design_matrix(b, midpoint_design(100));
  for (int i = 0; i < d.rows(); ++i) {
    double s = 0;
    for (double v : d.row(i)) s += v;
    CHECK(std::abs(s - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(design_matrix(b, std::vector<double>{}), ArgumentError);
}

TEST_CASE("degree zero design at midpoints is identity-like") {
  const SplineBasis b(0, 6);
  const auto d = design_matrix(b, midpoint_design(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(d.at(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("column sums equal M on the interior") {
  // 1-based columns p+1..K, i.e. 0-based p..K-1.
  for (int p : {1, 2, 3}) {
    for (int M : {2, 5, 8}) {
      const int K = 12;
      const auto d = design_matrix(SplineBasis(p, K), midpoint_design(K * M));
      std::vector<double> colsum(d.cols(), 0.0);
      for (int i = 0; i < d.rows(); ++i)
        for (int l = 0; l <= p; ++l) colsum[d.first(i) + l] += d.row(i)[l];
      for (int k = p; k <= K - 1; ++k) CHECK(std::abs(colsum[k] - M) < 1e-10);
    }
  }
}

TEST_CASE("Gram bandwidth is p") {
  const SplineBasis b(2, 9);
  const auto d = design_matrix(b, midpoint_design(90));
  Eigen::MatrixXd B(d.rows(), d.cols());
  const auto dense = d.to_dense();
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) B(i, j) = dense[i * d.cols() + j];
  const Eigen::MatrixXd G = B.transpose() * B;
  for (int i = 0; i < G.rows(); ++i)
    for (int j = 0; j < G.cols(); ++j)
      if (std::abs(i - j) > 2) CHECK(G(i, j) == 0.0);
}

TEST_CASE("first-moment identity") {
  CHECK(std::abs(first_moment_check(SplineBasis(1, 4), 0.3)) < 1e-10);
  CHECK(std::abs(first_moment_check(SplineBasis(3, 10), 0.77)) < 1e-10);
  CHECK(std::abs(first_moment_check(SplineBasis(2, 6), 0.5)) < 1e-10);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p = 1; p <= 5; ++p) {
    const SplineBasis b(p, 23);
    for (int i = 0; i < 200; ++i) CHECK(std::abs(first_moment_check(b, u(gen))) < 1e-10);
  }
  CHECK_THROWS_AS(first_moment_check(SplineBasis(0, 4), 0.3), UnsupportedError);
}

TEST_CASE("polynomials of degree <= p are reproduced by least squares") {
  for (int p = 1; p <= 4; ++p) {
    const SplineBasis b(p, 9);
    const auto xs = midpoint_design(300);
    const Eigen::MatrixXd B = oracle::dense_design(b, xs);
    Eigen::VectorXd y(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) y(i) = std::pow(xs[i] - 0.3, p) + 2.0 * xs[i];
    const Eigen::VectorXd theta = B.colPivHouseholderQr().solve(y);
    double worst = 0;
    for (int g = 0; g <= 500; ++g) {
      const double x = g / 500.0;
      const auto v = oracle::all_basis(b, x);
      double s = 0;
      for (int j = 0; j < b.num_basis(); ++j) s += v[j] * theta(j);
      worst = std::max(worst, std::abs(s - (std::pow(x - 0.3, p) + 2.0 * x)));
    }
    CHECK(worst < 1e-8);
  }
}
