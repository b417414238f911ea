#include <doctest.h>

#include <cmath>
#include <random>

#include "noon_ent/errors.hpp"
#include "noon_ent/nonclassicality.hpp"
#include "noon_ent/quasiprob.hpp"
#include "test_support.hpp"

using namespace noon_ent;
using doctest::Approx;

namespace {

NoisyNoonOperator dephased_lambda(int n, double lambda) {
  std::vector<double> a(n, 0.0), b(n, 0.0);
  std::vector<Complex> c(n, Complex{});
  a.back() = b.back() = 0.5;
  c.back() = 0.5 * lambda;
  return make_noisy_noon(0.0, a, b, c, true);
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST_CASE("partial transpose of dephased N00N states") {
  for (double lambda : {0.0, 0.3, 0.7, 1.0}) {
    CHECK(ppt_min_eigenvalue(dephased_lambda(2, lambda)) == Approx(-lambda / 2).epsilon(1e-12));
  }
  CHECK(ppt_min_eigenvalue(pure_noon_state(3)) == Approx(-0.5));
}

TEST_CASE("partial transpose agrees with the direct index map and across modes") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const auto s = to_dense(testing::random_state(rng));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(testing::partial_transpose_b(s));
    CHECK(ppt_min_eigenvalue(s) == Approx(es.eigenvalues().minCoeff()).epsilon(1e-12));
    CHECK(ppt_min_eigenvalue(s, Mode::a) == Approx(ppt_min_eigenvalue(s, Mode::b)).epsilon(1e-12));
  }
  const auto diag = make_noisy_noon(0.2, std::vector<double>{0.3, 0.1},
                                    std::vector<double>{0.25, 0.15},
                                    std::vector<Complex>{0.0, 0.0}, true);
  CHECK(ppt_min_eigenvalue(diag) >= -1e-12);
}

TEST_CASE("P function of the vacuum") {
  const auto vac = make_noisy_noon(1.0, std::vector<double>{0.0}, std::vector<double>{0.0},
                                   std::vector<Complex>{0.0}, true);
  const auto p = glauber_p(vac);
  REQUIRE(p.terms.size() == 1);
  CHECK(p.terms[0].order == 0);
  CHECK(p.terms[0].coefficient == 1.0);
  CHECK(p_is_classical(p));
}

TEST_CASE("P function of fully dephased N00N states") {
  const auto p1 = glauber_p(dephased_lambda(1, 0.0));
  CHECK(p1.coefficient(Mode::a, 0) == Approx(1.0));
  CHECK(p1.coefficient(Mode::a, 1) == Approx(0.5));
  CHECK(p1.coefficient(Mode::b, 1) == Approx(0.5));
  CHECK(p1.terms.size() == 3);
  CHECK_FALSE(p_is_classical(p1));

  for (int n : {2, 3, 4}) {
    const auto p = glauber_p(dephased_lambda(n, 0.0));
    CHECK(p.max_order(Mode::a) == n);
    CHECK(p.max_order(Mode::b) == n);
    CHECK(p.coefficient(Mode::a, 0) == Approx(1.0));
    CHECK_FALSE(p_is_classical(p));
  }
  CHECK_THROWS_AS(glauber_p(pure_noon_state(2)), NotDiagonal);
}

TEST_CASE("P coefficients reproduce normally ordered moments") {
  // Each term c d^j d*^j delta contributes c (j!)^2 to <a^dag^j a^j>.
  const auto s = make_noisy_noon(0.1, std::vector<double>{0.2, 0.15, 0.05},
                                 std::vector<double>{0.1, 0.3, 0.1},
                                 std::vector<Complex>{0.0, 0.0, 0.0}, true);
  const auto p = glauber_p(s);
  for (int j = 1; j <= 3; ++j) {
    double ma = 0.0, mb = 0.0;
    for (int k = j; k <= 3; ++k) {
      ma += s.diag_a(k) * factorial(k) / factorial(k - j);
      mb += s.diag_b(k) * factorial(k) / factorial(k - j);
    }
    CHECK(p.coefficient(Mode::a, j) * factorial(j) * factorial(j) == Approx(ma).epsilon(1e-14));
    CHECK(p.coefficient(Mode::b, j) * factorial(j) * factorial(j) == Approx(mb).epsilon(1e-14));
  }
  CHECK(p.coefficient(Mode::a, 0) == Approx(s.trace()).epsilon(1e-14));
}

TEST_CASE("classicality predicate") {
  DeltaDerivativeSeries s;
  s.terms = {{Mode::a, 0, 1.2}, {Mode::b, 0, -0.2}};
  CHECK_FALSE(p_is_classical(s));
  s.terms = {{Mode::a, 0, 1.0}};
  CHECK(p_is_classical(s));
}

TEST_CASE("dephased N00N: nonclassical P, nonnegative entanglement quasiprobability") {
  const auto s = dephased_lambda(2, 0.0);
  CHECK_FALSE(p_is_classical(glauber_p(s)));
  CHECK(solve_quasiprob(s).min_weight >= -1e-12);
}
