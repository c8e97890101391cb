#include <doctest.h>

#include <cmath>
#include <vector>

#include "bbeta/errors.hpp"
#include "bbeta/sampling.hpp"
#include "stat_helpers.hpp"

using namespace bbeta;
using namespace bbeta::testing;

TEST_CASE("gamma mean for shape 5") {
  RngStream r(11);
  const int n = 1'000'000;
  const GammaSampler g(5.0);
  long double s = 0;
  for (int i = 0; i < n; ++i) s += g(r);
  CHECK(std::fabs(static_cast<double>(s / n) - 5.0) < 5 * std::sqrt(5.0) / 1e3);
}

TEST_CASE("gamma variance for shape 0.3 (boosted)") {
  RngStream r(12);
  const int n = 1'000'000;
  const GammaSampler g(0.3);
  std::vector<double> v(n);
  for (auto& x : v) x = g(r);
  // Var of the sample variance: (μ4 − σ⁴)/n with μ4 = 3k² + 6k for Gamma(k).
  const double k = 0.3, mu4 = 3 * k * k + 6 * k;
  const double se = std::sqrt((mu4 - k * k) / n);
  CHECK(std::fabs(variance(v) - 0.3) < 5 * se);
}

TEST_CASE("gamma KS against the regularized incomplete gamma") {
  for (double shape : {0.05, 0.7, 1.0, 3.5, 40.0}) {
    RngStream r(static_cast<std::uint64_t>(shape * 1000));
    const GammaSampler g(shape);
    std::vector<double> v(200'000);
    for (auto& x : v) x = g(r);
    const double d = ks_statistic(v, [shape](double x) { return boost::math::gamma_p(shape, x); });
    CAPTURE(shape);
    CHECK(d < ks_critical_one_sample(v.size()));
  }
}

TEST_CASE("gamma rejects invalid shapes") {
  RngStream r(0);
  CHECK_THROWS_AS(gamma_variate(r, 0.0), DomainError);
  CHECK_THROWS_AS(gamma_variate(r, -1.0), DomainError);
  CHECK_THROWS_AS(gamma_variate(r, std::nan("")), DomainError);
}

TEST_CASE("beta_variate stays strictly inside (0, 1)") {
  RngStream r(3);
  for (int i = 0; i < 100'000; ++i) {
    const double w = beta_variate(r, 0.05, 0.05);
    REQUIRE(w > 0.0);
    REQUIRE(w < 1.0);
  }
}

TEST_CASE("bivariate sample: symmetric marginal mean") {
  RngStream r(21);
  const BivariateBetaParams p(4, 4, 4, 4, 4, 4);
  const auto b = sample_bivariate_beta(r, p, 1'000'000);
  const double se = std::sqrt(BetaMarginal(8, 8).variance() / 1e6);
  CHECK(std::fabs(mean(b.xs) - 0.5) < 4 * se);
  CHECK(b.size() == 1'000'000);
  CHECK(b.seed == 21);
}

TEST_CASE("bivariate sample: two different shared splits give r near 0.48") {
  for (auto p : {BivariateBetaParams::from_marginals(8, 8, 8, 8, 4, 4),
                 BivariateBetaParams::from_marginals(8, 8, 8, 8, 6, 2)}) {
    RngStream r(2018);
    const auto b = sample_bivariate_beta(r, p, 5000);
    CHECK(std::fabs(correlation(b.xs, b.ys) - 0.48) < 0.04);
  }
}

TEST_CASE("bivariate sample: reproducible and strictly interior") {
  const BivariateBetaParams p(0.2, 0.3, 0.25, 0.2, 0.1, 0.15);
  RngStream r1(77), r2(77);
  const auto a = sample_bivariate_beta(r1, p, 50'000);
  const auto b = sample_bivariate_beta(r2, p, 50'000);
  CHECK(a.xs == b.xs);
  CHECK(a.ys == b.ys);
  CHECK(a.params_digest == b.params_digest);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a.xs[i] > 0.0);
    REQUIRE(a.xs[i] < 1.0);
    REQUIRE(a.ys[i] > 0.0);
    REQUIRE(a.ys[i] < 1.0);
  }
  RngStream r3(0);
  CHECK_THROWS_AS(sample_bivariate_beta(r3, p, 0), DomainError);
}

TEST_CASE("params_digest separates parameter sets") {
  const BivariateBetaParams p(1, 2, 3, 4, 5, 6), q(1, 2, 3, 4, 5, 6.5);
  CHECK(params_digest("bivariate", p.shapes()) == params_digest("bivariate", p.shapes()));
  CHECK(params_digest("bivariate", p.shapes()) != params_digest("bivariate", q.shapes()));
  CHECK(params_digest("bivariate", p.shapes()).size() == 16);
}

TEST_CASE("latent draw reconstructs x and y") {
  const BivariateBetaParams p(1.5, 2.5, 0.7, 3.0, 2.0, 0.9);
  RngStream r(8);
  for (int i = 0; i < 10'000; ++i) {
    const auto d = sample_latents(r, p);
    const double x = d.x_prime * d.w1 + (1 - d.x_prime) * d.w3;
    const double y = d.y_prime * d.w2 + (1 - d.y_prime) * d.w3;
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
    REQUIRE(std::fabs(x - d.x) <= 1e-14);
    REQUIRE(std::fabs(y - d.y) <= 1e-14);
  }
}

TEST_CASE("near-zero shared shapes give uncorrelated pairs") {
  const BivariateBetaParams p(2, 3, 4, 1.5, 1e-4, 1e-4);
  RngStream r(31);
  const auto b = sample_bivariate_beta(r, p, 100'000);
  CHECK(std::fabs(correlation(b.xs, b.ys)) < 0.02);
}

TEST_CASE("x' follows Beta(υ1, υ3)") {
  const BivariateBetaParams p(1.2, 0.8, 2.0, 0.5, 0.6, 1.1);
  RngStream r(41);
  std::vector<double> xp(1'000'000);
  for (auto& v : xp) v = sample_latents(r, p).x_prime;
  CHECK(ks_beta(xp, p.upsilon1(), p.upsilon3()) < ks_critical_one_sample(xp.size()));
}

TEST_CASE("RowBatch column access") {
  RowBatch b;
  b.k = 2;
  b.values = {1, 2, 3, 4, 5, 6};
  CHECK(b.size() == 3);
  CHECK(b.column(1) == std::vector<double>{2, 4, 6});
  CHECK(b.row(2)[0] == 5);
}
