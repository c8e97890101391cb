#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bbeta/bivariate_beta.hpp"
#include "bbeta/errors.hpp"
#include "covariance_reference.hpp"

using namespace bbeta;

namespace {

BivariateBetaParams random_params(std::mt19937_64& gen, double lo = 0.2, double hi = 20.0) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  auto s = [&] { return std::exp(u(gen)); };
  return {s(), s(), s(), s(), s(), s()};
}

BivariateBetaParams swapped(const BivariateBetaParams& p) {
  return {p.beta1(), p.beta2(), p.alpha1(), p.alpha2(), p.delta1(), p.delta2()};
}

}  // namespace

TEST_CASE("marginal_raw_moment") {
  CHECK(marginal_raw_moment({3, 3}, 2) == doctest::Approx(2.0 / 7).epsilon(1e-15));
  CHECK(marginal_raw_moment({1.7, 0.2}, 0) == 1.0);
  CHECK(marginal_raw_moment({2, 5}, 1) == doctest::Approx(2.0 / 7).epsilon(1e-15));
  const BetaMarginal m(8, 8);
  CHECK(m.variance() == doctest::Approx(1.0 / 68).epsilon(1e-15));
}

TEST_CASE("BivariateBetaParams validation and derived shapes") {
  const BivariateBetaParams p(1, 2, 3, 4, 5, 6);
  CHECK(p.a1() == 6);
  CHECK(p.a2() == 8);
  CHECK(p.b1() == 8);
  CHECK(p.b2() == 10);
  CHECK(p.upsilon1() == 3);
  CHECK(p.upsilon2() == 7);
  CHECK(p.upsilon3() == 11);
  CHECK(p.upsilon_total() == 21);
  CHECK(BivariateBetaParams::from_marginals(6, 8, 8, 10, 5, 6) == p);

  CHECK_THROWS_AS(BivariateBetaParams(0, 1, 1, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(BivariateBetaParams(1, 1, 1, 1, 1, -2), DomainError);
  CHECK_THROWS_AS(BivariateBetaParams(1, 1, 1, std::nan(""), 1, 1), DomainError);
  CHECK_THROWS_AS(BivariateBetaParams(1, 1, 1, 1, 1e4 + 1, 1), DomainError);
  CHECK_NOTHROW(BivariateBetaParams(1, 1, 1, 1, 1e4, 1));
  CHECK_THROWS_AS(BivariateBetaParams::from_marginals(4, 4, 4, 4, 4, 3), DomainError);
  try {
    BivariateBetaParams(1, 1, 1, 1, 1, 0);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("delta2") != std::string::npos);
  }
}

TEST_CASE("Olkin-Liu product moment: normalisation and marginal mean") {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 10; ++i) {
    const auto p = random_params(gen);
    const auto e = olkin_liu_product_moment(p.upsilon1(), p.upsilon2(), p.upsilon3(), 0, 0);
    CHECK(e.converged);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto m = olkin_liu_product_moment(2, 3, 4, 1, 0);
  CHECK(m.value == doctest::Approx(1.0 / 3).epsilon(1e-12));
  const auto m2 = olkin_liu_product_moment(2, 3, 4, 0, 2);
  CHECK(m2.value == doctest::Approx(3.0 / 7 * 4.0 / 8).epsilon(1e-12));
}

TEST_CASE("Olkin-Liu product moment: direct and transformed series agree") {
  std::mt19937_64 gen(9);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_params(gen, 0.3, 15);
    const double u1 = p.upsilon1(), u2 = p.upsilon2(), u3 = p.upsilon3();
    for (std::size_t k = 1; k <= 3; ++k) {
      for (std::size_t l = 1; l <= 2; ++l) {
        const auto e = olkin_liu_product_moment(u1, u2, u3, k, l, 1e-13);
        double mk = 1, ml = 1;
        for (std::size_t t = 0; t < k; ++t) mk *= (u1 + t) / (u1 + u3 + t);
        for (std::size_t t = 0; t < l; ++t) ml *= (u2 + t) / (u2 + u3 + t);
        const auto f = hyp3f2_unit_with_margin(double(k), double(l), u3, u1 + u3 + k,
                                               u2 + u3 + l, u1 + u2 + u3, 1e-13);
        CAPTURE(i);
        CHECK(e.converged);
        CHECK(e.value == doctest::Approx(mk * ml * f.value).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("product_moment reduces to beta raw moments") {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 10; ++i) {
    const auto p = random_params(gen);
    for (std::size_t k = 0; k <= 4; ++k) {
      const auto mx = product_moment(p, k, 0);
      const auto my = product_moment(p, 0, k);
      CHECK(mx.converged);
      CHECK(mx.value == doctest::Approx(p.marginal_x().raw_moment(k)).epsilon(1e-10));
      CHECK(my.value == doctest::Approx(p.marginal_y().raw_moment(k)).epsilon(1e-10));
    }
  }
  const BivariateBetaParams p(1, 2, 3, 4, 5, 6);
  CHECK(product_moment(p, 1, 0).value == doctest::Approx(6.0 / 14).epsilon(1e-13));
}

TEST_CASE("product_moment(1, 1) matches the covariance route") {
  std::mt19937_64 gen(23);
  for (int i = 0; i < 10; ++i) {
    const auto p = random_params(gen);
    const auto c = evaluate_covariance(p);
    CHECK(product_moment(p, 1, 1).value == doctest::Approx(c.cross_moment).epsilon(1e-12));
  }
}

TEST_CASE("product_moment symmetry under swapping X and Y") {
  std::mt19937_64 gen(29);
  for (int i = 0; i < 5; ++i) {
    const auto p = random_params(gen);
    for (std::size_t k = 0; k <= 3; ++k)
      for (std::size_t l = 0; k + l <= 4; ++l)
        CHECK(product_moment(p, k, l).value ==
              doctest::Approx(product_moment(swapped(p), l, k).value).epsilon(1e-11));
  }
}

TEST_CASE("exact covariance and correlation against the 50-digit reference") {
  for (const auto& ref : testing::kCovarianceReference) {
    const BivariateBetaParams p(ref.alpha1, ref.alpha2, ref.beta1, ref.beta2, ref.delta1,
                                ref.delta2);
    const auto c = evaluate_covariance(p);
    CAPTURE(ref.alpha1);
    CAPTURE(ref.delta1);
    CHECK(std::fabs(c.covariance - static_cast<double>(ref.covariance)) <=
          1e-9 * static_cast<double>(ref.covariance));
    CHECK(std::fabs(c.correlation - static_cast<double>(ref.correlation)) <=
          1e-9 * static_cast<double>(ref.correlation));
  }
}

TEST_CASE("exact correlation: the worked example and two different shared splits") {
  const BivariateBetaParams p(1, 1, 1, 1, 3, 3);
  CHECK(std::fabs(exact_correlation(p) - 0.730) <= 0.01);
  CHECK(std::fabs(exact_covariance(p) - 0.020) <= 0.001);
  const double r44 = exact_correlation(BivariateBetaParams::from_marginals(8, 8, 8, 8, 4, 4));
  const double r62 = exact_correlation(BivariateBetaParams::from_marginals(8, 8, 8, 8, 6, 2));
  CHECK(std::fabs(r44 - 0.48) <= 0.01);
  CHECK(std::fabs(r62 - 0.48) <= 0.01);
  CHECK(std::fabs(r44 - r62) < 0.01);
}

TEST_CASE("exact covariance: independence limit") {
  const BivariateBetaParams p(2, 5, 7, 3, 1e-6, 1e-6);
  CHECK(std::fabs(exact_covariance(p)) < 1e-5);
}

TEST_CASE("shared-shape sweep: covariance rises then falls, correlation keeps rising") {
  // With α = β = (1, 1) and δ = (0.8k, 0.8k) the marginals tighten as k grows,
  // so the covariance peaks (at k = 2) while the correlation increases throughout.
  std::vector<double> cov, corr;
  for (int k = 1; k <= 12; ++k) {
    const auto c = evaluate_covariance({1, 1, 1, 1, 0.8 * k, 0.8 * k});
    cov.push_back(c.covariance);
    corr.push_back(c.correlation);
  }
  CHECK(cov[1] > cov[0]);
  for (std::size_t i = 2; i < cov.size(); ++i) CHECK(cov[i] < cov[i - 1]);
  for (std::size_t i = 1; i < corr.size(); ++i) CHECK(corr[i] > corr[i - 1]);
}

TEST_CASE("cancellation-free covariance agrees with the four-term expansion") {
  std::mt19937_64 gen(37);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_params(gen);
    const auto c = evaluate_covariance(p);
    CHECK(std::fabs(c.cross_moment - c.mean_x * c.mean_y - c.covariance) <= 1e-14);
  }
  // tiny shared shapes: still strictly positive
  for (double d : {1e-3, 1e-6, 1e-9, 1e-12}) {
    CAPTURE(d);
    CHECK(exact_covariance({2, 5, 7, 3, d, d}) > 0);
  }
}

TEST_CASE("exact covariance positive and correlation in [0, 1) on a random grid") {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_params(gen, 0.05, 200);
    const auto c = evaluate_covariance(p);
    CAPTURE(i);
    CHECK(c.olkin_liu_xy.converged);
    CHECK(c.covariance > 0);
    CHECK(c.correlation >= 0);
    CHECK(c.correlation < 1);
  }
}

TEST_CASE("extreme shapes stay finite") {
  for (auto p : {BivariateBetaParams(1e4, 1e4, 1e4, 1e4, 0.01, 0.01),
                 BivariateBetaParams(0.01, 0.01, 0.01, 0.01, 1e4, 1e4),
                 BivariateBetaParams(1e-3, 5e3, 2e3, 1e-3, 0.5, 0.5)}) {
    const auto c = evaluate_covariance(p);
    CHECK(c.olkin_liu_xy.converged);
    CHECK(std::isfinite(c.correlation));
    CHECK(c.correlation >= 0);
    CHECK(c.correlation < 1);
  }
}

TEST_CASE("Magnussen approximation: both printed failure examples") {
  CHECK(std::fabs(magnussen_approx_covariance(4, 4, 4, 4, 3, 3) / (123.0 / 5184) - 1) <= 1e-12);
  CHECK(std::fabs(magnussen_approx_correlation(4, 4, 4, 4, 3, 3) / (123.0 / 144) - 1) <= 1e-12);
  CHECK(std::fabs(magnussen_approx_covariance(1, 1, 1, 1, 0.8, 0.8) / (1.0 / 9) - 1) <= 1e-12);
  CHECK(std::fabs(magnussen_approx_correlation(1, 1, 1, 1, 0.8, 0.8) / (4.0 / 3) - 1) <= 1e-12);
  // the approximation breaks the bound while the exact value does not
  const auto p = BivariateBetaParams::from_marginals(1, 1, 1, 1, 0.8, 0.8);
  CHECK(magnussen_approx_correlation(1, 1, 1, 1, 0.8, 0.8) > 1);
  CHECK(exact_correlation(p) < 1);
  CHECK(magnussen_approx_covariance(4, 4, 4, 4, 1e-12, 1e-12) < 1e-12);
  CHECK_THROWS_AS(magnussen_approx_covariance(4, 4, 4, 4, 4, 3), DomainError);
  CHECK_THROWS_AS(magnussen_approx_covariance(4, 4, 4, 4, 3, 5), DomainError);
}
