#include "bbeta/bivariate_beta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bbeta/errors.hpp"
#include "bbeta/kernels.hpp"
#include "bbeta/sampling.hpp"

namespace bbeta {

// ---------------------------------------------------------------------------
// Parameter types

void validate_shape(double value, const char* name) {
  if (!(value > 0) || !std::isfinite(value))
    throw DomainError(std::string(name) + " must be positive, got " + std::to_string(value));
  if (value > kMaxShape)
    throw DomainError(std::string(name) + " exceeds the supported maximum shape " +
                      std::to_string(kMaxShape) + ": " + std::to_string(value));
}

BetaMarginal::BetaMarginal(double p, double q) : p_(p), q_(q) {
  if (!(p > 0) || !std::isfinite(p) || !(q > 0) || !std::isfinite(q))
    throw DomainError("beta shapes must be positive, got (" + std::to_string(p) + ", " +
                      std::to_string(q) + ")");
}

double BetaMarginal::raw_moment(std::size_t order) const {
  long double m = 1;
  for (std::size_t i = 0; i < order; ++i)
    m *= (static_cast<long double>(p_) + i) / (static_cast<long double>(p_) + q_ + i);
  return static_cast<double>(m);
}

BivariateBetaParams::BivariateBetaParams(double alpha1, double alpha2, double beta1,
                                         double beta2, double delta1, double delta2)
    : alpha1_(alpha1),
      alpha2_(alpha2),
      beta1_(beta1),
      beta2_(beta2),
      delta1_(delta1),
      delta2_(delta2) {
  validate_shape(alpha1, "alpha1");
  validate_shape(alpha2, "alpha2");
  validate_shape(beta1, "beta1");
  validate_shape(beta2, "beta2");
  validate_shape(delta1, "delta1");
  validate_shape(delta2, "delta2");
}

BivariateBetaParams BivariateBetaParams::from_marginals(double a1, double a2, double b1,
                                                        double b2, double delta1,
                                                        double delta2) {
  if (!(delta1 < std::min(a1, b1)) || !(delta2 < std::min(a2, b2)))
    throw DomainError("shared shapes must satisfy delta1 < min(a1, b1) and delta2 < min(a2, b2)");
  return {a1 - delta1, a2 - delta2, b1 - delta1, b2 - delta2, delta1, delta2};
}

// ---------------------------------------------------------------------------
// Moments

double marginal_raw_moment(const BetaMarginal& m, std::size_t order) {
  return m.raw_moment(order);
}

namespace {

long double lgamma_ext(long double x) { return boost::math::lgamma(x); }

// (x)_n / (y)_n for small integer n.
long double pochhammer_ratio(long double x, long double y, std::size_t n) {
  long double r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= (x + i) / (y + i);
  return r;
}

long double binomial(std::size_t n, std::size_t k) {
  return boost::math::binomial_coefficient<long double>(static_cast<unsigned>(n),
                                                        static_cast<unsigned>(k));
}

}  // namespace

SeriesEval olkin_liu_product_moment(double upsilon1, double upsilon2, double upsilon3,
                                    std::size_t k, std::size_t l, double rel_tol) {
  for (double u : {upsilon1, upsilon2, upsilon3})
    if (!(u > 0) || !std::isfinite(u)) throw DomainError("upsilon parameters must be positive");

  const long double u1 = upsilon1, u2 = upsilon2, u3 = upsilon3;
  const long double big = u1 + u2 + u3;
  // h = d · (υ1)_k (υ2)_l / ((Υ)_k (Υ)_l),  d = Γ(υ1+υ3)Γ(υ2+υ3) / (Γ(υ3)Γ(Υ)).
  const long double log_d =
      lgamma_ext(u1 + u3) + lgamma_ext(u2 + u3) - lgamma_ext(u3) - lgamma_ext(big);
  const long double log_h = log_d + std::log(pochhammer_ratio(u1, big, k)) +
                            std::log(pochhammer_ratio(u2, big, l));
  const double ba = static_cast<double>(big);

  SeriesEval s;
  try {
    s = hyp3f2_unit_with_margin(upsilon1 + k, upsilon2 + l, ba, ba + k, ba + l, upsilon3,
                                rel_tol);
  } catch (const EvaluationError&) {
    // terms overflow before decaying; the transformed series below is tame
    s = SeriesEval{};
  }
  if (s.converged) {
    const long double h = std::exp(log_h);
    s.value = static_cast<double>(h * s.value);
    s.tail_estimate = static_cast<double>(h * s.tail_estimate);
    s.tail_bound = static_cast<double>(h * s.tail_bound);
    return s;
  }

  // Thomae's relation moves the margin from υ3 to Υ.
  const long double marginals =
      pochhammer_ratio(u1, u1 + u3, k) * pochhammer_ratio(u2, u2 + u3, l);
  if (k == 0 || l == 0) {
    SeriesEval exact;
    exact.value = static_cast<double>(marginals);
    exact.converged = true;
    return exact;
  }
  SeriesEval t = hyp3f2_unit_with_margin(static_cast<double>(k), static_cast<double>(l),
                                         upsilon3, upsilon1 + upsilon3 + k,
                                         upsilon2 + upsilon3 + l, ba, rel_tol);
  t.terms_used += s.terms_used;
  t.value = static_cast<double>(marginals * t.value);
  t.tail_estimate = static_cast<double>(marginals * t.tail_estimate);
  t.tail_bound = static_cast<double>(marginals * t.tail_bound);
  return t;
}

MomentEval product_moment(const BivariateBetaParams& params, std::size_t k, std::size_t l) {
  const double u1 = params.upsilon1(), u2 = params.upsilon2(), u3 = params.upsilon3();
  MomentEval out;

  // plain[s][t] = E(X'^s Y'^t).
  std::vector<long double> plain((k + 1) * (l + 1));
  auto at = [&](std::size_t s, std::size_t t) -> long double& { return plain[s * (l + 1) + t]; };
  for (std::size_t s = 0; s <= k; ++s) {
    for (std::size_t t = 0; t <= l; ++t) {
      if (s == 0 && t == 0) {
        at(s, t) = 1;
        continue;
      }
      const auto e = olkin_liu_product_moment(u1, u2, u3, s, t, kMomentSeriesRelTol);
      out.converged = out.converged && e.converged;
      at(s, t) = e.value;
    }
  }

  const auto w1 = params.latent_w1(), w2 = params.latent_w2(), w3 = params.latent_w3();
  CompensatedSum<long double> total;
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t j = 0; j <= l; ++j) {
      // E(X'^i (1−X')^(k−i) Y'^j (1−Y')^(l−j))
      CompensatedSum<long double> mixed;
      for (std::size_t r = 0; r <= k - i; ++r) {
        for (std::size_t t = 0; t <= l - j; ++t) {
          const long double sign = ((r + t) % 2 == 0) ? 1 : -1;
          mixed += sign * binomial(k - i, r) * binomial(l - j, t) * at(i + r, j + t);
        }
      }
      const long double weights = binomial(k, i) * binomial(l, j) *
                                  static_cast<long double>(w1.raw_moment(i)) *
                                  w2.raw_moment(j) * w3.raw_moment(k - i + l - j);
      total += weights * mixed.value();
    }
  }
  out.value = static_cast<double>(total.value());
  return out;
}

CovarianceEval evaluate_covariance(const BivariateBetaParams& params) {
  CovarianceEval c;
  const auto mx = params.marginal_x(), my = params.marginal_y();
  c.mean_x = mx.mean();
  c.mean_y = my.mean();
  c.var_x = mx.variance();
  c.var_y = my.variance();

  const double u1 = params.upsilon1(), u2 = params.upsilon2(), u3 = params.upsilon3();
  c.olkin_liu_xy = olkin_liu_product_moment(u1, u2, u3, 1, 1, kMomentSeriesRelTol);

  const long double exy = c.olkin_liu_xy.value;
  const long double ex = static_cast<long double>(u1) / (u1 + u3);
  const long double ey = static_cast<long double>(u2) / (u2 + u3);
  const long double e1 = params.latent_w1().mean();
  const long double e2 = params.latent_w2().mean();
  const long double e3 = params.latent_w3().mean();
  const long double e33 = params.latent_w3().raw_moment(2);

  CompensatedSum<long double> cross;
  cross += exy * e1 * e2;
  cross += (ex - exy) * e1 * e3;
  cross += (ey - exy) * e2 * e3;
  cross += ((1 - ex) - (ey - exy)) * e33;
  c.cross_moment = static_cast<double>(cross.value());

  // The same covariance regrouped so that nothing cancels:
  //   Cov = Var(W3) E[(1−X')(1−Y')] + Cov(X',Y') (E W1 − E W3)(E W2 − E W3),
  // with Cov(X',Y') = E X' E Y' (F − 1) and F the transformed series
  // 3F2(1, 1, υ3; υ1+υ3+1, υ2+υ3+1; 1), whose excess over 1 is summed directly.
  const auto f = hyp3f2_unit_with_margin(1.0, 1.0, u3, u1 + u3 + 1, u2 + u3 + 1, u1 + u2 + u3,
                                         kMomentSeriesRelTol);
  const long double cov_prime = ex * ey * static_cast<long double>(f.excess);
  const long double var3 = static_cast<long double>(params.latent_w3().variance());
  const long double omx = static_cast<long double>(u3) / (u1 + u3);
  const long double omy = static_cast<long double>(u3) / (u2 + u3);
  CompensatedSum<long double> cov;
  cov += var3 * (omx * omy + cov_prime);
  cov += cov_prime * (e1 - e3) * (e2 - e3);
  c.covariance = static_cast<double>(cov.value());
  c.olkin_liu_xy.converged = c.olkin_liu_xy.converged && f.converged;
  c.correlation = c.covariance / std::sqrt(c.var_x * c.var_y);
  return c;
}

double exact_covariance(const BivariateBetaParams& params) {
  return evaluate_covariance(params).covariance;
}

double exact_correlation(const BivariateBetaParams& params) {
  return evaluate_covariance(params).correlation;
}

double magnussen_approx_covariance(double a1, double a2, double b1, double b2, double delta1,
                                   double delta2) {
  for (double v : {a1, a2, b1, b2, delta1, delta2})
    if (!(v > 0) || !std::isfinite(v)) throw DomainError("shapes must be positive");
  if (!(delta1 < std::min(a1, b1)) || !(delta2 < std::min(a2, b2)))
    throw DomainError("approximation requires delta1 < min(a1, b1) and delta2 < min(a2, b2)");
  const double num = a1 * a2 * delta2 + (1 + b1) * (1 + b2) * delta1;
  const double den = (a1 + b1) * (a2 + b2) * (1 + a1 + b1) * (1 + a2 + b2);
  return num / den;
}

double magnussen_approx_correlation(double a1, double a2, double b1, double b2, double delta1,
                                    double delta2) {
  const double cov = magnussen_approx_covariance(a1, a2, b1, b2, delta1, delta2);
  return cov / std::sqrt(BetaMarginal(a1, a2).variance() * BetaMarginal(b1, b2).variance());
}

// ---------------------------------------------------------------------------
// Densities

namespace {

// log p'(x', y') with 1 − x' and 1 − y' supplied separately so that
// 1 − x'y' = (1 − x') + x'(1 − y') keeps full precision near (1, 1).
double olkin_liu_log_density(double u1, double u2, double u3, double xp, double omx, double yp,
                             double omy) {
  const double big = u1 + u2 + u3;
  const double log_b3 = log_gamma(u1) + log_gamma(u2) + log_gamma(u3) - log_gamma(big);
  return (u1 - 1) * std::log(xp) + (u2 + u3 - 1) * std::log(omx) + (u2 - 1) * std::log(yp) +
         (u1 + u3 - 1) * std::log(omy) - log_b3 - big * std::log(omx + xp * omy);
}

bool strictly_between(double v, double lo, double hi) {
  return v > std::min(lo, hi) && v < std::max(lo, hi);
}

}  // namespace

double olkin_liu_density(double upsilon1, double upsilon2, double upsilon3, double x_prime,
                         double y_prime) {
  if (!(x_prime > 0 && x_prime < 1 && y_prime > 0 && y_prime < 1)) return 0.0;
  return std::exp(olkin_liu_log_density(upsilon1, upsilon2, upsilon3, x_prime, 1 - x_prime,
                                        y_prime, 1 - y_prime));
}

double conditional_joint_density(const BivariateBetaParams& params, const Latents& w, double x,
                                 double y) {
  for (double v : {w.w1, w.w2, w.w3})
    if (!(v > 0 && v < 1)) throw DomainError("latent weights must lie in (0, 1)");
  if (w.w1 == w.w3 || w.w2 == w.w3)
    throw DomainError("conditional density undefined when w1 == w3 or w2 == w3");
  if (!strictly_between(x, w.w1, w.w3) || !strictly_between(y, w.w2, w.w3)) return 0.0;

  const double span_x = std::fabs(w.w1 - w.w3);
  const double span_y = std::fabs(w.w2 - w.w3);
  const double xp = std::fabs(x - w.w3) / span_x;
  const double omx = std::fabs(x - w.w1) / span_x;
  const double yp = std::fabs(y - w.w3) / span_y;
  const double omy = std::fabs(y - w.w2) / span_y;
  const double logp = olkin_liu_log_density(params.upsilon1(), params.upsilon2(),
                                            params.upsilon3(), xp, omx, yp, omy) -
                      std::log(span_x) - std::log(span_y);
  return std::exp(logp);
}

Grid2D Grid2D::uniform(std::size_t res, GridNodes nodes) {
  if (res < 2) throw DomainError("grid resolution must be at least 2");
  Grid2D g;
  g.xs.resize(res);
  for (std::size_t i = 0; i < res; ++i)
    g.xs[i] = nodes == GridNodes::Midpoints ? (i + 0.5) / static_cast<double>(res)
                                            : i / static_cast<double>(res - 1);
  g.ys = g.xs;
  return g;
}

double DensityGrid::trapezoid_mass() const {
  auto weights = [](const std::vector<double>& nodes) {
    std::vector<double> w(nodes.size(), 0.0);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const double h = 0.5 * (nodes[i + 1] - nodes[i]);
      w[i] += h;
      w[i + 1] += h;
    }
    return w;
  };
  const auto wx = weights(xs), wy = weights(ys);
  CompensatedSum<double> mass;
  for (std::size_t iy = 0; iy < ys.size(); ++iy)
    for (std::size_t ix = 0; ix < xs.size(); ++ix) mass += wx[ix] * wy[iy] * at(ix, iy);
  return mass.value();
}

std::vector<Latents> draw_latents(const BivariateBetaParams& params, std::size_t n,
                                  RngStream& rng) {
  std::vector<Latents> out;
  out.reserve(n);
  while (out.size() < n) {
    Latents w{beta_variate(rng, params.alpha1(), params.alpha2()),
              beta_variate(rng, params.beta1(), params.beta2()),
              beta_variate(rng, params.delta1(), params.delta2())};
    if (w.w1 == w.w3 || w.w2 == w.w3) continue;
    out.push_back(w);
  }
  return out;
}

DensityGrid joint_density_mc(const BivariateBetaParams& params, const Grid2D& grid,
                             std::size_t n_latent, RngStream& rng) {
  if (n_latent == 0) throw DomainError("n_latent must be at least 1");
  const auto latents = draw_latents(params, n_latent, rng);
  return kernels::density_grid<kernels::Parallel>(params, grid, latents);
}

}  // namespace bbeta
