#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bbeta/params.hpp"
#include "bbeta/rng.hpp"
#include "bbeta/special_fn.hpp"

namespace bbeta {

/// Series tolerance used inside product moments and the covariance.
inline constexpr double kMomentSeriesRelTol = 1e-13;

/// E(W^order) for W ~ m.
double marginal_raw_moment(const BetaMarginal& m, std::size_t order);

/// E((X')^k (Y')^l) for the three-gamma pair X' = U1/(U1+U3), Y' = U2/(U2+U3)
/// with U_i ~ Gamma(upsilon_i):
///
///   h · 3F2(υ1+k, υ2+l, Υ; Υ+k, Υ+l; 1),  Υ = υ1+υ2+υ3,
///   h = Γ(υ1+υ3)Γ(υ2+υ3)Γ(υ1+k)Γ(υ2+l)Γ(Υ) / (Γ(υ1)Γ(υ2)Γ(υ3)Γ(Υ+k)Γ(Υ+l)).
///
/// The series margin is υ3. If it does not converge within the term cap the
/// moment is recomputed from the Thomae-transformed series
///   E(X'^k) E(Y'^l) · 3F2(k, l, υ3; υ1+υ3+k, υ2+υ3+l; 1)
/// whose margin is Υ. The returned SeriesEval carries the moment in `value`
/// with tail quantities scaled by the prefactor.
SeriesEval olkin_liu_product_moment(double upsilon1, double upsilon2, double upsilon3,
                                    std::size_t k, std::size_t l,
                                    double rel_tol = kDefaultSeriesRelTol);

struct MomentEval {
  double value = 0.0;
  bool converged = true;
};

/// E(X^k Y^l) by binomial expansion of (X'W1 + (1−X')W3)^k (Y'W2 + (1−Y')W3)^l
/// over the independent latents; every mixed (X', Y') expectation is reduced
/// to plain Olkin-Liu product moments, each evaluated once.
MomentEval product_moment(const BivariateBetaParams& params, std::size_t k, std::size_t l);

struct CovarianceEval {
  double mean_x = 0, mean_y = 0;
  double var_x = 0, var_y = 0;
  double cross_moment = 0;  // E(XY), four-term expansion over the latents
  double covariance = 0;    // cancellation-free regrouping of E(XY) − E(X)E(Y)
  double correlation = 0;
  SeriesEval olkin_liu_xy;  // E(X'Y') and its series diagnostics (converged covers both series)
};

/// Exact Cov(X, Y) and correlation through E(X'Y').
CovarianceEval evaluate_covariance(const BivariateBetaParams& params);
double exact_covariance(const BivariateBetaParams& params);
double exact_correlation(const BivariateBetaParams& params);

/// Closed-form covariance approximation
///   (a1 a2 δ2 + (1+b1)(1+b2) δ1) / ((a1+b1)(a2+b2)(1+a1+b1)(1+a2+b2)).
/// Kept for comparison; it overestimates and can imply |r| > 1.
/// Requires δ1 < min(a1, b1) and δ2 < min(a2, b2).
double magnussen_approx_covariance(double a1, double a2, double b1, double b2, double delta1,
                                   double delta2);
/// The approximate covariance divided by the exact marginal standard deviations.
double magnussen_approx_correlation(double a1, double a2, double b1, double b2, double delta1,
                                    double delta2);

/// Joint density of (X', Y'):
///   x^(υ1−1) (1−x)^(υ2+υ3−1) y^(υ2−1) (1−y)^(υ1+υ3−1) / (B(υ1,υ2,υ3) (1−xy)^Υ)
/// with B(υ1,υ2,υ3) = Γ(υ1)Γ(υ2)Γ(υ3)/Γ(Υ). Zero outside the open unit square.
double olkin_liu_density(double upsilon1, double upsilon2, double upsilon3, double x_prime,
                         double y_prime);

struct Latents {
  double w1, w2, w3;
};

/// p(x, y | w1, w2, w3): the Olkin-Liu density pushed through
/// x = x'w1 + (1−x')w3, y = y'w2 + (1−y')w3. Zero unless x lies strictly
/// between w1 and w3 and y strictly between w2 and w3. Throws DomainError if
/// w1 == w3 or w2 == w3 or any latent is outside (0, 1).
double conditional_joint_density(const BivariateBetaParams& params, const Latents& w, double x,
                                 double y);

enum class GridNodes { Midpoints, Endpoints };

/// Tensor grid over the unit square.
struct Grid2D {
  std::vector<double> xs;
  std::vector<double> ys;

  /// res nodes per axis: cell midpoints (i + 1/2)/res, or i/(res − 1) including 0 and 1.
  static Grid2D uniform(std::size_t res, GridNodes nodes = GridNodes::Midpoints);
};

/// Density values on a Grid2D, row-major with x fastest: index iy * nx + ix.
struct DensityGrid {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> density;
  std::vector<double> std_error;  // Monte-Carlo standard error per node

  double at(std::size_t ix, std::size_t iy) const { return density[iy * xs.size() + ix]; }
  double error_at(std::size_t ix, std::size_t iy) const {
    return std_error[iy * xs.size() + ix];
  }
  /// Tensor trapezoid rule over the grid nodes.
  double trapezoid_mass() const;
};

/// Draw n latent triples (w1, w2, w3) from Beta(α1,α2), Beta(β1,β2), Beta(δ1,δ2).
std::vector<Latents> draw_latents(const BivariateBetaParams& params, std::size_t n,
                                  RngStream& rng);

/// Monte-Carlo estimate of the unconditional joint density: the average of
/// conditional_joint_density over n_latent latent triples shared by all
/// nodes. The estimator has finite variance only when υ3 > 1 and υ1, υ2 > 1/2.
DensityGrid joint_density_mc(const BivariateBetaParams& params, const Grid2D& grid,
                             std::size_t n_latent, RngStream& rng);

}  // namespace bbeta
