#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "bbeta/bivariate_beta.hpp"
#include "bbeta/params.hpp"
#include "bbeta/sampling.hpp"

namespace bbeta {

enum class FitWarning {
  NegativeEmpiricalCorrelation,
  CorrelationClippedToAttainable,
  SeriesNotConverged,
  MultimodalObjective,
  BoundaryValuesNudged,
};

/// Upper-case tag, e.g. "NEGATIVE_EMPIRICAL_CORRELATION".
std::string_view to_string(FitWarning w);

/// Sample moments with n − 1 denominators.
struct EmpiricalMoments {
  std::size_t n = 0;
  double mean_x = 0, var_x = 0;
  double mean_y = 0, var_y = 0;
  double corr = 0;
};

EmpiricalMoments empirical_moments(std::span<const double> xs, std::span<const double> ys);

struct FitOptions {
  double epsilon = 1e-3;             // δ1 ∈ [ε δ1max, (1 − ε) δ1max]
  std::size_t scan_points = 32;      // bracketing scan
  double tolerance = 1e-4;           // absolute, on δ1
  std::size_t fallback_points = 1024;  // grid used when the scan is not unimodal
};

struct FitResult {
  BivariateBetaParams params;
  EmpiricalMoments empirical;
  double achieved_corr = 0;
  double delta1_max = 0, delta2_max = 0;
  double objective_value = 0;  // (achieved_corr − empirical.corr)²
  std::size_t iterations = 0;  // objective evaluations
  std::vector<FitWarning> warnings;

  bool has_warning(FitWarning w) const;
};

/// Beta shapes with the given mean and variance. Throws InfeasibleMomentsError
/// unless 0 < mean < 1 and 0 < var < mean (1 − mean).
BetaMarginal fit_beta_marginal(double mean, double var);

/// Params with the given marginals and δ2 = (δ2max / δ1max) δ1.
BivariateBetaParams constrained_params(const BetaMarginal& x, const BetaMarginal& y,
                                       double delta1);

/// Moment-matching fit: beta marginals first, then δ1 chosen so that the exact
/// correlation matches the empirical one.
FitResult fit(std::span<const double> xs, std::span<const double> ys,
              const FitOptions& options = {});
/// Requires a bivariate batch (dim = 1).
FitResult fit(const SampleBatch& data, const FitOptions& options = {});

struct CorrelationRange {
  double r_min = 0;
  double r_max = 0;
};

/// [0, r_max] with r_max the exact correlation at δ1 = (1 − ε) δ1max.
CorrelationRange attainable_correlation_range(double a1, double a2, double b1, double b2,
                                              double epsilon = 1e-3);

}  // namespace bbeta
