#include "bbeta/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bbeta/errors.hpp"

namespace bbeta {

std::string_view to_string(FitWarning w) {
  switch (w) {
    case FitWarning::NegativeEmpiricalCorrelation: return "NEGATIVE_EMPIRICAL_CORRELATION";
    case FitWarning::CorrelationClippedToAttainable: return "CORRELATION_CLIPPED_TO_ATTAINABLE";
    case FitWarning::SeriesNotConverged: return "SERIES_NOT_CONVERGED";
    case FitWarning::MultimodalObjective: return "MULTIMODAL_OBJECTIVE";
    case FitWarning::BoundaryValuesNudged: return "BOUNDARY_VALUES_NUDGED";
  }
  return "UNKNOWN";
}

bool FitResult::has_warning(FitWarning w) const {
  return std::find(warnings.begin(), warnings.end(), w) != warnings.end();
}

EmpiricalMoments empirical_moments(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("x and y columns differ in length");
  if (xs.size() < 2) throw DomainError("at least two observations are required");
  const std::size_t n = xs.size();
  CompensatedSum<long double> sx, sy;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const long double mx = sx.value() / n, my = sy.value() / n;
  CompensatedSum<long double> sxx, syy, sxy;
  for (std::size_t i = 0; i < n; ++i) {
    const long double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  EmpiricalMoments m;
  m.n = n;
  m.mean_x = static_cast<double>(mx);
  m.mean_y = static_cast<double>(my);
  m.var_x = static_cast<double>(sxx.value() / (n - 1));
  m.var_y = static_cast<double>(syy.value() / (n - 1));
  const long double den = std::sqrt(sxx.value() * syy.value());
  m.corr = den > 0 ? static_cast<double>(sxy.value() / den) : 0.0;
  return m;
}

BetaMarginal fit_beta_marginal(double mean, double var) {
  if (!(mean > 0 && mean < 1))
    throw InfeasibleMomentsError("mean must lie in (0, 1), got " + std::to_string(mean));
  const double bound = mean * (1 - mean);
  if (!(var > 0)) throw InfeasibleMomentsError("variance must be positive (degenerate data)");
  if (!(var < bound))
    throw InfeasibleMomentsError("variance " + std::to_string(var) +
                                 " is not below mean(1 - mean) = " + std::to_string(bound));
  const double nu = bound / var - 1;
  return {mean * nu, (1 - mean) * nu};
}

BivariateBetaParams constrained_params(const BetaMarginal& x, const BetaMarginal& y,
                                       double delta1) {
  const double d1max = std::min(x.p(), y.p());
  const double d2max = std::min(x.q(), y.q());
  const double delta2 = d2max / d1max * delta1;
  return {x.p() - delta1, x.q() - delta2, y.p() - delta1, y.q() - delta2, delta1, delta2};
}

namespace {

struct Objective {
  const BetaMarginal& mx;
  const BetaMarginal& my;
  double target;
  std::size_t evaluations = 0;
  bool all_converged = true;

  double corr(double delta1) {
    ++evaluations;
    const auto c = evaluate_covariance(constrained_params(mx, my, delta1));
    all_converged = all_converged && c.olkin_liu_xy.converged;
    return c.correlation;
  }
  double operator()(double delta1) {
    const double d = corr(delta1) - target;
    return d * d;
  }
};

// Index of the smallest value and the number of local minima in a scan.
std::pair<std::size_t, std::size_t> scan_minima(const std::vector<double>& f) {
  std::size_t best = 0, minima = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < f[best]) best = i;
    const bool left = i == 0 || f[i] < f[i - 1];
    const bool right = i + 1 == f.size() || f[i] < f[i + 1];
    if (left && right) ++minima;
  }
  return {best, minima};
}

double golden_section(Objective& f, double lo, double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1) / 2;
  double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return out;
}

}  // namespace

FitResult fit(std::span<const double> xs, std::span<const double> ys,
              const FitOptions& options) {
  if (xs.size() != ys.size()) throw DomainError("x and y columns differ in length");
  if (xs.size() < 10)
    throw DomainError("fit needs at least 10 observations, got " + std::to_string(xs.size()));
  if (options.scan_points < 3 || options.fallback_points < 3)
    throw DomainError("scan grids need at least 3 points");
  if (!(options.epsilon > 0 && options.epsilon < 0.5))
    throw DomainError("epsilon must lie in (0, 0.5)");

  std::vector<FitWarning> warnings;
  std::vector<double> x(xs.begin(), xs.end()), y(ys.begin(), ys.end());
  bool nudged = false;
  for (auto* col : {&x, &y}) {
    for (double& v : *col) {
      if (!std::isfinite(v) || v < 0 || v > 1)
        throw DomainError("observations must lie in [0, 1], got " + std::to_string(v));
      if (v == 0) v = 1e-12, nudged = true;
      if (v == 1) v = 1 - 1e-12, nudged = true;
    }
  }
  if (nudged) warnings.push_back(FitWarning::BoundaryValuesNudged);

  const EmpiricalMoments emp = empirical_moments(x, y);
  const BetaMarginal mx = fit_beta_marginal(emp.mean_x, emp.var_x);
  const BetaMarginal my = fit_beta_marginal(emp.mean_y, emp.var_y);
  const double d1max = std::min(mx.p(), my.p());
  const double d2max = std::min(mx.q(), my.q());
  const double lo = options.epsilon * d1max, hi = (1 - options.epsilon) * d1max;

  Objective f{mx, my, emp.corr};
  double delta1 = lo;
  if (emp.corr <= 0) {
    warnings.push_back(FitWarning::NegativeEmpiricalCorrelation);
  } else {
    auto nodes = linspace(lo, hi, options.scan_points);
    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = f(nodes[i]);
    auto [best, minima] = scan_minima(values);
    if (minima > 1) {
      warnings.push_back(FitWarning::MultimodalObjective);
      nodes = linspace(lo, hi, options.fallback_points);
      values.resize(nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = f(nodes[i]);
      best = scan_minima(values).first;
    }
    const double a = nodes[best == 0 ? 0 : best - 1];
    const double b = nodes[std::min(best + 1, nodes.size() - 1)];
    const double refined = golden_section(f, a, b, options.tolerance);
    delta1 = f(refined) <= values[best] ? refined : nodes[best];
    if (f.corr(hi) < emp.corr) {
      warnings.push_back(FitWarning::CorrelationClippedToAttainable);
      delta1 = hi;
    }
  }

  const auto params = constrained_params(mx, my, delta1);
  const auto cov = evaluate_covariance(params);
  f.all_converged = f.all_converged && cov.olkin_liu_xy.converged;
  if (!f.all_converged) warnings.push_back(FitWarning::SeriesNotConverged);

  FitResult r{params, emp, 0, 0, 0, 0, 0, {}};
  r.achieved_corr = cov.correlation;
  r.delta1_max = d1max;
  r.delta2_max = d2max;
  r.objective_value = (cov.correlation - emp.corr) * (cov.correlation - emp.corr);
  r.iterations = f.evaluations;
  r.warnings = std::move(warnings);
  return r;
}

FitResult fit(const SampleBatch& data, const FitOptions& options) {
  if (data.dim != 1) throw DomainError("fit expects a bivariate batch");
  return fit(data.xs, data.ys, options);
}

CorrelationRange attainable_correlation_range(double a1, double a2, double b1, double b2,
                                              double epsilon) {
  const BetaMarginal mx(a1, a2), my(b1, b2);
  const double d1max = std::min(a1, b1);
  return {0.0, exact_correlation(constrained_params(mx, my, (1 - epsilon) * d1max))};
}

}  // namespace bbeta
