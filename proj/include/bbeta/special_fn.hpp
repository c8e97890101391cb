#pragma once

#include <cstddef>

namespace bbeta {

/// Result of summing a hypergeometric series at unit argument.
///
/// `value` already includes the estimated remainder `tail_estimate` of the
/// truncated series. `tail_bound` is an upper estimate of the error left in
/// `value` after that correction; it is what the tolerance is checked
/// against.
struct SeriesEval {
  double value = 0.0;
  std::size_t terms_used = 0;
  double tail_estimate = 0.0;
  double tail_bound = 0.0;
  bool converged = false;
  /// value − 1, summed from the j ≥ 1 terms so that it keeps full relative
  /// precision when the series is close to 1.
  double excess = 0.0;
};

inline constexpr double kDefaultSeriesRelTol = 1e-10;
inline constexpr std::size_t kMaxSeriesTerms = 2'000'000;

/// ln Γ(x) for finite x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// ln[(x)_n] = ln Γ(x + n) − ln Γ(x) for x > 0, n ≥ 0.
double log_pochhammer(double x, double n);

/// ln B(a, b).
double log_beta(double a, double b);

/// ₃F₂(a1, a2, a3; b1, b2; 1) by direct term recurrence with an
/// asymptotic tail correction.
///
/// Requires positive parameters, rel_tol in (0, 1e-3] and a positive
/// convergence margin b1 + b2 − a1 − a2 − a3. Terms decay like
/// j^-(1 + margin), so the raw partial sum is useless for small margins.
/// Past eight times the largest parameter the remainder is taken from a
/// large-j expansion of the terms (Bernoulli polynomials, Hurwitz zeta), and
/// its error is measured by comparing estimates at doubling truncation
/// points. Stops at kMaxSeriesTerms with converged = false.
SeriesEval hyp3f2_unit(double a1, double a2, double a3, double b1, double b2,
                       double rel_tol = kDefaultSeriesRelTol);

/// Same as hyp3f2_unit, with the convergence margin supplied by the caller.
///
/// Use this when the margin is known in closed form (for instance a single
/// shape parameter) and forming b1 + b2 − a1 − a2 − a3 in floating point
/// would cancel badly.
SeriesEval hyp3f2_unit_with_margin(double a1, double a2, double a3, double b1,
                                   double b2, double margin,
                                   double rel_tol = kDefaultSeriesRelTol);

/// Neumaier-compensated running sum.
template <class Real>
class CompensatedSum {
 public:
  void add(Real x) {
    Real t = sum_ + x;
    if ((sum_ < 0 ? -sum_ : sum_) >= (x < 0 ? -x : x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(Real x) {
    add(x);
    return *this;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

}  // namespace bbeta
