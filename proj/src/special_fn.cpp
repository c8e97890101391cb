#include "bbeta/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bbeta/errors.hpp"

namespace bbeta {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v))
    throw DomainError(std::string(what) + " must be positive and finite, got " +
                      std::to_string(v));
}

using Real = long double;

// Orders kept in the large-j expansion of the terms.
constexpr int kTailOrder = 14;
// First tail checkpoint sits this many times beyond the largest parameter.
constexpr Real kCheckpointFactor = 8;
constexpr std::size_t kFirstCheckpoint = 16;

// B_n(x) by its binomial expansion in the Bernoulli numbers (B_1 = −1/2).
Real bernoulli_poly(int n, Real x, const std::array<Real, kTailOrder + 2>& bn) {
  Real acc = 0, binom = 1;
  for (int k = 0; k <= n; ++k) {
    acc += binom * bn[k] * std::pow(x, n - k);
    binom = binom * (n - k) / (k + 1);
  }
  return acc;
}

// Remainder Σ_{j≥J} t(j) of a ₃F₂(1) series from its J-th term.
//
// ln Γ(z+a) − ln Γ(z+b) = (a−b) ln z + Σ_k (−1)^(k+1) (B_{k+1}(a) − B_{k+1}(b)) / (k(k+1) z^k),
// so t(j) = C j^(−s) exp(D(j)). Expanding exp(D) = Σ e_n j^(−n) turns the remainder into
// t(J) J^s e^(−D(J)) Σ_n e_n ζ(s+n, J), with the Hurwitz zeta by Euler–Maclaurin.
class AsymptoticTail {
 public:
  AsymptoticTail(const std::array<Real, 3>& a, const std::array<Real, 3>& b, Real s) : s_(s) {
    std::array<Real, kTailOrder + 2> bn{};
    bn[0] = 1;
    bn[1] = -0.5L;
    for (int i = 1; 2 * i <= kTailOrder + 1; ++i)
      bn[2 * i] = boost::math::bernoulli_b2n<Real>(i);
    for (int i = 1; i <= 8; ++i) b2n_[i] = boost::math::bernoulli_b2n<Real>(i);

    for (int k = 1; k <= kTailOrder; ++k) {
      Real diff = 0;
      for (int i = 0; i < 3; ++i)
        diff += bernoulli_poly(k + 1, a[i], bn) - bernoulli_poly(k + 1, b[i], bn);
      d_[k] = ((k % 2) ? 1 : -1) * diff / (k * (k + 1));
    }
    e_[0] = 1;
    for (int n = 1; n <= kTailOrder; ++n) {
      Real acc = 0;
      for (int k = 1; k <= n; ++k) acc += k * d_[k] * e_[n - k];
      e_[n] = acc / n;
    }
  }

  Real operator()(std::size_t index, Real term) const {
    const Real J = static_cast<Real>(index);
    Real dJ = 0, inv = 1;
    for (int k = 1; k <= kTailOrder; ++k) {
      inv /= J;
      dJ += d_[k] * inv;
    }
    Real acc = 0;
    for (int n = 0; n <= kTailOrder; ++n) acc += e_[n] * scaled_zeta(n, J);
    return term * std::exp(-dJ) * acc;
  }

 private:
  // J^s ζ(s + n, J).
  Real scaled_zeta(int n, Real J) const {
    const Real sigma = s_ + n;
    const Real jn = std::pow(J, -static_cast<Real>(n));
    Real acc = J * jn / (sigma - 1) + jn / 2;
    Real rising = sigma;  // (σ)_{2i−1}
    Real fact = 2;        // (2i)!
    Real jpow = jn / J;   // J^(−n−2i+1)
    for (int i = 1; i <= 8; ++i) {
      acc += b2n_[i] / fact * rising * jpow;
      rising *= (sigma + 2 * i - 1) * (sigma + 2 * i);
      fact *= (2 * i + 1) * (2 * i + 2);
      jpow /= J * J;
    }
    return acc;
  }

  Real s_;
  std::array<Real, kTailOrder + 1> d_{};
  std::array<Real, kTailOrder + 1> e_{};
  std::array<Real, 9> b2n_{};
};

}  // namespace

double log_gamma(double x) {
  if (!(x > 0) || !std::isfinite(x))
    throw DomainError("log_gamma requires finite x > 0, got " + std::to_string(x));
  return boost::math::lgamma(x);
}

double log_pochhammer(double x, double n) {
  require_positive(x, "log_pochhammer base");
  if (n < 0 || !std::isfinite(n))
    throw DomainError("log_pochhammer count must be finite and >= 0");
  if (n == 0) return 0.0;
  if (n <= 64 && n == std::floor(n)) {
    long double prod = 1;
    for (int i = 0; i < static_cast<int>(n); ++i) prod *= static_cast<long double>(x) + i;
    return static_cast<double>(std::log(prod));
  }
  return log_gamma(x + n) - log_gamma(x);
}

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

SeriesEval hyp3f2_unit(double a1, double a2, double a3, double b1, double b2,
                       double rel_tol) {
  return hyp3f2_unit_with_margin(a1, a2, a3, b1, b2, b1 + b2 - a1 - a2 - a3, rel_tol);
}

SeriesEval hyp3f2_unit_with_margin(double a1, double a2, double a3, double b1,
                                   double b2, double margin, double rel_tol) {
  require_positive(a1, "a1");
  require_positive(a2, "a2");
  require_positive(a3, "a3");
  require_positive(b1, "b1");
  require_positive(b2, "b2");
  if (!(rel_tol > 0) || rel_tol > 1e-3)
    throw DomainError("rel_tol must lie in (0, 1e-3], got " + std::to_string(rel_tol));
  if (!(margin > 0) || !std::isfinite(margin))
    throw DivergenceError("3F2(1) diverges: convergence margin " + std::to_string(margin) +
                          " is not positive");

  const Real m = margin;
  const AsymptoticTail tail_of({a1, a2, a3}, {b1, b2, 1.0L}, 1 + m);
  const double largest = std::max({a1, a2, a3, b1, b2, 1.0});
  const Real first = std::ceil(kCheckpointFactor * largest);
  std::size_t next_check = first >= static_cast<Real>(kMaxSeriesTerms)
                               ? kMaxSeriesTerms
                               : std::max(kFirstCheckpoint, static_cast<std::size_t>(first));

  SeriesEval out;
  CompensatedSum<Real> sum, excess;  // excess: t(1) + t(2) + …
  Real term = 1;
  bool have_prev = false;
  Real prev_estimate = 0;

  for (std::size_t j = 0; j < kMaxSeriesTerms; ++j) {
    // sum holds t(0) .. t(j−1); term is t(j).
    if (term == 0) {
      out.value = static_cast<double>(sum.value());
      out.excess = static_cast<double>(excess.value());
      out.terms_used = j;
      out.converged = true;
      return out;
    }
    if (j == next_check) {
      const Real tail = tail_of(j, term);
      const Real estimate = sum.value() + tail;
      out.value = static_cast<double>(estimate);
      out.terms_used = j;
      out.tail_estimate = static_cast<double>(tail);
      out.excess = static_cast<double>(excess.value() + tail);
      if (have_prev) {
        const Real bound = std::fabs(estimate - prev_estimate);
        out.tail_bound = static_cast<double>(bound);
        if (bound <= static_cast<Real>(rel_tol) * estimate) {
          if (!std::isfinite(out.value))
            throw EvaluationError("3F2(1) value exceeds the double range");
          out.converged = true;
          return out;
        }
      }
      prev_estimate = estimate;
      have_prev = true;
      next_check *= 2;
    }

    sum += term;
    if (j > 0) excess += term;
    const Real jj = static_cast<Real>(j);
    term *= (a1 + jj) * (a2 + jj) * (a3 + jj) / ((b1 + jj) * (b2 + jj) * (jj + 1));
    if (!std::isfinite(sum.value()) || !std::isfinite(term))
      throw EvaluationError("3F2(1) term overflow at index " + std::to_string(j));
  }

  out.converged = false;
  if (!have_prev) {
    // never reached the asymptotic regime: first-order remainder only
    const Real tail = term * (static_cast<Real>(kMaxSeriesTerms) / m);
    out.value = static_cast<double>(sum.value() + tail);
    out.excess = static_cast<double>(excess.value() + tail);
    out.terms_used = kMaxSeriesTerms;
    out.tail_estimate = static_cast<double>(tail);
    out.tail_bound = static_cast<double>(tail);
  } else if (out.tail_bound == 0) {
    out.tail_bound = std::fabs(out.tail_estimate);
  }
  return out;
}

}  // namespace bbeta
