#pragma once

#include <array>
#include <cstddef>

namespace bbeta {

/// Largest shape parameter accepted anywhere in the library.
inline constexpr double kMaxShape = 1e4;

/// Throws DomainError unless 0 < value <= kMaxShape. `name` appears in the message.
void validate_shape(double value, const char* name);

/// Beta(p, q) with closed-form moments.
class BetaMarginal {
 public:
  BetaMarginal(double p, double q);

  double p() const { return p_; }
  double q() const { return q_; }
  double mean() const { return p_ / (p_ + q_); }
  double variance() const {
    const double s = p_ + q_;
    return p_ * q_ / (s * s * (s + 1));
  }
  /// E(W^order) = prod_{i<order} (p+i)/(p+q+i).
  double raw_moment(std::size_t order) const;

  friend bool operator==(const BetaMarginal&, const BetaMarginal&) = default;

 private:
  double p_;
  double q_;
};

/// Six gamma shapes of the bivariate beta construction
///   X = (A1 + D1) / (A1 + A2 + D1 + D2),  Y = (B1 + D1) / (B1 + B2 + D1 + D2)
/// with A_i ~ Gamma(alpha_i), B_i ~ Gamma(beta_i), D_i ~ Gamma(delta_i).
class BivariateBetaParams {
 public:
  BivariateBetaParams(double alpha1, double alpha2, double beta1, double beta2, double delta1,
                      double delta2);

  /// Build from the marginal shapes (a1, a2), (b1, b2) and the shared part.
  /// Requires delta1 < min(a1, b1) and delta2 < min(a2, b2).
  static BivariateBetaParams from_marginals(double a1, double a2, double b1, double b2,
                                            double delta1, double delta2);

  double alpha1() const { return alpha1_; }
  double alpha2() const { return alpha2_; }
  double beta1() const { return beta1_; }
  double beta2() const { return beta2_; }
  double delta1() const { return delta1_; }
  double delta2() const { return delta2_; }

  // Marginal shapes: X ~ Beta(a1, a2), Y ~ Beta(b1, b2).
  double a1() const { return alpha1_ + delta1_; }
  double a2() const { return alpha2_ + delta2_; }
  double b1() const { return beta1_ + delta1_; }
  double b2() const { return beta2_ + delta2_; }

  // Totals of the three latent gamma sums and their grand total.
  double upsilon1() const { return alpha1_ + alpha2_; }
  double upsilon2() const { return beta1_ + beta2_; }
  double upsilon3() const { return delta1_ + delta2_; }
  double upsilon_total() const { return upsilon1() + upsilon2() + upsilon3(); }

  BetaMarginal marginal_x() const { return {a1(), a2()}; }
  BetaMarginal marginal_y() const { return {b1(), b2()}; }
  BetaMarginal latent_w1() const { return {alpha1_, alpha2_}; }
  BetaMarginal latent_w2() const { return {beta1_, beta2_}; }
  BetaMarginal latent_w3() const { return {delta1_, delta2_}; }

  std::array<double, 6> shapes() const {
    return {alpha1_, alpha2_, beta1_, beta2_, delta1_, delta2_};
  }

  friend bool operator==(const BivariateBetaParams&, const BivariateBetaParams&) = default;

 private:
  double alpha1_, alpha2_, beta1_, beta2_, delta1_, delta2_;
};

}  // namespace bbeta
