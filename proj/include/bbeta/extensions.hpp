#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "bbeta/params.hpp"
#include "bbeta/rng.hpp"
#include "bbeta/sampling.hpp"

namespace bbeta {

using ShapePair = std::array<double, 2>;

/// k-dimensional multivariate beta. Coordinate i is
///   (O_i1 + Σ_{m≠i} S_{im,1}) / (O_i1 + O_i2 + Σ_{m≠i} (S_{im,1} + S_{im,2}))
/// with own gammas O_i and one shared gamma pair S per unordered pair {i, m}.
///
/// Shared pairs are stored upper-triangular: (0,1), (0,2), …, (0,k−1), (1,2), ….
/// Indices are 0-based.
class MultivariateBetaParams {
 public:
  MultivariateBetaParams(std::vector<ShapePair> own, std::vector<ShapePair> shared);

  /// The three-dimensional layout with own pairs alpha, beta, gamma and
  /// shared pairs delta = {X,Y}, epsilon = {Y,Z}, phi = {X,Z}.
  static MultivariateBetaParams trivariate(ShapePair alpha, ShapePair beta, ShapePair gamma,
                                           ShapePair delta, ShapePair epsilon, ShapePair phi);
  /// Own pairs followed by shared pairs, flattened; size must be parameter_count(k).
  static MultivariateBetaParams from_flat(std::size_t k, std::span<const double> shapes);

  /// 2 (k + k(k−1)/2).
  static std::size_t parameter_count(std::size_t k);
  /// Position of {i, j} in the shared list. Throws std::out_of_range.
  static std::size_t pair_index(std::size_t k, std::size_t i, std::size_t j);

  std::size_t k() const { return own_.size(); }
  const ShapePair& own(std::size_t i) const { return own_.at(i); }
  const ShapePair& shared(std::size_t i, std::size_t j) const {
    return shared_[pair_index(k(), i, j)];
  }
  const std::vector<ShapePair>& own_pairs() const { return own_; }
  const std::vector<ShapePair>& shared_pairs() const { return shared_; }
  std::vector<double> flat() const;

  /// Beta law of coordinate i.
  BetaMarginal marginal(std::size_t i) const;

  friend bool operator==(const MultivariateBetaParams&, const MultivariateBetaParams&) = default;

 private:
  std::vector<ShapePair> own_;
  std::vector<ShapePair> shared_;
};

/// Two correlated Dirichlet vectors
///   X_i = (A_i + D_i) / (ΣA + ΣD),  Y_i = (B_i + D_i) / (ΣB + ΣD).
class CorrelatedDirichletParams {
 public:
  CorrelatedDirichletParams(std::vector<double> alpha, std::vector<double> beta,
                            std::vector<double> delta);

  std::size_t k() const { return alpha_.size(); }
  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& beta() const { return beta_; }
  const std::vector<double>& delta() const { return delta_; }

  /// Dirichlet shapes of X (alpha + delta) and Y (beta + delta).
  std::vector<double> marginal_x() const;
  std::vector<double> marginal_y() const;

  friend bool operator==(const CorrelatedDirichletParams&,
                         const CorrelatedDirichletParams&) = default;

 private:
  std::vector<double> alpha_, beta_, delta_;
};

/// Per-row sampler; draws own pairs in coordinate order, then shared pairs.
class MultivariateBetaSampler {
 public:
  explicit MultivariateBetaSampler(const MultivariateBetaParams& params);
  /// Writes k coordinates strictly inside (0, 1).
  void operator()(RngStream& rng, std::span<double> row, std::uint64_t& redraws) const;

 private:
  MultivariateBetaParams params_;
  std::vector<GammaSampler> own1_, own2_, shared1_, shared2_;
  mutable std::vector<double> num_, den_;
};

/// Per-row sampler; draws A_1..A_k, B_1..B_k, D_1..D_k.
class CorrelatedDirichletSampler {
 public:
  explicit CorrelatedDirichletSampler(const CorrelatedDirichletParams& params);
  void operator()(RngStream& rng, std::span<double> x, std::span<double> y,
                  std::uint64_t& redraws) const;

 private:
  std::vector<GammaSampler> a_, b_, d_;
  mutable std::vector<double> ga_, gb_, gd_;
};

RowBatch sample_multivariate_beta(RngStream& rng, const MultivariateBetaParams& params,
                                  std::size_t n);

/// Joint law of coordinates (i, j) as a six-parameter bivariate beta.
BivariateBetaParams pairwise_bivariate_reduction(const MultivariateBetaParams& params,
                                                 std::size_t i, std::size_t j);

/// Rows of (x, y) simplex pairs; every row sums to 1.
SampleBatch sample_correlated_dirichlet(RngStream& rng, const CorrelatedDirichletParams& params,
                                        std::size_t n);

/// Joint law of (X_i, Y_i) as a six-parameter bivariate beta.
BivariateBetaParams dirichlet_component_reduction(const CorrelatedDirichletParams& params,
                                                  std::size_t i);

double dirichlet_component_correlation(const CorrelatedDirichletParams& params, std::size_t i);

}  // namespace bbeta
