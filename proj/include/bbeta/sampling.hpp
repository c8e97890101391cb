#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bbeta/params.hpp"
#include "bbeta/rng.hpp"

namespace bbeta {

/// Gamma(shape, 1) by Marsaglia-Tsang squeeze/rejection. Shapes below one
/// are drawn at shape + 1 and multiplied by U^(1/shape).
class GammaSampler {
 public:
  explicit GammaSampler(double shape);

  double operator()(RngStream& rng) const;
  double shape() const { return shape_; }

 private:
  double shape_;
  double d_;
  double c_;
  bool boosted_;
};

/// One Gamma(shape, 1) draw. Throws DomainError for non-positive shape.
double gamma_variate(RngStream& rng, double shape);

/// One Beta(p, q) draw strictly inside (0, 1); ratios that round to 0 or 1
/// are redrawn.
double beta_variate(RngStream& rng, double p, double q);

/// Column-oriented draws from a bivariate or correlated-Dirichlet sampler.
///
/// Rows are stored row-major with `dim` entries per side: dim = 1 for the
/// bivariate beta (xs[i], ys[i] is one pair), dim = k for k-dimensional
/// simplex pairs.
struct SampleBatch {
  std::size_t dim = 1;
  std::vector<double> xs;
  std::vector<double> ys;
  std::uint64_t seed = 0;
  std::string params_digest;
  /// Tuples rejected because a ratio underflowed or rounded onto 0 or 1.
  std::uint64_t redraws = 0;

  std::size_t size() const { return dim == 0 ? 0 : xs.size() / dim; }
  std::span<const double> x_row(std::size_t i) const { return {xs.data() + i * dim, dim}; }
  std::span<const double> y_row(std::size_t i) const { return {ys.data() + i * dim, dim}; }
};

/// Rows of k coordinates from the multivariate beta sampler.
struct RowBatch {
  std::size_t k = 0;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string params_digest;
  std::uint64_t redraws = 0;

  std::size_t size() const { return k == 0 ? 0 : values.size() / k; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * k, k}; }
  std::vector<double> column(std::size_t j) const;
};

/// Stable hex identifier (FNV-1a over the IEEE bit patterns) of a parameter list.
std::string params_digest(std::string_view kind, std::span<const double> shapes);

/// Latent decomposition of one six-gamma draw.
///
/// w1 = A1/(A1+A2), w2 = B1/(B1+B2), w3 = D1/(D1+D2); x' = U1/(U1+U3),
/// y' = U2/(U2+U3) with U1 = A1+A2, U2 = B1+B2, U3 = D1+D2. x and y are
/// the ratios of the same gammas, so x = x'w1 + (1−x')w3 up to rounding.
struct LatentDraw {
  double w1, w2, w3;
  double x_prime, y_prime;
  double x, y;
};

/// Per-row sampler for the six-gamma construction.
class BivariateBetaSampler {
 public:
  explicit BivariateBetaSampler(const BivariateBetaParams& params);

  /// One (x, y) pair strictly inside the unit square.
  std::pair<double, double> operator()(RngStream& rng, std::uint64_t& redraws) const;
  LatentDraw latent(RngStream& rng, std::uint64_t& redraws) const;

  const BivariateBetaParams& params() const { return params_; }

 private:
  BivariateBetaParams params_;
  GammaSampler a1_, a2_, b1_, b2_, d1_, d2_;
};

/// n independent pairs drawn sequentially from one stream.
SampleBatch sample_bivariate_beta(RngStream& rng, const BivariateBetaParams& params,
                                  std::size_t n);

/// One latent draw (w1, w2, w3, x', y') with the x, y it produces.
LatentDraw sample_latents(RngStream& rng, const BivariateBetaParams& params);

}  // namespace bbeta
