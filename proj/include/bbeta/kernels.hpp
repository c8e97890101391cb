#pragma once

// Monte-Carlo kernels with a serial reference and an OpenMP variant.
//
// Work is split into fixed-size chunks; chunk c always draws from
// RngStream(seed, c) and per-chunk partial results are merged in chunk
// order. Serial and Parallel therefore return bit-identical results for
// any thread count.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bbeta/bivariate_beta.hpp"
#include "bbeta/extensions.hpp"
#include "bbeta/sampling.hpp"

namespace bbeta::kernels {

struct Serial {};
struct Parallel {};

inline constexpr std::size_t kChunkSize = std::size_t{1} << 14;

/// Threads used by Parallel kernels (1 without OpenMP).
int max_threads();
/// Sets the OpenMP thread count; values < 1 are ignored.
void set_num_threads(int n);
/// Applies BBETA_NUM_THREADS from the environment if set; values that are not
/// positive integers are ignored. Returns the count in effect.
int configure_threads_from_env();

/// Sample estimate of the first two moments of a pair with standard errors.
struct MomentEstimate {
  std::uint64_t n = 0;
  double mean_x = 0, mean_y = 0;
  double var_x = 0, var_y = 0;
  double covariance = 0;  // n − 1 denominator
  double correlation = 0;
  double se_covariance = 0;
  double se_correlation = 0;  // delta method
};

/// Shifted power sums Σ (x−cx)^p (y−cy)^q for p + q ≤ 4. Shifting by a
/// value close to the mean keeps the sums well conditioned.
class PairMoments {
 public:
  PairMoments() = default;
  PairMoments(double cx, double cy) : cx_(cx), cy_(cy) {}

  void add(double x, double y);
  /// Throws std::invalid_argument unless the centres are equal.
  void merge(const PairMoments& other);
  std::uint64_t count() const { return n_; }
  MomentEstimate estimate() const;

 private:
  double cx_ = 0, cy_ = 0;
  std::uint64_t n_ = 0;
  std::array<std::array<long double, 5>, 5> s_{};
};

// Batch samplers. Deterministic in (params, n, seed).
template <class Policy>
SampleBatch sample_bivariate(const BivariateBetaParams& params, std::size_t n,
                             std::uint64_t seed);
template <class Policy>
RowBatch sample_multivariate(const MultivariateBetaParams& params, std::size_t n,
                             std::uint64_t seed);
template <class Policy>
SampleBatch sample_dirichlet(const CorrelatedDirichletParams& params, std::size_t n,
                             std::uint64_t seed);

// Streaming moment estimators (no sample storage).
template <class Policy>
MomentEstimate bivariate_moments(const BivariateBetaParams& params, std::size_t n,
                                 std::uint64_t seed);
/// One estimate per coordinate pair in upper-triangular order.
template <class Policy>
std::vector<MomentEstimate> multivariate_moments(const MultivariateBetaParams& params,
                                                 std::size_t n, std::uint64_t seed);
/// One estimate per component i of (X_i, Y_i).
template <class Policy>
std::vector<MomentEstimate> dirichlet_moments(const CorrelatedDirichletParams& params,
                                              std::size_t n, std::uint64_t seed);

/// Average of the conditional density over the given latents at every grid node.
template <class Policy>
DensityGrid density_grid(const BivariateBetaParams& params, const Grid2D& grid,
                         std::span<const Latents> latents);

}  // namespace bbeta::kernels
