#include "bbeta/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <type_traits>

#include <boost/math/special_functions/binomial.hpp>

#include "bbeta/errors.hpp"

#ifdef BBETA_HAVE_OPENMP
#include <omp.h>
#endif

namespace bbeta::kernels {

int max_threads() {
#ifdef BBETA_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_num_threads(int n) {
#ifdef BBETA_HAVE_OPENMP
  if (n >= 1) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int configure_threads_from_env() {
  if (const char* env = std::getenv("BBETA_NUM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) set_num_threads(static_cast<int>(v));
  }
  return max_threads();
}

// ---------------------------------------------------------------------------
// PairMoments

void PairMoments::add(double x, double y) {
  const long double dx = static_cast<long double>(x) - cx_;
  const long double dy = static_cast<long double>(y) - cy_;
  long double px = 1;
  for (int p = 0; p <= 4; ++p) {
    long double t = px;
    for (int q = 0; p + q <= 4; ++q) {
      s_[p][q] += t;
      t *= dy;
    }
    px *= dx;
  }
  ++n_;
}

void PairMoments::merge(const PairMoments& other) {
  if (other.cx_ != cx_ || other.cy_ != cy_)
    throw std::invalid_argument("PairMoments::merge needs equal centres");
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q) s_[p][q] += other.s_[p][q];
  n_ += other.n_;
}

MomentEstimate PairMoments::estimate() const {
  MomentEstimate e;
  e.n = n_;
  if (n_ < 2) return e;
  const long double n = static_cast<long double>(n_);
  const long double mx = s_[1][0] / n, my = s_[0][1] / n;

  // central moment μ_pq about the sample mean, from the shifted sums
  auto central = [&](int p, int q) {
    long double acc = 0;
    for (int i = 0; i <= p; ++i) {
      for (int j = 0; j <= q; ++j) {
        const long double c = boost::math::binomial_coefficient<long double>(p, i) *
                              boost::math::binomial_coefficient<long double>(q, j);
        acc += c * std::pow(-mx, p - i) * std::pow(-my, q - j) * (s_[i][j] / n);
      }
    }
    return acc;
  };
  const long double m20 = central(2, 0), m02 = central(0, 2), m11 = central(1, 1);
  const long double m22 = central(2, 2), m40 = central(4, 0), m04 = central(0, 4);
  const long double m31 = central(3, 1), m13 = central(1, 3);

  const long double bessel = n / (n - 1);
  e.mean_x = static_cast<double>(cx_ + mx);
  e.mean_y = static_cast<double>(cy_ + my);
  e.var_x = static_cast<double>(m20 * bessel);
  e.var_y = static_cast<double>(m02 * bessel);
  e.covariance = static_cast<double>(m11 * bessel);
  e.se_covariance = static_cast<double>(std::sqrt(std::max(0.0L, m22 - m11 * m11) / n));

  const long double r = m11 / std::sqrt(m20 * m02);
  e.correlation = static_cast<double>(r);
  const long double var_r =
      (m22 / (m20 * m02) +
       r * r / 4 * (m40 / (m20 * m20) + m04 / (m02 * m02) + 2 * m22 / (m20 * m02)) -
       r * (m31 / (std::pow(m20, 1.5L) * std::sqrt(m02)) +
            m13 / (std::pow(m02, 1.5L) * std::sqrt(m20)))) /
      n;
  e.se_correlation = static_cast<double>(std::sqrt(std::max(0.0L, var_r)));
  return e;
}

// ---------------------------------------------------------------------------
// Chunk driver

namespace {

template <class Policy, class F>
void for_each_index(std::size_t count, F&& f) {
  if constexpr (std::is_same_v<Policy, Parallel>) {
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < n; ++c) f(static_cast<std::size_t>(c));
  } else {
    for (std::size_t c = 0; c < count; ++c) f(c);
  }
}

std::size_t chunk_count(std::size_t n) { return (n + kChunkSize - 1) / kChunkSize; }

struct ChunkRange {
  std::size_t begin, end;
};

ChunkRange chunk_range(std::size_t c, std::size_t n) {
  return {c * kChunkSize, std::min(n, (c + 1) * kChunkSize)};
}

void require_n(std::size_t n) {
  if (n == 0) throw DomainError("sample size must be at least 1");
}

}  // namespace

// ---------------------------------------------------------------------------
// Batch samplers

template <class Policy>
SampleBatch sample_bivariate(const BivariateBetaParams& params, std::size_t n,
                             std::uint64_t seed) {
  require_n(n);
  const BivariateBetaSampler draw(params);
  SampleBatch batch;
  batch.dim = 1;
  batch.seed = seed;
  batch.params_digest = params_digest("bivariate", params.shapes());
  batch.xs.resize(n);
  batch.ys.resize(n);
  const std::size_t chunks = chunk_count(n);
  std::vector<std::uint64_t> redraws(chunks, 0);
  for_each_index<Policy>(chunks, [&](std::size_t c) {
    RngStream rng(seed, c);
    const auto [b, e] = chunk_range(c, n);
    for (std::size_t i = b; i < e; ++i) {
      const auto [x, y] = draw(rng, redraws[c]);
      batch.xs[i] = x;
      batch.ys[i] = y;
    }
  });
  for (auto r : redraws) batch.redraws += r;
  return batch;
}

template <class Policy>
RowBatch sample_multivariate(const MultivariateBetaParams& params, std::size_t n,
                             std::uint64_t seed) {
  require_n(n);
  const MultivariateBetaSampler proto(params);
  RowBatch batch;
  batch.k = params.k();
  batch.seed = seed;
  batch.params_digest = params_digest("multivariate", params.flat());
  batch.values.resize(n * batch.k);
  const std::size_t chunks = chunk_count(n);
  std::vector<std::uint64_t> redraws(chunks, 0);
  for_each_index<Policy>(chunks, [&](std::size_t c) {
    const MultivariateBetaSampler draw = proto;  // scratch buffers are per copy
    RngStream rng(seed, c);
    const auto [b, e] = chunk_range(c, n);
    for (std::size_t i = b; i < e; ++i)
      draw(rng, {batch.values.data() + i * batch.k, batch.k}, redraws[c]);
  });
  for (auto r : redraws) batch.redraws += r;
  return batch;
}

template <class Policy>
SampleBatch sample_dirichlet(const CorrelatedDirichletParams& params, std::size_t n,
                             std::uint64_t seed) {
  require_n(n);
  const CorrelatedDirichletSampler proto(params);
  const std::size_t k = params.k();
  SampleBatch batch;
  batch.dim = k;
  batch.seed = seed;
  std::vector<double> shapes = params.alpha();
  shapes.insert(shapes.end(), params.beta().begin(), params.beta().end());
  shapes.insert(shapes.end(), params.delta().begin(), params.delta().end());
  batch.params_digest = params_digest("dirichlet", shapes);
  batch.xs.resize(n * k);
  batch.ys.resize(n * k);
  const std::size_t chunks = chunk_count(n);
  std::vector<std::uint64_t> redraws(chunks, 0);
  for_each_index<Policy>(chunks, [&](std::size_t c) {
    const CorrelatedDirichletSampler draw = proto;
    RngStream rng(seed, c);
    const auto [b, e] = chunk_range(c, n);
    for (std::size_t i = b; i < e; ++i)
      draw(rng, {batch.xs.data() + i * k, k}, {batch.ys.data() + i * k, k}, redraws[c]);
  });
  for (auto r : redraws) batch.redraws += r;
  return batch;
}

// ---------------------------------------------------------------------------
// Streaming moments

template <class Policy>
MomentEstimate bivariate_moments(const BivariateBetaParams& params, std::size_t n,
                                 std::uint64_t seed) {
  require_n(n);
  const BivariateBetaSampler draw(params);
  const double cx = params.marginal_x().mean(), cy = params.marginal_y().mean();
  const std::size_t chunks = chunk_count(n);
  std::vector<PairMoments> parts(chunks, PairMoments(cx, cy));
  for_each_index<Policy>(chunks, [&](std::size_t c) {
    RngStream rng(seed, c);
    std::uint64_t redraws = 0;
    const auto [b, e] = chunk_range(c, n);
    for (std::size_t i = b; i < e; ++i) {
      const auto [x, y] = draw(rng, redraws);
      parts[c].add(x, y);
    }
  });
  PairMoments total(cx, cy);
  for (const auto& p : parts) total.merge(p);
  return total.estimate();
}

template <class Policy>
std::vector<MomentEstimate> multivariate_moments(const MultivariateBetaParams& params,
                                                 std::size_t n, std::uint64_t seed) {
  require_n(n);
  const std::size_t k = params.k();
  const MultivariateBetaSampler proto(params);
  std::vector<PairMoments> init;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      init.emplace_back(params.marginal(i).mean(), params.marginal(j).mean());
  const std::size_t chunks = chunk_count(n);
  std::vector<std::vector<PairMoments>> parts(chunks, init);
  for_each_index<Policy>(chunks, [&](std::size_t c) {
    const MultivariateBetaSampler draw = proto;
    RngStream rng(seed, c);
    std::uint64_t redraws = 0;
    std::vector<double> row(k);
    const auto [b, e] = chunk_range(c, n);
    for (std::size_t r = b; r < e; ++r) {
      draw(rng, row, redraws);
      std::size_t p = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) parts[c][p++].add(row[i], row[j]);
    }
  });
  std::vector<MomentEstimate> out;
  for (std::size_t p = 0; p < init.size(); ++p) {
    PairMoments total = init[p];
    for (const auto& part : parts) total.merge(part[p]);
    out.push_back(total.estimate());
  }
  return out;
}

template <class Policy>
std::vector<MomentEstimate> dirichlet_moments(const CorrelatedDirichletParams& params,
                                              std::size_t n, std::uint64_t seed) {
  require_n(n);
  const std::size_t k = params.k();
  const CorrelatedDirichletSampler proto(params);
  const auto ax = params.marginal_x(), ay = params.marginal_y();
  const double tx = std::accumulate(ax.begin(), ax.end(), 0.0);
  const double ty = std::accumulate(ay.begin(), ay.end(), 0.0);
  std::vector<PairMoments> init;
  for (std::size_t i = 0; i < k; ++i) init.emplace_back(ax[i] / tx, ay[i] / ty);
  const std::size_t chunks = chunk_count(n);
  std::vector<std::vector<PairMoments>> parts(chunks, init);
  for_each_index<Policy>(chunks, [&](std::size_t c) {
    const CorrelatedDirichletSampler draw = proto;
    RngStream rng(seed, c);
    std::uint64_t redraws = 0;
    std::vector<double> x(k), y(k);
    const auto [b, e] = chunk_range(c, n);
    for (std::size_t r = b; r < e; ++r) {
      draw(rng, x, y, redraws);
      for (std::size_t i = 0; i < k; ++i) parts[c][i].add(x[i], y[i]);
    }
  });
  std::vector<MomentEstimate> out;
  for (std::size_t i = 0; i < k; ++i) {
    PairMoments total = init[i];
    for (const auto& part : parts) total.merge(part[i]);
    out.push_back(total.estimate());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density grid

template <class Policy>
DensityGrid density_grid(const BivariateBetaParams& params, const Grid2D& grid,
                         std::span<const Latents> latents) {
  if (latents.empty()) throw DomainError("at least one latent triple is required");
  if (grid.xs.empty() || grid.ys.empty()) throw DomainError("empty grid");
  if (!std::is_sorted(grid.xs.begin(), grid.xs.end()))
    throw DomainError("grid x nodes must be ascending");
  for (const auto& w : latents)
    if (w.w1 == w.w3 || w.w2 == w.w3)
      throw DomainError("conditional density undefined when w1 == w3 or w2 == w3");

  const double u1 = params.upsilon1(), u2 = params.upsilon2(), u3 = params.upsilon3();
  const double big = u1 + u2 + u3;
  const double log_b3 = log_gamma(u1) + log_gamma(u2) + log_gamma(u3) - log_gamma(big);

  const std::size_t nx = grid.xs.size(), ny = grid.ys.size();
  DensityGrid out;
  out.xs = grid.xs;
  out.ys = grid.ys;
  out.density.assign(nx * ny, 0.0);
  out.std_error.assign(nx * ny, 0.0);

  constexpr std::size_t kRowBlock = 16;
  const std::size_t blocks = (ny + kRowBlock - 1) / kRowBlock;
  const long double n = static_cast<long double>(latents.size());

  for_each_index<Policy>(blocks, [&](std::size_t blk) {
    const std::size_t y0 = blk * kRowBlock, y1 = std::min(ny, y0 + kRowBlock);
    const std::size_t rows = y1 - y0;
    std::vector<long double> sum(rows * nx, 0.0L), sumsq(rows * nx, 0.0L);
    std::vector<double> cx(nx), xp(nx), omx(nx);

    for (const auto& w : latents) {
      // x-dependent part, shared by every row of the block
      const double xlo = std::min(w.w1, w.w3), xhi = std::max(w.w1, w.w3);
      const std::size_t ix0 =
          std::upper_bound(grid.xs.begin(), grid.xs.end(), xlo) - grid.xs.begin();
      const std::size_t ix1 =
          std::lower_bound(grid.xs.begin(), grid.xs.end(), xhi) - grid.xs.begin();
      if (ix0 >= ix1) continue;
      const double span_x = xhi - xlo;
      for (std::size_t ix = ix0; ix < ix1; ++ix) {
        const double x = grid.xs[ix];
        xp[ix] = std::fabs(x - w.w3) / span_x;
        omx[ix] = std::fabs(x - w.w1) / span_x;
        cx[ix] = (u1 - 1) * std::log(xp[ix]) + (u2 + u3 - 1) * std::log(omx[ix]);
      }
      const double ylo = std::min(w.w2, w.w3), yhi = std::max(w.w2, w.w3);
      const double span_y = yhi - ylo;
      const double log_norm = -log_b3 - std::log(span_x) - std::log(span_y);

      for (std::size_t r = 0; r < rows; ++r) {
        const double y = grid.ys[y0 + r];
        if (!(y > ylo && y < yhi)) continue;
        const double yp = std::fabs(y - w.w3) / span_y;
        const double omy = std::fabs(y - w.w2) / span_y;
        const double cy =
            (u2 - 1) * std::log(yp) + (u1 + u3 - 1) * std::log(omy) + log_norm;
        long double* s = sum.data() + r * nx;
        long double* s2 = sumsq.data() + r * nx;
        for (std::size_t ix = ix0; ix < ix1; ++ix) {
          const double v = std::exp(cx[ix] + cy - big * std::log(omx[ix] + xp[ix] * omy));
          s[ix] += v;
          s2[ix] += static_cast<long double>(v) * v;
        }
      }
    }

    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t idx = (y0 + r) * nx + ix;
        const long double mean = sum[r * nx + ix] / n;
        out.density[idx] = static_cast<double>(mean);
        if (latents.size() > 1) {
          const long double var =
              std::max(0.0L, (sumsq[r * nx + ix] - n * mean * mean) / (n - 1));
          out.std_error[idx] = static_cast<double>(std::sqrt(var / n));
        }
      }
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Instantiations

#define BBETA_KERNELS_INSTANTIATE(P)                                                          \
  template SampleBatch sample_bivariate<P>(const BivariateBetaParams&, std::size_t,           \
                                           std::uint64_t);                                    \
  template RowBatch sample_multivariate<P>(const MultivariateBetaParams&, std::size_t,        \
                                           std::uint64_t);                                    \
  template SampleBatch sample_dirichlet<P>(const CorrelatedDirichletParams&, std::size_t,     \
                                           std::uint64_t);                                    \
  template MomentEstimate bivariate_moments<P>(const BivariateBetaParams&, std::size_t,       \
                                               std::uint64_t);                                \
  template std::vector<MomentEstimate> multivariate_moments<P>(                               \
      const MultivariateBetaParams&, std::size_t, std::uint64_t);                             \
  template std::vector<MomentEstimate> dirichlet_moments<P>(const CorrelatedDirichletParams&, \
                                                            std::size_t, std::uint64_t);      \
  template DensityGrid density_grid<P>(const BivariateBetaParams&, const Grid2D&,             \
                                       std::span<const Latents>);

BBETA_KERNELS_INSTANTIATE(Serial)
BBETA_KERNELS_INSTANTIATE(Parallel)

#undef BBETA_KERNELS_INSTANTIATE

}  // namespace bbeta::kernels
