#include "bbeta/extensions.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "bbeta/bivariate_beta.hpp"
#include "bbeta/errors.hpp"

namespace bbeta {

namespace {

void check_pair(const ShapePair& p, const std::string& name) {
  validate_shape(p[0], (name + "[0]").c_str());
  validate_shape(p[1], (name + "[1]").c_str());
}

void check_vector(const std::vector<double>& v, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i)
    validate_shape(v[i], (std::string(name) + "[" + std::to_string(i) + "]").c_str());
}

double sum_except(const std::vector<double>& v, std::size_t skip) {
  double s = 0;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (j != skip) s += v[j];
  return s;
}

bool interior(double v) { return v > 0.0 && v < 1.0; }

}  // namespace

// ---------------------------------------------------------------------------
// MultivariateBetaParams

MultivariateBetaParams::MultivariateBetaParams(std::vector<ShapePair> own,
                                               std::vector<ShapePair> shared)
    : own_(std::move(own)), shared_(std::move(shared)) {
  const std::size_t k = own_.size();
  if (k < 2) throw DomainError("multivariate beta needs k >= 2");
  if (shared_.size() != k * (k - 1) / 2)
    throw DomainError("expected " + std::to_string(k * (k - 1) / 2) + " shared pairs for k = " +
                      std::to_string(k) + ", got " + std::to_string(shared_.size()));
  for (std::size_t i = 0; i < k; ++i) check_pair(own_[i], "own[" + std::to_string(i) + "]");
  for (std::size_t p = 0; p < shared_.size(); ++p)
    check_pair(shared_[p], "shared[" + std::to_string(p) + "]");
}

MultivariateBetaParams MultivariateBetaParams::trivariate(ShapePair alpha, ShapePair beta,
                                                          ShapePair gamma, ShapePair delta,
                                                          ShapePair epsilon, ShapePair phi) {
  // upper-triangular order {0,1}, {0,2}, {1,2}
  return {{alpha, beta, gamma}, {delta, phi, epsilon}};
}

MultivariateBetaParams MultivariateBetaParams::from_flat(std::size_t k,
                                                         std::span<const double> shapes) {
  if (k < 2) throw DomainError("multivariate beta needs k >= 2");
  if (shapes.size() != parameter_count(k))
    throw DomainError("k = " + std::to_string(k) + " requires " +
                      std::to_string(parameter_count(k)) + " shapes, got " +
                      std::to_string(shapes.size()));
  std::vector<ShapePair> own(k), shared(k * (k - 1) / 2);
  std::size_t pos = 0;
  for (auto& p : own) p = {shapes[pos], shapes[pos + 1]}, pos += 2;
  for (auto& p : shared) p = {shapes[pos], shapes[pos + 1]}, pos += 2;
  return {std::move(own), std::move(shared)};
}

std::size_t MultivariateBetaParams::parameter_count(std::size_t k) {
  return 2 * (k + k * (k - 1) / 2);
}

std::size_t MultivariateBetaParams::pair_index(std::size_t k, std::size_t i, std::size_t j) {
  if (i >= k || j >= k || i == j)
    throw std::out_of_range("invalid coordinate pair (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") for k = " + std::to_string(k));
  if (i > j) std::swap(i, j);
  // rows 0..i−1 contribute (k−1) + (k−2) + … + (k−i) entries
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

std::vector<double> MultivariateBetaParams::flat() const {
  std::vector<double> out;
  out.reserve(parameter_count(k()));
  for (const auto& p : own_) out.insert(out.end(), p.begin(), p.end());
  for (const auto& p : shared_) out.insert(out.end(), p.begin(), p.end());
  return out;
}

BetaMarginal MultivariateBetaParams::marginal(std::size_t i) const {
  ShapePair s = own(i);
  for (std::size_t m = 0; m < k(); ++m) {
    if (m == i) continue;
    const auto& sh = shared(i, m);
    s[0] += sh[0];
    s[1] += sh[1];
  }
  return {s[0], s[1]};
}

// ---------------------------------------------------------------------------
// CorrelatedDirichletParams

CorrelatedDirichletParams::CorrelatedDirichletParams(std::vector<double> alpha,
                                                     std::vector<double> beta,
                                                     std::vector<double> delta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), delta_(std::move(delta)) {
  if (alpha_.size() < 2) throw DomainError("correlated Dirichlet needs k >= 2");
  if (beta_.size() != alpha_.size() || delta_.size() != alpha_.size())
    throw DomainError("alpha, beta and delta must have the same length");
  check_vector(alpha_, "alpha");
  check_vector(beta_, "beta");
  check_vector(delta_, "delta");
}

std::vector<double> CorrelatedDirichletParams::marginal_x() const {
  std::vector<double> out(k());
  for (std::size_t i = 0; i < k(); ++i) out[i] = alpha_[i] + delta_[i];
  return out;
}

std::vector<double> CorrelatedDirichletParams::marginal_y() const {
  std::vector<double> out(k());
  for (std::size_t i = 0; i < k(); ++i) out[i] = beta_[i] + delta_[i];
  return out;
}

// ---------------------------------------------------------------------------
// Samplers

MultivariateBetaSampler::MultivariateBetaSampler(const MultivariateBetaParams& params)
    : params_(params), num_(params.k()), den_(params.k()) {
  for (const auto& p : params.own_pairs()) {
    own1_.emplace_back(p[0]);
    own2_.emplace_back(p[1]);
  }
  for (const auto& p : params.shared_pairs()) {
    shared1_.emplace_back(p[0]);
    shared2_.emplace_back(p[1]);
  }
}

void MultivariateBetaSampler::operator()(RngStream& rng, std::span<double> row,
                                         std::uint64_t& redraws) const {
  const std::size_t k = params_.k();
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) {
      const double g1 = own1_[i](rng), g2 = own2_[i](rng);
      num_[i] = g1;
      den_[i] = g1 + g2;
    }
    std::size_t p = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j, ++p) {
        const double g1 = shared1_[p](rng), g2 = shared2_[p](rng);
        num_[i] += g1;
        num_[j] += g1;
        den_[i] += g1 + g2;
        den_[j] += g1 + g2;
      }
    }
    bool ok = true;
    for (std::size_t i = 0; i < k; ++i) {
      row[i] = num_[i] / den_[i];
      ok = ok && interior(row[i]);
    }
    if (ok) return;
    ++redraws;
  }
}

CorrelatedDirichletSampler::CorrelatedDirichletSampler(const CorrelatedDirichletParams& params)
    : ga_(params.k()), gb_(params.k()), gd_(params.k()) {
  for (std::size_t i = 0; i < params.k(); ++i) {
    a_.emplace_back(params.alpha()[i]);
    b_.emplace_back(params.beta()[i]);
    d_.emplace_back(params.delta()[i]);
  }
}

void CorrelatedDirichletSampler::operator()(RngStream& rng, std::span<double> x,
                                            std::span<double> y, std::uint64_t& redraws) const {
  const std::size_t k = a_.size();
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) ga_[i] = a_[i](rng);
    for (std::size_t i = 0; i < k; ++i) gb_[i] = b_[i](rng);
    for (std::size_t i = 0; i < k; ++i) gd_[i] = d_[i](rng);
    double sa = 0, sb = 0, sd = 0;
    for (std::size_t i = 0; i < k; ++i) sa += ga_[i], sb += gb_[i], sd += gd_[i];
    const double dx = sa + sd, dy = sb + sd;
    bool ok = dx > 0 && dy > 0;
    if (ok) {
      double tx = 0, ty = 0;
      for (std::size_t i = 0; i < k; ++i) {
        x[i] = (ga_[i] + gd_[i]) / dx;
        y[i] = (gb_[i] + gd_[i]) / dy;
        tx += x[i];
        ty += y[i];
      }
      // renormalize against rounding in the ratios
      for (std::size_t i = 0; i < k; ++i) {
        x[i] /= tx;
        y[i] /= ty;
        ok = ok && interior(x[i]) && interior(y[i]);
      }
    }
    if (ok) return;
    ++redraws;
  }
}

RowBatch sample_multivariate_beta(RngStream& rng, const MultivariateBetaParams& params,
                                  std::size_t n) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  const MultivariateBetaSampler draw(params);
  RowBatch batch;
  batch.k = params.k();
  batch.seed = rng.seed();
  batch.params_digest = params_digest("multivariate", params.flat());
  batch.values.resize(n * batch.k);
  for (std::size_t r = 0; r < n; ++r)
    draw(rng, std::span<double>(batch.values.data() + r * batch.k, batch.k), batch.redraws);
  return batch;
}

BivariateBetaParams pairwise_bivariate_reduction(const MultivariateBetaParams& params,
                                                 std::size_t i, std::size_t j) {
  const std::size_t k = params.k();
  MultivariateBetaParams::pair_index(k, i, j);  // validates
  ShapePair a = params.own(i), b = params.own(j);
  for (std::size_t m = 0; m < k; ++m) {
    if (m == i || m == j) continue;
    const auto& si = params.shared(i, m);
    const auto& sj = params.shared(j, m);
    a[0] += si[0];
    a[1] += si[1];
    b[0] += sj[0];
    b[1] += sj[1];
  }
  const auto& d = params.shared(i, j);
  return {a[0], a[1], b[0], b[1], d[0], d[1]};
}

SampleBatch sample_correlated_dirichlet(RngStream& rng, const CorrelatedDirichletParams& params,
                                        std::size_t n) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  const CorrelatedDirichletSampler draw(params);
  SampleBatch batch;
  batch.dim = params.k();
  batch.seed = rng.seed();
  std::vector<double> shapes = params.alpha();
  shapes.insert(shapes.end(), params.beta().begin(), params.beta().end());
  shapes.insert(shapes.end(), params.delta().begin(), params.delta().end());
  batch.params_digest = params_digest("dirichlet", shapes);
  const std::size_t k = batch.dim;
  batch.xs.resize(n * k);
  batch.ys.resize(n * k);
  for (std::size_t r = 0; r < n; ++r)
    draw(rng, {batch.xs.data() + r * k, k}, {batch.ys.data() + r * k, k}, batch.redraws);
  return batch;
}

BivariateBetaParams dirichlet_component_reduction(const CorrelatedDirichletParams& params,
                                                  std::size_t i) {
  if (i >= params.k())
    throw std::out_of_range("component " + std::to_string(i) + " out of range for k = " +
                            std::to_string(params.k()));
  return {params.alpha()[i], sum_except(params.alpha(), i),
          params.beta()[i],  sum_except(params.beta(), i),
          params.delta()[i], sum_except(params.delta(), i)};
}

double dirichlet_component_correlation(const CorrelatedDirichletParams& params, std::size_t i) {
  return exact_correlation(dirichlet_component_reduction(params, i));
}

}  // namespace bbeta
