#include "bbeta/sampling.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <string>

#include "bbeta/errors.hpp"

namespace bbeta {

GammaSampler::GammaSampler(double shape)
    : shape_(shape), d_(0), c_(0), boosted_(shape < 1.0) {
  if (!(shape > 0) || !std::isfinite(shape))
    throw DomainError("gamma shape must be positive and finite, got " + std::to_string(shape));
  const double s = boosted_ ? shape + 1.0 : shape;
  d_ = s - 1.0 / 3.0;
  c_ = 1.0 / std::sqrt(9.0 * d_);
}

double GammaSampler::operator()(RngStream& rng) const {
  double v;
  for (;;) {
    double z, t;
    do {
      z = rng.normal();
      t = 1.0 + c_ * z;
    } while (t <= 0.0);
    v = t * t * t;
    const double u = rng.uniform();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) break;
    if (std::log(u) < 0.5 * z2 + d_ * (1.0 - v + std::log(v))) break;
  }
  double g = d_ * v;
  if (boosted_) g *= std::pow(rng.uniform(), 1.0 / shape_);
  return g;
}

double gamma_variate(RngStream& rng, double shape) { return GammaSampler(shape)(rng); }

double beta_variate(RngStream& rng, double p, double q) {
  const GammaSampler gp(p), gq(q);
  for (;;) {
    const double x = gp(rng);
    const double y = gq(rng);
    const double s = x + y;
    if (!(s > 0)) continue;
    const double w = x / s;
    if (w > 0.0 && w < 1.0) return w;
  }
}

std::vector<double> RowBatch::column(std::size_t j) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values[i * k + j];
  return out;
}

std::string params_digest(std::string_view kind, std::span<const double> shapes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte;
    h *= 0x100000001b3ull;
  };
  for (char c : kind) mix(static_cast<unsigned char>(c));
  for (double v : shapes) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) mix((bits >> (8 * i)) & 0xff);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BivariateBetaSampler::BivariateBetaSampler(const BivariateBetaParams& params)
    : params_(params),
      a1_(params.alpha1()),
      a2_(params.alpha2()),
      b1_(params.beta1()),
      b2_(params.beta2()),
      d1_(params.delta1()),
      d2_(params.delta2()) {}

std::pair<double, double> BivariateBetaSampler::operator()(RngStream& rng,
                                                           std::uint64_t& redraws) const {
  for (;;) {
    const double ga1 = a1_(rng), ga2 = a2_(rng);
    const double gb1 = b1_(rng), gb2 = b2_(rng);
    const double gd1 = d1_(rng), gd2 = d2_(rng);
    const double x = (ga1 + gd1) / (ga1 + ga2 + gd1 + gd2);
    const double y = (gb1 + gd1) / (gb1 + gb2 + gd1 + gd2);
    if (x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0) return {x, y};
    ++redraws;
  }
}

LatentDraw BivariateBetaSampler::latent(RngStream& rng, std::uint64_t& redraws) const {
  for (;;) {
    const double ga1 = a1_(rng), ga2 = a2_(rng);
    const double gb1 = b1_(rng), gb2 = b2_(rng);
    const double gd1 = d1_(rng), gd2 = d2_(rng);
    const double u1 = ga1 + ga2, u2 = gb1 + gb2, u3 = gd1 + gd2;
    LatentDraw d;
    d.w1 = ga1 / u1;
    d.w2 = gb1 / u2;
    d.w3 = gd1 / u3;
    d.x_prime = u1 / (u1 + u3);
    d.y_prime = u2 / (u2 + u3);
    d.x = (ga1 + gd1) / (u1 + u3);
    d.y = (gb1 + gd1) / (u2 + u3);
    const auto interior = [](double v) { return v > 0.0 && v < 1.0; };
    if (interior(d.w1) && interior(d.w2) && interior(d.w3) && interior(d.x_prime) &&
        interior(d.y_prime) && interior(d.x) && interior(d.y))
      return d;
    ++redraws;
  }
}

SampleBatch sample_bivariate_beta(RngStream& rng, const BivariateBetaParams& params,
                                  std::size_t n) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  const BivariateBetaSampler draw(params);
  SampleBatch batch;
  batch.dim = 1;
  batch.seed = rng.seed();
  const auto shapes = params.shapes();
  batch.params_digest = params_digest("bivariate", shapes);
  batch.xs.resize(n);
  batch.ys.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x, y] = draw(rng, batch.redraws);
    batch.xs[i] = x;
    batch.ys[i] = y;
  }
  return batch;
}

LatentDraw sample_latents(RngStream& rng, const BivariateBetaParams& params) {
  std::uint64_t redraws = 0;
  return BivariateBetaSampler(params).latent(rng, redraws);
}

}  // namespace bbeta
