#include "bbeta/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbeta/bivariate_beta.hpp"
#include "bbeta/errors.hpp"
#include "bbeta/extensions.hpp"
#include "bbeta/inference.hpp"
#include "bbeta/kernels.hpp"
#include "bbeta/params_doc.hpp"

namespace bbeta::cli {

namespace {

using nlohmann::json;
using kernels::Parallel;

const BivariateBetaParams& require_bivariate(const ParamsDocument& doc, const char* what) {
  if (const auto* p = std::get_if<BivariateBetaParams>(&doc.params)) return *p;
  throw InputError(std::string(what) + " requires a bivariate parameter document");
}

// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw InputError("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }
  void close() {
    stream_->flush();
    if (file_) {
      file_->close();
      if (!*file_) throw InputError("write failed");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::uint64_t pick_seed(const std::optional<std::uint64_t>& flag, const ParamsDocument& doc) {
  return flag ? *flag : doc.seed.value_or(0);
}

void print_value(std::ostream& out, const std::string& key, double v) {
  out << key << ": " << format_double(v) << '\n';
}

void print_estimate(std::ostream& out, const std::string& prefix,
                    const kernels::MomentEstimate& e) {
  print_value(out, prefix + "covariance", e.covariance);
  print_value(out, prefix + "covariance_se", e.se_covariance);
  print_value(out, prefix + "correlation", e.correlation);
  print_value(out, prefix + "correlation_se", e.se_correlation);
}

void print_reduction(std::ostream& out, const std::string& prefix,
                     const BivariateBetaParams& p) {
  out << prefix << "alpha: " << format_double(p.alpha1()) << ", " << format_double(p.alpha2())
      << '\n'
      << prefix << "beta: " << format_double(p.beta1()) << ", " << format_double(p.beta2())
      << '\n'
      << prefix << "delta: " << format_double(p.delta1()) << ", " << format_double(p.delta2())
      << '\n';
  const auto c = evaluate_covariance(p);
  print_value(out, prefix + "covariance", c.covariance);
  print_value(out, prefix + "correlation", c.correlation);
}

std::string pair_prefix(std::size_t i, std::size_t j) {
  return "pair " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " ";
}

std::string component_prefix(std::size_t i) {
  return "component " + std::to_string(i + 1) + " ";
}

// ---------------------------------------------------------------------------

struct SampleArgs {
  std::string params, out;
  std::optional<std::uint64_t> n, seed;
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const auto doc = read_params_document(a.params);
  const std::uint64_t n = a.n ? *a.n : doc.n.value_or(0);
  if (n == 0) throw InputError("sample size missing: pass --n or set 'n' in the document");
  const std::uint64_t seed = pick_seed(a.seed, doc);
  std::ostringstream buf;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BivariateBetaParams>)
          write_bivariate_table(buf, kernels::sample_bivariate<Parallel>(p, n, seed));
        else if constexpr (std::is_same_v<T, MultivariateBetaParams>)
          write_multivariate_table(buf, kernels::sample_multivariate<Parallel>(p, n, seed));
        else
          write_dirichlet_table(buf, kernels::sample_dirichlet<Parallel>(p, n, seed));
      },
      doc.params);
  Sink sink(a.out, out);
  *sink << buf.str();
  sink.close();
  return kOk;
}

struct FitArgs {
  std::string data, out;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
  std::ifstream in(a.data);
  if (!in) throw InputError("cannot open '" + a.data + "'");
  const Table t = read_table(in);
  if (t.columns.size() != 2)
    throw InputError("fit expects two columns, got " + std::to_string(t.columns.size()));
  const FitResult r = fit(t.columns[0], t.columns[1]);

  json j;
  const auto& p = r.params;
  j["params"] = {{"alpha", {p.alpha1(), p.alpha2()}},
                 {"beta", {p.beta1(), p.beta2()}},
                 {"delta", {p.delta1(), p.delta2()}}};
  j["marginals"] = {{"a", {p.a1(), p.a2()}}, {"b", {p.b1(), p.b2()}}};
  j["empirical"] = {{"n", r.empirical.n},
                    {"mean_x", r.empirical.mean_x},
                    {"var_x", r.empirical.var_x},
                    {"mean_y", r.empirical.mean_y},
                    {"var_y", r.empirical.var_y},
                    {"corr", r.empirical.corr}};
  j["achieved_corr"] = r.achieved_corr;
  j["delta1_max"] = r.delta1_max;
  j["delta2_max"] = r.delta2_max;
  j["objective_value"] = r.objective_value;
  j["iterations"] = r.iterations;
  j["warnings"] = json::array();
  for (auto w : r.warnings) j["warnings"].push_back(std::string(to_string(w)));

  Sink sink(a.out, out);
  *sink << j.dump(2) << '\n';
  sink.close();
  return kOk;
}

struct CorrArgs {
  std::string params;
  std::string method = "exact";
  std::uint64_t mc_n = 1'000'000;
  std::optional<std::uint64_t> seed;
};

int cmd_corr(const CorrArgs& a, std::ostream& out) {
  const auto doc = read_params_document(a.params);
  out << "method: " << a.method << '\n';
  if (a.method == "approx") {
    const auto& p = require_bivariate(doc, "--method approx");
    const double cov = magnussen_approx_covariance(p.a1(), p.a2(), p.b1(), p.b2(), p.delta1(),
                                                   p.delta2());
    const double r = magnussen_approx_correlation(p.a1(), p.a2(), p.b1(), p.b2(), p.delta1(),
                                                  p.delta2());
    print_value(out, "covariance", cov);
    print_value(out, "correlation", r);
    if (!(r >= -1 && r <= 1)) out << "flag: OUT_OF_RANGE\n";
    return kOk;
  }
  if (a.method == "exact") {
    int code = kOk;
    auto report = [&](const std::string& prefix, const BivariateBetaParams& p) {
      const auto c = evaluate_covariance(p);
      print_value(out, prefix + "covariance", c.covariance);
      print_value(out, prefix + "correlation", c.correlation);
      if (!c.olkin_liu_xy.converged) {
        out << prefix << "flag: SERIES_NOT_CONVERGED\n";
        code = kNonConvergence;
      }
    };
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, BivariateBetaParams>) {
            report("", p);
          } else if constexpr (std::is_same_v<T, MultivariateBetaParams>) {
            for (std::size_t i = 0; i < p.k(); ++i)
              for (std::size_t j = i + 1; j < p.k(); ++j)
                report(pair_prefix(i, j), pairwise_bivariate_reduction(p, i, j));
          } else {
            for (std::size_t i = 0; i < p.k(); ++i)
              report(component_prefix(i), dirichlet_component_reduction(p, i));
          }
        },
        doc.params);
    return code;
  }
  // mc
  if (a.mc_n < 2) throw InputError("--mc-n must be at least 2");
  const std::uint64_t seed = pick_seed(a.seed, doc);
  print_value(out, "n", static_cast<double>(a.mc_n));
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BivariateBetaParams>) {
          print_estimate(out, "", kernels::bivariate_moments<Parallel>(p, a.mc_n, seed));
        } else if constexpr (std::is_same_v<T, MultivariateBetaParams>) {
          const auto est = kernels::multivariate_moments<Parallel>(p, a.mc_n, seed);
          std::size_t idx = 0;
          for (std::size_t i = 0; i < p.k(); ++i)
            for (std::size_t j = i + 1; j < p.k(); ++j)
              print_estimate(out, pair_prefix(i, j), est[idx++]);
        } else {
          const auto est = kernels::dirichlet_moments<Parallel>(p, a.mc_n, seed);
          for (std::size_t i = 0; i < p.k(); ++i) print_estimate(out, component_prefix(i), est[i]);
        }
      },
      doc.params);
  return kOk;
}

struct MomentsArgs {
  std::string params;
  std::size_t k = 1, l = 1;
};

int cmd_moments(const MomentsArgs& a, std::ostream& out) {
  const auto doc = read_params_document(a.params);
  const auto& p = require_bivariate(doc, "moments");
  const auto m = product_moment(p, a.k, a.l);
  out << "k: " << a.k << "\nl: " << a.l << '\n';
  print_value(out, "moment", m.value);
  out << "converged: " << (m.converged ? "true" : "false") << '\n';
  return m.converged ? kOk : kNonConvergence;
}

struct GridArgs {
  std::string params, out;
  std::size_t grid_res = 200;
  std::size_t n_latent = 10'000;
  std::optional<std::uint64_t> seed;
};

int cmd_density_grid(const GridArgs& a, std::ostream& out) {
  const auto doc = read_params_document(a.params);
  const auto& p = require_bivariate(doc, "density-grid");
  RngStream rng(pick_seed(a.seed, doc));
  const auto grid = joint_density_mc(p, Grid2D::uniform(a.grid_res), a.n_latent, rng);
  std::ostringstream buf;
  buf << "x,y,density\n";
  for (std::size_t iy = 0; iy < grid.ys.size(); ++iy)
    for (std::size_t ix = 0; ix < grid.xs.size(); ++ix)
      buf << format_double(grid.xs[ix]) << ',' << format_double(grid.ys[iy]) << ','
          << format_double(grid.at(ix, iy)) << '\n';
  Sink sink(a.out, out);
  *sink << buf.str();
  sink.close();
  return kOk;
}

struct ReduceArgs {
  std::string params;
  std::vector<std::size_t> pair;
  std::optional<std::size_t> component;
};

int cmd_reduce(const ReduceArgs& a, std::ostream& out) {
  const auto doc = read_params_document(a.params);
  if (const auto* m = std::get_if<MultivariateBetaParams>(&doc.params)) {
    if (a.component) throw InputError("--component applies to dirichlet documents");
    if (!a.pair.empty()) {
      if (a.pair.size() != 2 || a.pair[0] < 1 || a.pair[1] < 1 || a.pair[0] > m->k() ||
          a.pair[1] > m->k() || a.pair[0] == a.pair[1])
        throw InputError("--pair needs two different 1-based coordinates");
      const std::size_t i = a.pair[0] - 1, j = a.pair[1] - 1;
      print_reduction(out, pair_prefix(i, j), pairwise_bivariate_reduction(*m, i, j));
      return kOk;
    }
    for (std::size_t i = 0; i < m->k(); ++i)
      for (std::size_t j = i + 1; j < m->k(); ++j)
        print_reduction(out, pair_prefix(i, j), pairwise_bivariate_reduction(*m, i, j));
    return kOk;
  }
  if (const auto* d = std::get_if<CorrelatedDirichletParams>(&doc.params)) {
    if (!a.pair.empty()) throw InputError("--pair applies to multivariate documents");
    if (a.component) {
      if (*a.component < 1 || *a.component > d->k())
        throw InputError("--component must lie in 1.." + std::to_string(d->k()));
      const std::size_t i = *a.component - 1;
      print_reduction(out, component_prefix(i), dirichlet_component_reduction(*d, i));
      return kOk;
    }
    for (std::size_t i = 0; i < d->k(); ++i)
      print_reduction(out, component_prefix(i), dirichlet_component_reduction(*d, i));
    return kOk;
  }
  throw InputError("reduce requires a multivariate or dirichlet document");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Six-gamma bivariate beta toolkit: sampling, moments, fitting."};
  app.name("bbeta");
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads,
                 "Worker threads for Monte-Carlo kernels (default: BBETA_NUM_THREADS or all)")
      ->check(CLI::PositiveNumber);

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "Draw samples and write a CSV table");
  s->add_option("--params", sample.params, "Parameter document (JSON)")->required();
  s->add_option("--n", sample.n, "Number of draws (overrides the document)");
  s->add_option("--seed", sample.seed, "RNG seed (overrides the document)");
  s->add_option("--out", sample.out, "Output file (default: stdout)");

  FitArgs fit_args;
  auto* f = app.add_subcommand("fit", "Fit a bivariate beta to a two-column CSV by moment matching");
  f->add_option("--data", fit_args.data, "Input CSV with x,y columns")->required();
  f->add_option("--out", fit_args.out, "Output JSON (default: stdout)");

  CorrArgs corr;
  auto* c = app.add_subcommand("corr", "Covariance and correlation report");
  c->add_option("--params", corr.params, "Parameter document (JSON)")->required();
  c->add_option("--method", corr.method, "exact | approx | mc")
      ->check(CLI::IsMember({"exact", "approx", "mc"}));
  c->add_option("--mc-n", corr.mc_n, "Monte-Carlo sample size");
  c->add_option("--seed", corr.seed, "RNG seed for --method mc");

  MomentsArgs mom;
  auto* m = app.add_subcommand("moments", "Exact product moment E(X^k Y^l)");
  m->add_option("--params", mom.params, "Parameter document (JSON)")->required();
  m->add_option("--k", mom.k, "Power of X");
  m->add_option("--l", mom.l, "Power of Y");

  GridArgs grid;
  auto* g = app.add_subcommand("density-grid", "Monte-Carlo joint density on a grid (x,y,density)");
  g->add_option("--params", grid.params, "Parameter document (JSON)")->required();
  g->add_option("--grid-res", grid.grid_res, "Nodes per axis")->check(CLI::Range(16, 1024));
  g->add_option("--n-latent", grid.n_latent, "Latent draws averaged per node")
      ->check(CLI::PositiveNumber);
  g->add_option("--seed", grid.seed, "RNG seed (overrides the document)");
  g->add_option("--out", grid.out, "Output file (default: stdout)");

  ReduceArgs red;
  auto* r = app.add_subcommand("reduce", "Bivariate reduction of a coordinate pair or component");
  r->add_option("--params", red.params, "Parameter document (JSON)")->required();
  r->add_option("--pair", red.pair, "Two 1-based coordinates (multivariate)")->delimiter(',');
  r->add_option("--component", red.component, "1-based component (dirichlet)");

  std::vector<std::string> storage{"bbeta"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  kernels::configure_threads_from_env();
  if (threads > 0) kernels::set_num_threads(threads);

  try {
    if (*s) return cmd_sample(sample, out);
    if (*f) return cmd_fit(fit_args, out);
    if (*c) return cmd_corr(corr, out);
    if (*m) return cmd_moments(mom, out);
    if (*g) return cmd_density_grid(grid, out);
    if (*r) return cmd_reduce(red, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const EvaluationError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace bbeta::cli
