#include "bbeta/params_doc.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bbeta/errors.hpp"

namespace bbeta {

using nlohmann::json;

namespace {

const json& require(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError("missing key '" + key + "'");
  return *it;
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw InputError("key '" + key + "' must hold numbers");
  return v.get<double>();
}

std::vector<double> number_list(const json& v, const std::string& key,
                                std::optional<std::size_t> size = std::nullopt) {
  if (!v.is_array()) throw InputError("key '" + key + "' must be a list of numbers");
  if (size && v.size() != *size)
    throw InputError("key '" + key + "' must have " + std::to_string(*size) + " entries, got " +
                     std::to_string(v.size()));
  std::vector<double> out;
  for (const auto& e : v) out.push_back(number(e, key));
  return out;
}

std::uint64_t count(const json& v, const std::string& key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw InputError("key '" + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

ShapePair pair_of(const std::vector<double>& v) { return {v[0], v[1]}; }

BivariateBetaParams parse_bivariate(const json& j) {
  const auto a = number_list(require(j, "alpha"), "alpha", 2);
  const auto b = number_list(require(j, "beta"), "beta", 2);
  const auto d = number_list(require(j, "delta"), "delta", 2);
  return {a[0], a[1], b[0], b[1], d[0], d[1]};
}

MultivariateBetaParams parse_multivariate(const json& j) {
  const auto k = count(require(j, "k"), "k");
  if (k < 2) throw InputError("key 'k' must be at least 2");
  const json& own = require(j, "own");
  if (!own.is_array() || own.size() != k)
    throw InputError("key 'own' must list " + std::to_string(k) + " shape pairs");
  std::vector<ShapePair> own_pairs;
  for (const auto& p : own) own_pairs.push_back(pair_of(number_list(p, "own", 2)));

  const json& shared = require(j, "shared");
  const std::size_t npairs = k * (k - 1) / 2;
  if (!shared.is_array() || shared.size() != npairs)
    throw InputError("key 'shared' must list " + std::to_string(npairs) + " entries");
  std::vector<ShapePair> shared_pairs(npairs);
  std::set<std::size_t> seen;
  for (const auto& entry : shared) {
    if (!entry.is_object()) throw InputError("key 'shared' entries must be objects");
    const auto idx = number_list(require(entry, "pair"), "pair", 2);
    const auto shapes = number_list(require(entry, "shapes"), "shapes", 2);
    for (double v : idx)
      if (v != std::floor(v) || v < 1 || v > static_cast<double>(k))
        throw InputError("key 'pair' must hold 1-based indices in 1.." + std::to_string(k));
    const auto i = static_cast<std::size_t>(idx[0]) - 1, jj = static_cast<std::size_t>(idx[1]) - 1;
    if (i == jj) throw InputError("key 'pair' must name two different coordinates");
    const std::size_t p = MultivariateBetaParams::pair_index(k, i, jj);
    if (!seen.insert(p).second) throw InputError("key 'pair' repeats a coordinate pair");
    shared_pairs[p] = pair_of(shapes);
  }
  return {std::move(own_pairs), std::move(shared_pairs)};
}

CorrelatedDirichletParams parse_dirichlet(const json& j) {
  const auto a = number_list(require(j, "alpha"), "alpha");
  const auto b = number_list(require(j, "beta"), "beta", a.size());
  const auto d = number_list(require(j, "delta"), "delta", a.size());
  return {a, b, d};
}

}  // namespace

ParamsDocument parse_params_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
  if (!j.is_object()) throw InputError("document must be an object");
  const json& type = require(j, "type");
  if (!type.is_string()) throw InputError("key 'type' must be a string");
  const auto t = type.get<std::string>();

  std::optional<AnyParams> params;
  if (t == "bivariate")
    params = parse_bivariate(j);
  else if (t == "multivariate")
    params = parse_multivariate(j);
  else if (t == "dirichlet")
    params = parse_dirichlet(j);
  else
    throw InputError("key 'type' must be bivariate, multivariate or dirichlet, got '" + t + "'");

  ParamsDocument doc{*params, std::nullopt, std::nullopt};
  if (j.contains("seed")) doc.seed = count(j["seed"], "seed");
  if (j.contains("n")) doc.n = count(j["n"], "n");
  return doc;
}

ParamsDocument read_params_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_params_document(ss.str());
}

std::string serialize_params_document(const ParamsDocument& doc) {
  json j;
  std::visit(
      [&j](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BivariateBetaParams>) {
          j["type"] = "bivariate";
          j["alpha"] = {p.alpha1(), p.alpha2()};
          j["beta"] = {p.beta1(), p.beta2()};
          j["delta"] = {p.delta1(), p.delta2()};
        } else if constexpr (std::is_same_v<T, MultivariateBetaParams>) {
          j["type"] = "multivariate";
          j["k"] = p.k();
          j["own"] = json::array();
          for (const auto& o : p.own_pairs()) j["own"].push_back({o[0], o[1]});
          j["shared"] = json::array();
          for (std::size_t a = 0; a < p.k(); ++a)
            for (std::size_t b = a + 1; b < p.k(); ++b) {
              const auto& s = p.shared(a, b);
              j["shared"].push_back({{"pair", {a + 1, b + 1}}, {"shapes", {s[0], s[1]}}});
            }
        } else {
          j["type"] = "dirichlet";
          j["alpha"] = p.alpha();
          j["beta"] = p.beta();
          j["delta"] = p.delta();
        }
      },
      doc.params);
  if (doc.seed) j["seed"] = *doc.seed;
  if (doc.n) j["n"] = *doc.n;
  return j.dump(2) + "\n";
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_bivariate_table(std::ostream& out, const SampleBatch& batch) {
  out << "x,y\n";
  for (std::size_t i = 0; i < batch.xs.size(); ++i)
    out << format_double(batch.xs[i]) << ',' << format_double(batch.ys[i]) << '\n';
}

void write_dirichlet_table(std::ostream& out, const SampleBatch& batch) {
  const std::size_t k = batch.dim;
  for (std::size_t i = 0; i < k; ++i) out << (i ? ",x" : "x") << i + 1;
  for (std::size_t i = 0; i < k; ++i) out << ",y" << i + 1;
  out << '\n';
  for (std::size_t r = 0; r < batch.size(); ++r) {
    for (std::size_t i = 0; i < k; ++i) out << (i ? "," : "") << format_double(batch.xs[r * k + i]);
    for (std::size_t i = 0; i < k; ++i) out << ',' << format_double(batch.ys[r * k + i]);
    out << '\n';
  }
}

void write_multivariate_table(std::ostream& out, const RowBatch& batch) {
  for (std::size_t i = 0; i < batch.k; ++i) out << (i ? ",x" : "x") << i + 1;
  out << '\n';
  for (std::size_t r = 0; r < batch.size(); ++r) {
    const auto row = batch.row(r);
    for (std::size_t i = 0; i < batch.k; ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_number(const std::string& s, double& v) {
  if (s.empty()) return false;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

Table read_table(std::istream& in) {
  Table t;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_fields(line);
    std::vector<double> values(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size(); ++i) numeric = numeric && parse_number(fields[i], values[i]);
    if (width == 0) {
      width = fields.size();
      t.columns.assign(width, {});
      if (!numeric) {
        t.header = fields;
        continue;
      }
    }
    if (fields.size() != width)
      throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(width) +
                       " fields, got " + std::to_string(fields.size()));
    if (!numeric) throw InputError("line " + std::to_string(lineno) + ": non-numeric field");
    for (std::size_t i = 0; i < width; ++i) t.columns[i].push_back(values[i]);
  }
  return t;
}

}  // namespace bbeta
