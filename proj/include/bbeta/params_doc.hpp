#pragma once

// Parameter documents (JSON) and delimited sample tables.
//
//   {"type": "bivariate", "alpha": [a1, a2], "beta": [b1, b2], "delta": [d1, d2]}
//   {"type": "multivariate", "k": 3, "own": [[..], [..], [..]],
//    "shared": [{"pair": [1, 2], "shapes": [..]}, ...]}          (1-based pairs)
//   {"type": "dirichlet", "alpha": [...], "beta": [...], "delta": [...]}
//
// "seed" and "n" are optional in every document.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bbeta/extensions.hpp"
#include "bbeta/params.hpp"
#include "bbeta/sampling.hpp"

namespace bbeta {

using AnyParams = std::variant<BivariateBetaParams, MultivariateBetaParams, CorrelatedDirichletParams>;

struct ParamsDocument {
  AnyParams params;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n;

  friend bool operator==(const ParamsDocument&, const ParamsDocument&) = default;
};

/// Throws InputError for malformed documents (the message names the key) and
/// DomainError for invalid shapes.
ParamsDocument parse_params_document(const std::string& text);
ParamsDocument read_params_document(const std::string& path);
std::string serialize_params_document(const ParamsDocument& doc);

/// %.17g
std::string format_double(double v);

// Tables: header row, comma separated, 17 significant digits.
void write_bivariate_table(std::ostream& out, const SampleBatch& batch);    // x,y
void write_dirichlet_table(std::ostream& out, const SampleBatch& batch);    // x1..xk,y1..yk
void write_multivariate_table(std::ostream& out, const RowBatch& batch);    // x1..xk

struct Table {
  std::vector<std::string> header;  // empty when the input has no header row
  std::vector<std::vector<double>> columns;
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Comma-separated numeric table with an optional header row. Throws
/// InputError naming the line on ragged rows or non-numeric fields.
Table read_table(std::istream& in);

}  // namespace bbeta
