#include <doctest.h>

#include <sstream>
#include <string>

#include "bbeta/errors.hpp"
#include "bbeta/kernels.hpp"
#include "bbeta/params_doc.hpp"

using namespace bbeta;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_params_document(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("bivariate document round trip") {
  const ParamsDocument doc{BivariateBetaParams(0.1, 1.0 / 3, 2.0 / 7, 1e-6, 9876.54321, 0.7),
                           std::uint64_t{18446744073709551615ull}, std::uint64_t{1000}};
  const auto text = serialize_params_document(doc);
  CHECK(parse_params_document(text) == doc);
  CHECK(serialize_params_document(parse_params_document(text)) == text);
}

TEST_CASE("multivariate document round trip") {
  std::vector<double> shapes(20);
  for (std::size_t i = 0; i < shapes.size(); ++i) shapes[i] = 0.1 + i / 3.0;
  const ParamsDocument doc{MultivariateBetaParams::from_flat(4, shapes), std::nullopt, 50};
  CHECK(parse_params_document(serialize_params_document(doc)) == doc);
}

TEST_CASE("dirichlet document round trip") {
  const ParamsDocument doc{CorrelatedDirichletParams({2.5, 0.5, 0.5}, {0.5, 0.5, 0.5}, {7.5, 1.5, 1.5}),
                           7, std::nullopt};
  CHECK(parse_params_document(serialize_params_document(doc)) == doc);
}

TEST_CASE("multivariate pairs are 1-based and order free") {
  const auto doc = parse_params_document(R"({"type": "multivariate", "k": 3,
    "own": [[1, 2], [3, 4], [5, 6]],
    "shared": [{"pair": [2, 3], "shapes": [9, 10]},
               {"pair": [3, 1], "shapes": [11, 12]},
               {"pair": [1, 2], "shapes": [7, 8]}]})");
  const auto& p = std::get<MultivariateBetaParams>(doc.params);
  CHECK(p == MultivariateBetaParams::trivariate({1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10}, {11, 12}));
  CHECK_FALSE(doc.seed.has_value());
}

TEST_CASE("malformed documents name the offending key") {
  CHECK(error_of(R"({"type": "bivariate", "alpha": [1, 1], "beta": [1, 1]})").find("'delta'") !=
        std::string::npos);
  CHECK(error_of(R"({"type": "bivariate", "alpha": [1], "beta": [1, 1], "delta": [1, 1]})")
            .find("'alpha'") != std::string::npos);
  CHECK(error_of(R"({"type": "bivariate", "alpha": [1, "x"], "beta": [1, 1], "delta": [1, 1]})")
            .find("'alpha'") != std::string::npos);
  CHECK(error_of(R"({"type": "trivariate"})").find("'type'") != std::string::npos);
  CHECK(error_of(R"({"alpha": [1, 1]})").find("'type'") != std::string::npos);
  CHECK(error_of(R"({"type": "dirichlet", "alpha": [1, 1], "beta": [1, 1], "delta": [1, 1],
                     "seed": -4})")
            .find("'seed'") != std::string::npos);
  CHECK(error_of(R"({"type": "multivariate", "k": 2, "own": [[1, 1], [1, 1]],
                     "shared": [{"pair": [0, 1], "shapes": [1, 1]}]})")
            .find("'pair'") != std::string::npos);
  CHECK(error_of(R"({"type": "multivariate", "k": 3, "own": [[1, 1], [1, 1], [1, 1]],
                     "shared": [{"pair": [1, 2], "shapes": [1, 1]},
                                {"pair": [2, 1], "shapes": [1, 1]},
                                {"pair": [1, 3], "shapes": [1, 1]}]})")
            .find("'pair'") != std::string::npos);
  CHECK(error_of("{not json").find("malformed") != std::string::npos);
  CHECK(error_of("[1, 2]").find("object") != std::string::npos);
}

TEST_CASE("invalid shapes are domain errors") {
  CHECK_THROWS_AS(
      parse_params_document(R"({"type": "bivariate", "alpha": [1, -1], "beta": [1, 1], "delta": [1, 1]})"),
      DomainError);
  CHECK_THROWS_AS(
      parse_params_document(R"({"type": "dirichlet", "alpha": [1, 1], "beta": [1, 1], "delta": [1, 0]})"),
      DomainError);
}

TEST_CASE("17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3)) == 1.0 / 3);
}

TEST_CASE("bivariate table round trip") {
  const auto batch = kernels::sample_bivariate<kernels::Serial>({2, 2, 2, 2, 2, 2}, 257, 3);
  std::stringstream ss;
  write_bivariate_table(ss, batch);
  const auto t = read_table(ss);
  CHECK(t.header == std::vector<std::string>{"x", "y"});
  REQUIRE(t.rows() == 257);
  CHECK(t.columns[0] == batch.xs);
  CHECK(t.columns[1] == batch.ys);
}

TEST_CASE("dirichlet and multivariate table layout") {
  const CorrelatedDirichletParams dp({2.5, 0.5, 0.5}, {0.5, 0.5, 0.5}, {7.5, 1.5, 1.5});
  std::stringstream ds;
  write_dirichlet_table(ds, kernels::sample_dirichlet<kernels::Serial>(dp, 10, 1));
  const auto dt = read_table(ds);
  CHECK(dt.header == std::vector<std::string>{"x1", "x2", "x3", "y1", "y2", "y3"});
  CHECK(dt.rows() == 10);

  const auto mp = MultivariateBetaParams::trivariate({1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1});
  std::stringstream ms;
  write_multivariate_table(ms, kernels::sample_multivariate<kernels::Serial>(mp, 10, 1));
  const auto mt = read_table(ms);
  CHECK(mt.header == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(mt.rows() == 10);
}

TEST_CASE("reading tables") {
  std::istringstream plain("0.1,0.2\n0.3,0.4\r\n\n0.5, 0.6\n");
  const auto t = read_table(plain);
  CHECK(t.header.empty());
  CHECK(t.rows() == 3);
  CHECK(t.columns[1] == std::vector<double>{0.2, 0.4, 0.6});

  std::istringstream ragged("x,y\n0.1,0.2\n0.3\n");
  try {
    read_table(ragged);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream text("x,y\n0.1,abc\n");
  CHECK_THROWS_AS(read_table(text), InputError);
  CHECK_THROWS_AS(read_params_document("/nonexistent/params.json"), InputError);
}
