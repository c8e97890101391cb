#pragma once

// Generated by tests/oracles/covariance_reference.py (50-digit arithmetic,
// two independent series routes for E(X'Y')).

#include <array>

namespace bbeta::testing {

struct CovarianceReference {
  double alpha1, alpha2, beta1, beta2, delta1, delta2;
  long double covariance;
  long double correlation;
};

inline constexpr std::array<CovarianceReference, 9> kCovarianceReference = {{
    {1.0, 1.0, 1.0, 1.0, 3.0, 3.0, 0.02028404569766730995875L, 0.7302256451160231585151L},
    {4.0, 4.0, 4.0, 4.0, 4.0, 4.0, 0.007148358913044212694587L, 0.4860884060870064632319L},
    {2.0, 6.0, 2.0, 6.0, 6.0, 2.0, 0.007196499402181073772219L, 0.4893619593483130165109L},
    {2.5, 1.0, 0.5, 1.0, 7.5, 3.0, 0.01167945175375408924727L, 0.7658506046581419640535L},
    {0.5, 2.0, 0.5, 2.0, 1.5, 9.5, 0.00654357430281363540455L, 0.7518353496509949243891L},
    {2.0, 5.0, 7.0, 3.0, 1e-06, 1e-06, 4.799350279311508593524e-9L, 2.174764454175021006305e-7L},
    {0.2, 0.3, 0.25, 0.2, 0.1, 0.15, 0.03611579051548139474175L, 0.2543109060304091035959L},
    {13.5, 0.7, 2.2, 19.0, 0.4, 6.1, 0.0008210796046131870799762L, 0.1495962831085419237542L},
    {0.9, 17.0, 5.5, 0.35, 11.0, 0.25, 0.0006160761248316286295153L, 0.1591352409733444071304L},
}};

}  // namespace bbeta::testing
