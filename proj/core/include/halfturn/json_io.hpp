#pragma once

#include <complex>

#include <nlohmann/json.hpp>

#include "halfturn/poly.hpp"
#include "halfturn/repr.hpp"
#include "halfturn/trace.hpp"

namespace halfturn {

  // Complex numbers are always encoded as [re, im].
  nlohmann::json to_json(std::complex<double> z);
  std::complex<double> complex_from_json(nlohmann::json const& j);

  // [[i, j, k, c], ...] in graded order.  Throws OverflowError when a
  // coefficient does not fit a 64-bit integer.
  nlohmann::json to_json(Poly3 const& p);
  Poly3          poly_from_json(nlohmann::json const& j);

  // {"even": [...], "odd": [...]}
  nlohmann::json to_json(TraceElement const& t);

  nlohmann::json to_json(Mat2 const& m);
  nlohmann::json to_json(Representation const& rep);
  nlohmann::json to_json(RelatorReport const& report);

  // Accepts {"rho": [z0, z1, z2]} or {"mu": [z0, z1, z2]}, each z a number
  // or [re, im].
  Parameters parameters_from_json(nlohmann::json const& j);
  nlohmann::json to_json(Parameters const& p);

}  // namespace halfturn
