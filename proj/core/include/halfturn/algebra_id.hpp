#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace halfturn {

  struct IdConfig {
    unsigned max_degree = 8;
    unsigned max_height = 12;
    double   accept_tol = 1e-6;
  };

  struct MinPolyResult {
    // Low to high; leading coefficient positive, content one.
    std::vector<std::int64_t> coefficients;
    double                    witness_error = 0.0;  // |p(value)|
    unsigned                  degree        = 0;
    unsigned                  height        = 0;

    std::string to_string() const;  // e.g. "t^3 - t + 1"
  };

  // Exhaustive search in the order degree, height, then coefficient list
  // (low to high, lexicographic).  Polynomials with a rational root (degree
  // >= 2) or non-unit content are skipped.  Returns nullopt when nothing
  // within the bounds vanishes at value to accept_tol.
  std::optional<MinPolyResult> identify(std::complex<double> value, IdConfig const& config = {});

  // identify(value^2).
  std::optional<MinPolyResult> identify_squared(std::complex<double> value, IdConfig const& config = {});

  // Helpers shared with the tests.
  std::complex<double> eval_integer_poly(std::vector<std::int64_t> const& coefficients,
                                         std::complex<double>             t);
  bool has_rational_root(std::vector<std::int64_t> const& coefficients);
  std::int64_t content(std::vector<std::int64_t> const& coefficients);

}  // namespace halfturn
