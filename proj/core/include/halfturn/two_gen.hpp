#pragma once

#include <complex>
#include <string>
#include <utility>

#include "halfturn/repr.hpp"

namespace halfturn {

  // Two-generator parameters (beta(f), beta(g), gamma(f, g)) =
  // (tr^2 f - 4, tr^2 g - 4, tr[f, g] - 2) for f = ac, g = cb.
  struct GMParams {
    std::complex<double> beta_f;
    std::complex<double> beta_g;
    std::complex<double> gamma;
  };

  // beta_f = rho1^2 - 4, beta_g = rho2^2 - 4,
  // gamma = rho0^2 + rho1^2 + rho2^2 + rho0 rho1 rho2 - 4.
  GMParams to_gm(Parameters const& params);

  // F = A C and G = C B.
  std::pair<Mat2, Mat2> two_generator_pair(Representation const& rep);

  // Commutator F G F^-1 G^-1.
  Mat2 commutator(Mat2 const& f, Mat2 const& g);

  enum class SubgroupIndex { index_1, index_2, unknown };

  struct IndexNote {
    SubgroupIndex index = SubgroupIndex::unknown;
    std::string   message;
  };

  // Whether <ab, ac> has index 1 or 2 depends on membership of a, which this
  // library cannot decide; always unknown.
  IndexNote index_note(Representation const& rep);
  // Same note without a representation, for degenerate parameters.
  IndexNote index_note();

}  // namespace halfturn
