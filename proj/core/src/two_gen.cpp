#include "halfturn/two_gen.hpp"

namespace halfturn {

  GMParams to_gm(Parameters const& params) {
    auto const [r0, r1, r2] = params.rho;
    return GMParams{r1 * r1 - 4.0, r2 * r2 - 4.0, r0 * r0 + r1 * r1 + r2 * r2 + r0 * r1 * r2 - 4.0};
  }

  std::pair<Mat2, Mat2> two_generator_pair(Representation const& rep) {
    return {rep.a * rep.c, rep.c * rep.b};
  }

  Mat2 commutator(Mat2 const& f, Mat2 const& g) {
    return f * g * f.inverse() * g.inverse();
  }

  IndexNote index_note() {
    return IndexNote{SubgroupIndex::unknown,
                     "the subgroup <ab, ac> has index 1 or 2 in <a, b, c> depending on whether "
                     "a lies in it; membership is not decided here"};
  }

  IndexNote index_note(Representation const&) {
    return index_note();
  }

}  // namespace halfturn
