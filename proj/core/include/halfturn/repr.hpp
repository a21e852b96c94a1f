#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "halfturn/word.hpp"

namespace halfturn {

  using complex = std::complex<double>;

  // 2x2 complex matrix, row major.
  struct Mat2 {
    complex m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};

    static Mat2 identity() {
      return Mat2{};
    }

    complex trace() const {
      return m11 + m22;
    }
    complex det() const {
      return m11 * m22 - m12 * m21;
    }
    // Inverse of a matrix with determinant one.
    Mat2 sl2_inverse() const {
      return Mat2{m22, -m12, -m21, m11};
    }
    Mat2 inverse() const;

    // Moebius action z -> (m11 z + m12) / (m21 z + m22).
    complex apply(complex z) const {
      return (m11 * z + m12) / (m21 * z + m22);
    }

    friend Mat2 operator*(Mat2 const& l, Mat2 const& r) {
      return Mat2{l.m11 * r.m11 + l.m12 * r.m21,
                  l.m11 * r.m12 + l.m12 * r.m22,
                  l.m21 * r.m11 + l.m22 * r.m21,
                  l.m21 * r.m12 + l.m22 * r.m22};
    }
    friend Mat2 operator-(Mat2 const& m) {
      return Mat2{-m.m11, -m.m12, -m.m21, -m.m22};
    }
  };

  // Largest absolute entry of lhs - rhs.
  double max_entry_distance(Mat2 const& lhs, Mat2 const& rhs);

  // rho_k = -2 cosh(mu_k) for the pairs (a,b), (a,c), (c,b).
  struct Parameters {
    std::array<complex, 3>                rho{};
    std::optional<std::array<complex, 3>> mu;

    static Parameters from_rho(complex rho0, complex rho1, complex rho2);
    // Fills both rho and mu.
    static Parameters from_mu(complex mu0, complex mu1, complex mu2);
  };

  // Complex distance with cosh(mu) = -rho / 2, normalized to Re mu >= 0 and
  // Im mu in [0, 2 pi), or [0, pi] when Re mu = 0.
  complex mu_from_rho(complex rho);
  complex normalize_distance(complex mu);

  struct Representation {
    Mat2       a, b, c;
    complex    beta, c11, c12, c21;
    Parameters params;
  };

  // Builds A, B, C in the normalized frame fix(A) = {+-1/beta},
  // fix(B) = {+-beta}, |beta| >= 1.  Principal square roots throughout.
  // Throws DegenerateAxes when |rho0^2 - 4| < 1e-12.
  Representation build_representation(Parameters const& params);

  // Product of generator matrices; inverse letters use the matrix inverse.
  Mat2 eval_word_matrix(Representation const& rep, Word const& w);

  // Complex distance between the axes of two line matrices, computed from
  // cosh(mu) = -tr(M1 M2) / 2.  Throws NotLineMatrix unless both inputs are
  // traceless with unit determinant (1e-9).
  complex complex_distance(Mat2 const& m1, Mat2 const& m2);

  struct RelatorResidual {
    Word   relator;
    double residual     = 0.0;  // min(|E - I|, |E + I|), max-entry norm
    bool   minus_identity = false;
    bool   passed       = false;
  };

  struct RelatorReport {
    std::vector<RelatorResidual> residuals;
    double                       tolerance = 0.0;
    bool                         passed    = true;
  };

  // Relators are checked in PSL(2,C): E = +I and E = -I both pass.
  RelatorReport verify_relators(Representation const& rep,
                                std::vector<Word> const& relators,
                                double tol);

}  // namespace halfturn
