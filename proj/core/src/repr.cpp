#include "halfturn/repr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "halfturn/error.hpp"

namespace halfturn {

  namespace {
    constexpr complex I{0.0, 1.0};

    constexpr double degenerate_tol = 1e-12;
    constexpr double line_tol       = 1e-9;
  }  // namespace

  Mat2 Mat2::inverse() const {
    complex const d = det();
    return Mat2{m22 / d, -m12 / d, -m21 / d, m11 / d};
  }

  double max_entry_distance(Mat2 const& lhs, Mat2 const& rhs) {
    return std::max({std::abs(lhs.m11 - rhs.m11),
                     std::abs(lhs.m12 - rhs.m12),
                     std::abs(lhs.m21 - rhs.m21),
                     std::abs(lhs.m22 - rhs.m22)});
  }

  complex normalize_distance(complex mu) {
    if (mu.real() < 0.0) {
      mu = -mu;
    }
    double im = std::fmod(mu.imag(), 2.0 * std::numbers::pi);
    if (im < 0.0) {
      im += 2.0 * std::numbers::pi;
    }
    if (im >= 2.0 * std::numbers::pi) {
      im = 0.0;
    }
    // on the imaginary axis mu and -mu are both normalized; keep [0, pi]
    if (mu.real() == 0.0 && im > std::numbers::pi) {
      im = 2.0 * std::numbers::pi - im;
    }
    return {mu.real(), im};
  }

  complex mu_from_rho(complex rho) {
    return normalize_distance(std::acosh(-rho / 2.0));
  }

  Parameters Parameters::from_rho(complex rho0, complex rho1, complex rho2) {
    Parameters p;
    p.rho = {rho0, rho1, rho2};
    return p;
  }

  Parameters Parameters::from_mu(complex mu0, complex mu1, complex mu2) {
    Parameters p;
    p.mu = std::array<complex, 3>{mu0, mu1, mu2};
    for (std::size_t k = 0; k < 3; ++k) {
      p.rho[k] = -2.0 * std::cosh((*p.mu)[k]);
    }
    return p;
  }

  Representation build_representation(Parameters const& params) {
    auto const [rho0, rho1, rho2] = params.rho;
    if (std::abs(rho0 * rho0 - 4.0) < degenerate_tol) {
      throw DegenerateAxes("degenerate axes: rho0^2 = 4, the axes of a and b are not separated");
    }
    complex beta = std::sqrt((-rho0 + std::sqrt(rho0 * rho0 - 4.0)) / 2.0);
    if (std::abs(beta) < 1.0) {
      beta = 1.0 / beta;
    }
    complex const beta2 = beta * beta;
    complex const denom = I / beta2 - I * beta2;

    Representation rep;
    rep.params = params;
    rep.beta   = beta;
    rep.c21    = (rho1 / beta - rho2 * beta) / denom;
    rep.c12    = (-rho1 * beta + rho2 / beta) / denom;
    rep.c11    = I * std::sqrt(rep.c12 * rep.c21 + 1.0);

    rep.a = Mat2{0.0, I / beta, I * beta, 0.0};
    rep.b = Mat2{0.0, I * beta, I / beta, 0.0};
    rep.c = Mat2{rep.c11, rep.c12, rep.c21, -rep.c11};
    return rep;
  }

  Mat2 eval_word_matrix(Representation const& rep, Word const& w) {
    Mat2 out = Mat2::identity();
    for (auto const& l : w.letters) {
      Mat2 const* g = nullptr;
      switch (l.generator) {
        case Generator::a: g = &rep.a; break;
        case Generator::b: g = &rep.b; break;
        case Generator::c: g = &rep.c; break;
      }
      out = out * (l.inverted ? g->inverse() : *g);
    }
    return out;
  }

  namespace {
    void require_line_matrix(Mat2 const& m) {
      if (std::abs(m.trace()) > line_tol || std::abs(m.det() - 1.0) > line_tol) {
        throw NotLineMatrix("complex distance needs traceless matrices of determinant one");
      }
    }
  }  // namespace

  complex complex_distance(Mat2 const& m1, Mat2 const& m2) {
    require_line_matrix(m1);
    require_line_matrix(m2);
    return normalize_distance(std::acosh(-(m1 * m2).trace() / 2.0));
  }

  RelatorReport verify_relators(Representation const& rep,
                                std::vector<Word> const& relators,
                                double tol) {
    RelatorReport report;
    report.tolerance = tol;
    Mat2 const id    = Mat2::identity();
    for (auto const& r : relators) {
      Mat2 const      e = eval_word_matrix(rep, r);
      double const    plus  = max_entry_distance(e, id);
      double const    minus = max_entry_distance(e, -id);
      RelatorResidual res;
      res.relator        = r;
      res.minus_identity = minus < plus;
      res.residual       = std::min(plus, minus);
      res.passed         = res.residual <= tol;
      report.passed      = report.passed && res.passed;
      report.residuals.push_back(std::move(res));
    }
    return report;
  }

}  // namespace halfturn
