#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>

namespace halfturn {

  // Exact coefficients.  Every arithmetic operation is overflow checked and
  // throws OverflowError instead of wrapping.
  using Coeff = __int128;

  Coeff checked_add(Coeff a, Coeff b);
  Coeff checked_mul(Coeff a, Coeff b);
  std::string to_string(Coeff c);

  enum class Var : std::uint8_t { x = 0, y = 1, z = 2 };

  using Exponent = std::array<unsigned, 3>;

  // Graded order: total degree ascending, then lexicographically descending
  // on (i, j, k), so x precedes y precedes z within a degree.
  struct GradedLess {
    bool operator()(Exponent const& lhs, Exponent const& rhs) const noexcept {
      unsigned const dl = lhs[0] + lhs[1] + lhs[2];
      unsigned const dr = rhs[0] + rhs[1] + rhs[2];
      if (dl != dr) {
        return dl < dr;
      }
      return lhs > rhs;
    }
  };

  // Polynomial in Z[x, y, z]; x = tr(AB), y = tr(AC), z = tr(BC).
  class Poly3 {
   public:
    using Terms = std::map<Exponent, Coeff, GradedLess>;

    Poly3() = default;
    Poly3(Coeff constant);  // NOLINT(runtime/explicit)

    static Poly3 variable(Var v);
    static Poly3 monomial(Exponent e, Coeff c);

    Terms const& terms() const noexcept {
      return _terms;
    }
    bool is_zero() const noexcept {
      return _terms.empty();
    }
    Coeff coefficient(Exponent const& e) const;
    unsigned degree() const noexcept;
    bool uses(Var v) const noexcept;

    Poly3& operator+=(Poly3 const& rhs);
    Poly3& operator-=(Poly3 const& rhs);
    Poly3& operator*=(Poly3 const& rhs);

    friend Poly3 operator+(Poly3 lhs, Poly3 const& rhs) {
      return lhs += rhs;
    }
    friend Poly3 operator-(Poly3 lhs, Poly3 const& rhs) {
      return lhs -= rhs;
    }
    friend Poly3 operator*(Poly3 const& lhs, Poly3 const& rhs);
    friend Poly3 operator-(Poly3 const& p);
    friend bool operator==(Poly3 const&, Poly3 const&) = default;

    Poly3 derivative(Var v) const;

    // Replaces each variable v by variable target[v].
    Poly3 rename(std::array<Var, 3> const& target) const;
    // Substitutes an integer value for one variable.
    Poly3 substitute(Var v, Coeff value) const;

    std::complex<double> eval(std::complex<double> x,
                              std::complex<double> y,
                              std::complex<double> z) const;

    // Human readable form, e.g. "x^2*y - 2*z + 1".
    std::string to_string() const;

   private:
    void add_term(Exponent const& e, Coeff c);

    Terms _terms;
  };

  Poly3 pow(Poly3 const& p, unsigned n);

}  // namespace halfturn
