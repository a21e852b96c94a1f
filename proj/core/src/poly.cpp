#include "halfturn/poly.hpp"

#include <algorithm>

#include "halfturn/error.hpp"

namespace halfturn {

  Coeff checked_add(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_add_overflow(a, b, &r)) {
      throw OverflowError("coefficient overflow in addition");
    }
    return r;
  }

  Coeff checked_mul(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_mul_overflow(a, b, &r)) {
      throw OverflowError("coefficient overflow in multiplication");
    }
    return r;
  }

  std::string to_string(Coeff c) {
    if (c == 0) {
      return "0";
    }
    bool const negative = c < 0;
    // magnitude as unsigned so that the minimum value is representable
    unsigned __int128 m = negative ? -static_cast<unsigned __int128>(c)
                                   : static_cast<unsigned __int128>(c);
    std::string digits;
    while (m != 0) {
      digits += static_cast<char>('0' + static_cast<int>(m % 10));
      m /= 10;
    }
    if (negative) {
      digits += '-';
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
  }

  Poly3::Poly3(Coeff constant) {
    add_term({0, 0, 0}, constant);
  }

  Poly3 Poly3::variable(Var v) {
    Exponent e{0, 0, 0};
    e[static_cast<std::size_t>(v)] = 1;
    return monomial(e, 1);
  }

  Poly3 Poly3::monomial(Exponent e, Coeff c) {
    Poly3 p;
    p.add_term(e, c);
    return p;
  }

  void Poly3::add_term(Exponent const& e, Coeff c) {
    if (c == 0) {
      return;
    }
    auto [it, inserted] = _terms.try_emplace(e, c);
    if (!inserted) {
      it->second = checked_add(it->second, c);
      if (it->second == 0) {
        _terms.erase(it);
      }
    }
  }

  Coeff Poly3::coefficient(Exponent const& e) const {
    auto it = _terms.find(e);
    return it == _terms.end() ? Coeff{0} : it->second;
  }

  unsigned Poly3::degree() const noexcept {
    // the map is ordered by total degree
    if (_terms.empty()) {
      return 0;
    }
    auto const& e = _terms.rbegin()->first;
    return e[0] + e[1] + e[2];
  }

  bool Poly3::uses(Var v) const noexcept {
    auto const i = static_cast<std::size_t>(v);
    return std::any_of(_terms.begin(), _terms.end(), [i](auto const& t) {
      return t.first[i] != 0;
    });
  }

  Poly3& Poly3::operator+=(Poly3 const& rhs) {
    for (auto const& [e, c] : rhs._terms) {
      add_term(e, c);
    }
    return *this;
  }

  Poly3& Poly3::operator-=(Poly3 const& rhs) {
    for (auto const& [e, c] : rhs._terms) {
      add_term(e, checked_mul(c, -1));
    }
    return *this;
  }

  Poly3& Poly3::operator*=(Poly3 const& rhs) {
    *this = *this * rhs;
    return *this;
  }

  Poly3 operator*(Poly3 const& lhs, Poly3 const& rhs) {
    Poly3 out;
    for (auto const& [el, cl] : lhs._terms) {
      for (auto const& [er, cr] : rhs._terms) {
        out.add_term({el[0] + er[0], el[1] + er[1], el[2] + er[2]}, checked_mul(cl, cr));
      }
    }
    return out;
  }

  Poly3 operator-(Poly3 const& p) {
    Poly3 out;
    for (auto const& [e, c] : p._terms) {
      out.add_term(e, checked_mul(c, -1));
    }
    return out;
  }

  Poly3 Poly3::derivative(Var v) const {
    auto const i = static_cast<std::size_t>(v);
    Poly3      out;
    for (auto const& [e, c] : _terms) {
      if (e[i] == 0) {
        continue;
      }
      Exponent d = e;
      --d[i];
      out.add_term(d, checked_mul(c, static_cast<Coeff>(e[i])));
    }
    return out;
  }

  Poly3 Poly3::rename(std::array<Var, 3> const& target) const {
    Poly3 out;
    for (auto const& [e, c] : _terms) {
      Exponent r{0, 0, 0};
      for (std::size_t i = 0; i < 3; ++i) {
        r[static_cast<std::size_t>(target[i])] += e[i];
      }
      out.add_term(r, c);
    }
    return out;
  }

  Poly3 Poly3::substitute(Var v, Coeff value) const {
    auto const i = static_cast<std::size_t>(v);
    Poly3      out;
    for (auto const& [e, c] : _terms) {
      Coeff factor = 1;
      for (unsigned k = 0; k < e[i]; ++k) {
        factor = checked_mul(factor, value);
      }
      Exponent r = e;
      r[i]       = 0;
      out.add_term(r, checked_mul(c, factor));
    }
    return out;
  }

  std::complex<double> Poly3::eval(std::complex<double> x,
                                   std::complex<double> y,
                                   std::complex<double> z) const {
    std::array<std::complex<double>, 3> const point{x, y, z};
    std::complex<double>                      sum = 0.0;
    for (auto const& [e, c] : _terms) {
      std::complex<double> term = static_cast<double>(c);
      for (std::size_t i = 0; i < 3; ++i) {
        for (unsigned k = 0; k < e[i]; ++k) {
          term *= point[i];
        }
      }
      sum += term;
    }
    return sum;
  }

  std::string Poly3::to_string() const {
    if (_terms.empty()) {
      return "0";
    }
    static constexpr char names[] = {'x', 'y', 'z'};
    std::string           out;
    // highest degree first reads more naturally
    for (auto it = _terms.rbegin(); it != _terms.rend(); ++it) {
      auto const& [e, c] = *it;
      bool const  first  = out.empty();
      Coeff       mag    = c < 0 ? -c : c;
      if (first) {
        out += c < 0 ? "-" : "";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      bool const constant = e[0] + e[1] + e[2] == 0;
      std::string mono;
      for (std::size_t i = 0; i < 3; ++i) {
        if (e[i] == 0) {
          continue;
        }
        if (!mono.empty()) {
          mono += '*';
        }
        mono += names[i];
        if (e[i] > 1) {
          mono += '^' + std::to_string(e[i]);
        }
      }
      if (constant) {
        out += halfturn::to_string(mag);
      } else if (mag == 1) {
        out += mono;
      } else {
        out += halfturn::to_string(mag) + '*' + mono;
      }
    }
    return out;
  }

  Poly3 pow(Poly3 const& p, unsigned n) {
    Poly3 out = 1;
    for (unsigned i = 0; i < n; ++i) {
      out *= p;
    }
    return out;
  }

}  // namespace halfturn
