#include "halfturn/algebra_id.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace halfturn {

  std::complex<double> eval_integer_poly(std::vector<std::int64_t> const& coefficients,
                                         std::complex<double>             t) {
    std::complex<double> acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
      acc = acc * t + static_cast<double>(*it);
    }
    return acc;
  }

  std::int64_t content(std::vector<std::int64_t> const& coefficients) {
    std::int64_t g = 0;
    for (auto c : coefficients) {
      g = std::gcd(g, c < 0 ? -c : c);
    }
    return g;
  }

  namespace {
    std::vector<std::int64_t> divisors(std::int64_t n) {
      n = n < 0 ? -n : n;
      std::vector<std::int64_t> out;
      for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d == 0) {
          out.push_back(d);
        }
      }
      return out;
    }

    // p(num / den) * den^deg, exactly.
    __int128 scaled_value(std::vector<std::int64_t> const& c, std::int64_t num, std::int64_t den) {
      __int128 acc = 0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        __int128 term = c[i];
        for (std::size_t k = 0; k < i; ++k) {
          term *= num;
        }
        for (std::size_t k = i; k + 1 < c.size(); ++k) {
          term *= den;
        }
        acc += term;
      }
      return acc;
    }
  }  // namespace

  bool has_rational_root(std::vector<std::int64_t> const& c) {
    if (c.size() < 2) {
      return false;
    }
    if (c.front() == 0) {
      return true;
    }
    for (auto p : divisors(c.front())) {
      for (auto q : divisors(c.back())) {
        if (std::gcd(p, q) != 1) {
          continue;
        }
        if (scaled_value(c, p, q) == 0 || scaled_value(c, -p, q) == 0) {
          return true;
        }
      }
    }
    return false;
  }

  std::string MinPolyResult::to_string() const {
    std::string out;
    for (std::size_t i = coefficients.size(); i-- > 0;) {
      std::int64_t const c = coefficients[i];
      if (c == 0) {
        continue;
      }
      std::int64_t const mag = c < 0 ? -c : c;
      if (out.empty()) {
        out += c < 0 ? "-" : "";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      if (i == 0 || mag != 1) {
        out += std::to_string(mag);
      }
      if (i > 0) {
        out += "t";
        if (i > 1) {
          out += "^" + std::to_string(i);
        }
      }
    }
    return out.empty() ? "0" : out;
  }

  namespace {
    struct HalfSum {
      double        re, im;
      std::uint64_t index;
    };

    // Coefficient vector for a mixed-radix index; digit k ranges over
    // [lo_k, lo_k + radix_k).
    void decode(std::uint64_t index,
                std::vector<std::int64_t> const& lo,
                std::vector<std::uint64_t> const& radix,
                std::int64_t* out) {
      for (std::size_t k = 0; k < radix.size(); ++k) {
        out[k] = lo[k] + static_cast<std::int64_t>(index % radix[k]);
        index /= radix[k];
      }
    }

    std::uint64_t product(std::vector<std::uint64_t> const& radix) {
      return std::accumulate(radix.begin(), radix.end(), std::uint64_t{1}, std::multiplies<>());
    }

    bool search_order_less(std::vector<std::int64_t> const& a, std::vector<std::int64_t> const& b) {
      auto height = [](std::vector<std::int64_t> const& v) {
        std::int64_t h = 0;
        for (auto c : v) {
          h = std::max(h, c < 0 ? -c : c);
        }
        return h;
      };
      auto const ha = height(a);
      auto const hb = height(b);
      if (ha != hb) {
        return ha < hb;
      }
      return a < b;
    }

    std::optional<std::vector<std::int64_t>> search_degree(std::complex<double> v,
                                                           unsigned             d,
                                                           std::int64_t         h,
                                                           double               tol) {
      std::size_t const m = (d + 1) / 2;  // coefficients 0..m-1 go low
      std::vector<std::complex<double>> powers(d + 1);
      powers[0] = 1.0;
      for (unsigned i = 1; i <= d; ++i) {
        powers[i] = powers[i - 1] * v;
      }

      std::vector<std::int64_t>  lo_low(m, -h);
      std::vector<std::uint64_t> radix_low(m, static_cast<std::uint64_t>(2 * h + 1));
      std::size_t const          n_high = d + 1 - m;
      std::vector<std::int64_t>  lo_high(n_high, -h);
      std::vector<std::uint64_t> radix_high(n_high, static_cast<std::uint64_t>(2 * h + 1));
      // leading coefficient in [1, h]
      lo_high.back()    = 1;
      radix_high.back() = static_cast<std::uint64_t>(h);

      std::uint64_t const  count_low = product(radix_low);
      std::vector<HalfSum> low;
      low.reserve(count_low);
      std::vector<std::int64_t> coeffs(d + 1);
      for (std::uint64_t idx = 0; idx < count_low; ++idx) {
        decode(idx, lo_low, radix_low, coeffs.data());
        std::complex<double> s = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          s += static_cast<double>(coeffs[k]) * powers[k];
        }
        low.push_back({s.real(), s.imag(), idx});
      }
      std::sort(low.begin(), low.end(), [](HalfSum const& a, HalfSum const& b) {
        return a.re < b.re;
      });

      std::optional<std::vector<std::int64_t>> best;
      std::uint64_t const                      count_high = product(radix_high);
      for (std::uint64_t idx = 0; idx < count_high; ++idx) {
        decode(idx, lo_high, radix_high, coeffs.data() + m);
        std::complex<double> s = 0.0;
        for (std::size_t k = m; k <= d; ++k) {
          s += static_cast<double>(coeffs[k]) * powers[k];
        }
        double const target = -s.real();
        auto it = std::lower_bound(low.begin(), low.end(), target - tol, [](HalfSum const& a, double x) {
          return a.re < x;
        });
        for (; it != low.end() && it->re <= target + tol; ++it) {
          if (std::hypot(it->re + s.real(), it->im + s.imag()) > tol) {
            continue;
          }
          decode(it->index, lo_low, radix_low, coeffs.data());
          if (content(coeffs) != 1 || (d >= 2 && has_rational_root(coeffs))) {
            continue;
          }
          if (std::abs(eval_integer_poly(coeffs, v)) > tol) {
            continue;
          }
          if (!best || search_order_less(coeffs, *best)) {
            best = coeffs;
          }
        }
      }
      return best;
    }
  }  // namespace

  std::optional<MinPolyResult> identify(std::complex<double> value, IdConfig const& config) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw std::invalid_argument("identify needs a finite value");
    }
    if (config.max_degree == 0 || config.max_height == 0 || !(config.accept_tol > 0.0)) {
      throw std::invalid_argument("identify needs positive bounds");
    }
    for (unsigned d = 1; d <= config.max_degree; ++d) {
      auto found = search_degree(value, d, static_cast<std::int64_t>(config.max_height), config.accept_tol);
      if (!found) {
        continue;
      }
      MinPolyResult r;
      r.coefficients  = std::move(*found);
      r.degree        = d;
      r.witness_error = std::abs(eval_integer_poly(r.coefficients, value));
      for (auto c : r.coefficients) {
        r.height = std::max<unsigned>(r.height, static_cast<unsigned>(c < 0 ? -c : c));
      }
      return r;
    }
    return std::nullopt;
  }

  std::optional<MinPolyResult> identify_squared(std::complex<double> value, IdConfig const& config) {
    return identify(value * value, config);
  }

}  // namespace halfturn
