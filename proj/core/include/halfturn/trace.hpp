#pragma once

#include <complex>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include "halfturn/poly.hpp"
#include "halfturn/word.hpp"

namespace halfturn {

  // F = 4 - x^2 - y^2 - z^2 - xyz, the value of tr(ABC)^2 for traceless
  // A, B, C with tr(AB) = x, tr(AC) = y, tr(BC) = z.
  Poly3 const& fricke_poly();

  // Element even + w * odd of Z[x,y,z][w] / (w^2 - F), with w = tr(ABC).
  struct TraceElement {
    Poly3 even;
    Poly3 odd;

    TraceElement() = default;
    TraceElement(Poly3 e, Poly3 o = Poly3{}) : even(std::move(e)), odd(std::move(o)) {}

    static TraceElement w() {
      return TraceElement(Poly3{}, Poly3(1));
    }

    bool is_zero() const noexcept {
      return even.is_zero() && odd.is_zero();
    }

    TraceElement& operator+=(TraceElement const& rhs);
    TraceElement& operator-=(TraceElement const& rhs);

    friend TraceElement operator+(TraceElement lhs, TraceElement const& rhs) {
      return lhs += rhs;
    }
    friend TraceElement operator-(TraceElement lhs, TraceElement const& rhs) {
      return lhs -= rhs;
    }
    friend TraceElement operator-(TraceElement const& t) {
      return TraceElement(-t.even, -t.odd);
    }
    // Reduces w^2 to F.
    friend TraceElement operator*(TraceElement const& lhs, TraceElement const& rhs);
    friend bool         operator==(TraceElement const&, TraceElement const&) = default;

    std::string to_string() const;
  };

  struct TracePoint {
    std::complex<double> x, y, z, w;
  };

  // even(x,y,z) + w * odd(x,y,z).  Throws InconsistentPoint when
  // |w^2 - F(x,y,z)| > 1e-6 * (1 + |F|).
  std::complex<double> eval_trace(TraceElement const& t, TracePoint const& p);

  // Memoizing trace calculator.  The cache is keyed by the cyclic canonical
  // form of the positive word and guarded by a shared mutex, so one engine
  // may be shared between threads.
  class TraceEngine {
   public:
    TraceElement trace_of(Word const& w);

    std::size_t cache_size() const;
    void        clear();

   private:
    TraceElement trace_positive(std::vector<Generator> letters);

    mutable std::shared_mutex                     _mutex;
    std::map<std::vector<Generator>, TraceElement> _cache;
  };

  // Trace of the SL(2,C) lift of w, using a process wide engine.
  TraceElement trace_of(Word const& w);

}  // namespace halfturn
