#include "halfturn/trace.hpp"

#include <cmath>
#include <mutex>

#include "halfturn/error.hpp"

namespace halfturn {

  Poly3 const& fricke_poly() {
    static Poly3 const f = [] {
      Poly3 const x = Poly3::variable(Var::x);
      Poly3 const y = Poly3::variable(Var::y);
      Poly3 const z = Poly3::variable(Var::z);
      return Poly3(4) - x * x - y * y - z * z - x * y * z;
    }();
    return f;
  }

  TraceElement& TraceElement::operator+=(TraceElement const& rhs) {
    even += rhs.even;
    odd += rhs.odd;
    return *this;
  }

  TraceElement& TraceElement::operator-=(TraceElement const& rhs) {
    even -= rhs.even;
    odd -= rhs.odd;
    return *this;
  }

  TraceElement operator*(TraceElement const& lhs, TraceElement const& rhs) {
    TraceElement out;
    out.even = lhs.even * rhs.even;
    if (!lhs.odd.is_zero() && !rhs.odd.is_zero()) {
      out.even += lhs.odd * rhs.odd * fricke_poly();
    }
    out.odd = lhs.even * rhs.odd + lhs.odd * rhs.even;
    return out;
  }

  std::string TraceElement::to_string() const {
    if (odd.is_zero()) {
      return even.to_string();
    }
    std::string const o = odd.to_string();
    std::string       out = o == "1" ? "w" : o == "-1" ? "-w" : "w*(" + o + ")";
    if (!even.is_zero()) {
      out = even.to_string() + " + " + out;
    }
    return out;
  }

  std::complex<double> eval_trace(TraceElement const& t, TracePoint const& p) {
    auto const f = fricke_poly().eval(p.x, p.y, p.z);
    if (std::abs(p.w * p.w - f) > 1e-6 * (1.0 + std::abs(f))) {
      throw InconsistentPoint("w^2 does not match 4 - x^2 - y^2 - z^2 - xyz at the given point");
    }
    return t.even.eval(p.x, p.y, p.z) + p.w * t.odd.eval(p.x, p.y, p.z);
  }

  namespace {
    Poly3 pair_trace(Generator g, Generator h) {
      auto const lo = std::min(g, h);
      auto const hi = std::max(g, h);
      if (lo == Generator::a) {
        return Poly3::variable(hi == Generator::b ? Var::x : Var::y);
      }
      return Poly3::variable(Var::z);
    }

    TraceElement signed_element(TraceElement t, int sign) {
      return sign < 0 ? -t : t;
    }
  }  // namespace

  TraceElement TraceEngine::trace_of(Word const& w) {
    auto const sw = normalize(w);
    std::vector<Generator> letters;
    letters.reserve(sw.word.size());
    for (auto const& l : sw.word.letters) {
      letters.push_back(l.generator);
    }
    return signed_element(trace_positive(std::move(letters)), sw.sign);
  }

  TraceElement TraceEngine::trace_positive(std::vector<Generator> letters) {
    Word raw;
    raw.letters.reserve(letters.size());
    for (auto g : letters) {
      raw.letters.push_back(Letter{g, false});
    }
    auto const canon = cyclic_canonical(normalize(raw));

    std::vector<Generator> key;
    key.reserve(canon.word.size());
    for (auto const& l : canon.word.letters) {
      key.push_back(l.generator);
    }

    {
      std::shared_lock lock(_mutex);
      auto             it = _cache.find(key);
      if (it != _cache.end()) {
        return signed_element(it->second, canon.sign);
      }
    }

    std::size_t const n = key.size();
    TraceElement      result;
    if (n == 0) {
      result = TraceElement(Poly3(2));
    } else if (n == 1) {
      result = TraceElement();
    } else if (n == 2) {
      result = TraceElement(pair_trace(key[0], key[1]));
    } else if (n == 3) {
      // cyclically reduced, so the three letters are distinct; the least
      // rotation starts with a, leaving abc or acb = -tr(ABC)
      result = key[1] == Generator::b ? TraceElement::w() : -TraceElement::w();
    } else {
      // Pivot: first generator that occurs twice, at its first two
      // occurrences i < j.  Rotate to X u X v and use
      //   tr(XuXv) = tr(Xu) tr(Xv) - tr(u^-1 v).
      std::size_t i = 0, j = 0;
      for (i = 0; i < n; ++i) {
        for (j = i + 1; j < n && key[j] != key[i]; ++j) {
        }
        if (j < n) {
          break;
        }
      }
      std::vector<Generator> xu(key.begin() + i, key.begin() + j);
      std::vector<Generator> xv;
      xv.push_back(key[j]);
      xv.insert(xv.end(), key.begin() + j + 1, key.end());
      xv.insert(xv.end(), key.begin(), key.begin() + i);

      // u^-1 = (-1)^|u| * reverse(u) for products of half-turn matrices
      std::vector<Generator> rest(key.rbegin() + (n - j), key.rbegin() + (n - i - 1));
      std::size_t const      u_len = rest.size();
      rest.insert(rest.end(), xv.begin() + 1, xv.end());

      auto tail = trace_positive(std::move(rest));
      if (u_len % 2 == 1) {
        tail = -tail;
      }
      result = trace_positive(std::move(xu)) * trace_positive(std::move(xv)) - tail;
    }

    {
      std::unique_lock lock(_mutex);
      _cache.emplace(std::move(key), result);
    }
    return signed_element(std::move(result), canon.sign);
  }

  std::size_t TraceEngine::cache_size() const {
    std::shared_lock lock(_mutex);
    return _cache.size();
  }

  void TraceEngine::clear() {
    std::unique_lock lock(_mutex);
    _cache.clear();
  }

  TraceElement trace_of(Word const& w) {
    static TraceEngine engine;
    return engine.trace_of(w);
  }

}  // namespace halfturn
