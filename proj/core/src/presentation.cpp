#include "halfturn/presentation.hpp"

#include <algorithm>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "halfturn/error.hpp"

namespace halfturn {

  namespace {
    std::int64_t add(std::int64_t a, std::int64_t b) {
      std::int64_t r;
      if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("integer overflow in Smith normal form");
      }
      return r;
    }

    std::int64_t mul(std::int64_t a, std::int64_t b) {
      std::int64_t r;
      if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("integer overflow in Smith normal form");
      }
      return r;
    }

    class RelatorParser {
     public:
      RelatorParser(std::string_view text, std::vector<std::string> const& generators)
          : _text(text), _generators(generators) {}

      Relator parse() {
        Relator r = sequence();
        skip_spaces();
        if (_pos < _text.size()) {
          throw ParseError(std::string("unexpected '") + _text[_pos] + "' in relator", _pos + 1);
        }
        return r;
      }

     private:
      void skip_spaces() {
        while (_pos < _text.size() && _text[_pos] == ' ') {
          ++_pos;
        }
      }

      Relator sequence() {
        Relator out;
        while (true) {
          skip_spaces();
          if (_pos >= _text.size() || _text[_pos] == ')') {
            return out;
          }
          Relator item;
          if (_text[_pos] == '(') {
            ++_pos;
            item = sequence();
            skip_spaces();
            if (_pos >= _text.size() || _text[_pos] != ')') {
              throw ParseError("missing ')' in relator", _pos + 1);
            }
            ++_pos;
          } else {
            item.push_back({symbol(), 1});
          }
          std::int64_t exponent = 1;
          if (_pos < _text.size() && _text[_pos] == '\'') {
            exponent = -1;
            ++_pos;
          }
          if (_pos < _text.size() && _text[_pos] == '^') {
            ++_pos;
            exponent = mul(exponent, integer());
          }
          if (exponent < 0) {
            std::reverse(item.begin(), item.end());
            for (auto& s : item) {
              s.exponent = -s.exponent;
            }
            exponent = -exponent;
          }
          for (std::int64_t k = 0; k < exponent; ++k) {
            out.insert(out.end(), item.begin(), item.end());
          }
        }
      }

      std::size_t symbol() {
        std::size_t best = _generators.size();
        std::size_t len  = 0;
        for (std::size_t g = 0; g < _generators.size(); ++g) {
          auto const& name = _generators[g];
          if (name.size() > len && _text.substr(_pos, name.size()) == name) {
            best = g;
            len  = name.size();
          }
        }
        if (best == _generators.size()) {
          throw ParseError(std::string("unknown generator at '") + _text[_pos] + "'", _pos + 1);
        }
        _pos += len;
        return best;
      }

      std::int64_t integer() {
        bool negative = false;
        if (_pos < _text.size() && _text[_pos] == '-') {
          negative = true;
          ++_pos;
        }
        std::size_t const start = _pos;
        std::int64_t      value = 0;
        while (_pos < _text.size() && _text[_pos] >= '0' && _text[_pos] <= '9') {
          value = add(mul(value, 10), _text[_pos] - '0');
          ++_pos;
        }
        if (_pos == start) {
          throw ParseError("expected an exponent after '^'", _pos + 1);
        }
        return negative ? -value : value;
      }

      std::string_view                _text;
      std::vector<std::string> const& _generators;
      std::size_t                     _pos = 0;
    };
  }  // namespace

  Relator parse_relator(std::string_view text, std::vector<std::string> const& generators) {
    return RelatorParser(text, generators).parse();
  }

  Presentation presentation_from_json(nlohmann::json const& j) {
    Presentation p;
    try {
      p.generator_names = j.at("generators").get<std::vector<std::string>>();
      for (auto const& name : p.generator_names) {
        if (name.empty()) {
          throw ParseError("generator names must be non-empty");
        }
      }
      for (auto const& r : j.value("relators", nlohmann::json::array())) {
        p.relators.push_back(parse_relator(r.get<std::string>(), p.generator_names));
      }
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(std::string("malformed presentation: ") + e.what());
    }
    return p;
  }

  std::string AbelianInvariants::to_string() const {
    std::string out;
    if (free_rank > 0) {
      out = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
    }
    for (auto d : torsion) {
      out += (out.empty() ? "" : " + ") + std::string("Z_") + std::to_string(d);
    }
    return out.empty() ? "0" : out;
  }

  std::vector<std::vector<std::int64_t>> relation_matrix(Presentation const& p) {
    std::vector<std::vector<std::int64_t>> m;
    for (auto const& r : p.relators) {
      std::vector<std::int64_t> row(p.generator_names.size(), 0);
      for (auto const& s : r) {
        row[s.generator] = add(row[s.generator], s.exponent);
      }
      m.push_back(std::move(row));
    }
    return m;
  }

  std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> a, std::size_t cols) {
    std::size_t const rows = a.size();
    std::vector<std::int64_t> diag;
    auto abs64 = [](std::int64_t v) { return v < 0 ? -v : v; };

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
      while (true) {
        // pivot: smallest nonzero absolute value in the trailing block
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i) {
          for (std::size_t j = t; j < cols; ++j) {
            if (a[i][j] != 0 && (pr == rows || abs64(a[i][j]) < abs64(a[pr][pc]))) {
              pr = i;
              pc = j;
            }
          }
        }
        if (pr == rows) {
          return diag;
        }
        std::swap(a[t], a[pr]);
        for (auto& row : a) {
          std::swap(row[t], row[pc]);
        }

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
          std::int64_t const q = a[i][t] / a[t][t];
          if (q != 0) {
            for (std::size_t j = t; j < cols; ++j) {
              a[i][j] = add(a[i][j], -mul(q, a[t][j]));
            }
          }
          clean = clean && a[i][t] == 0;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          std::int64_t const q = a[t][j] / a[t][t];
          if (q != 0) {
            for (std::size_t i = t; i < rows; ++i) {
              a[i][j] = add(a[i][j], -mul(q, a[i][t]));
            }
          }
          clean = clean && a[t][j] == 0;
        }
        if (!clean) {
          continue;
        }
        // divisibility: fold an offending row into row t and retry
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i) {
          for (std::size_t j = t + 1; j < cols; ++j) {
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) {
                a[t][k] = add(a[t][k], a[i][k]);
              }
              divides = false;
              break;
            }
          }
        }
        if (divides) {
          break;
        }
      }
      diag.push_back(abs64(a[t][t]));
    }
    return diag;
  }

  AbelianInvariants abelianize(Presentation const& p) {
    std::size_t const n    = p.generator_names.size();
    auto const        diag = smith_diagonal(relation_matrix(p), n);
    AbelianInvariants out;
    out.free_rank = n - diag.size();
    for (auto d : diag) {
      if (d > 1) {
        out.torsion.push_back(d);
      }
    }
    return out;
  }

  bool rank_lower_bound_check(Presentation const& p, std::size_t claimed_rank) {
    auto const inv = abelianize(p);
    return inv.free_rank + inv.torsion.size() <= claimed_rank;
  }

}  // namespace halfturn
