#include "halfturn/word.hpp"

#include <algorithm>
#include <array>

#include "halfturn/error.hpp"

namespace halfturn {

  char to_char(Generator g) noexcept {
    return static_cast<char>('a' + static_cast<int>(g));
  }

  Word parse_word(std::string_view text) {
    Word result;
    for (std::size_t i = 0; i < text.size(); ++i) {
      char const ch = text[i];
      if (ch == ' ') {
        continue;
      }
      if (ch < 'a' || ch > 'c') {
        throw ParseError(std::string("unexpected character '") + ch + "' in word", i + 1);
      }
      Letter letter{static_cast<Generator>(ch - 'a'), false};
      if (i + 1 < text.size() && text[i + 1] == '\'') {
        letter.inverted = true;
        ++i;
      }
      result.letters.push_back(letter);
    }
    return result;
  }

  std::string to_string(Word const& w) {
    std::string out;
    out.reserve(2 * w.size());
    for (auto const& l : w.letters) {
      out += to_char(l.generator);
      if (l.inverted) {
        out += '\'';
      }
    }
    return out;
  }

  std::string to_string(SignedWord const& sw) {
    return (sw.sign < 0 ? "-" : "+") + to_string(sw.word);
  }

  Word concat(Word const& lhs, Word const& rhs) {
    Word out = lhs;
    out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
    return out;
  }

  Word power(Word const& w, unsigned exponent) {
    Word out;
    out.letters.reserve(w.size() * exponent);
    for (unsigned i = 0; i < exponent; ++i) {
      out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
    }
    return out;
  }

  SignedWord normalize(Word const& w) {
    SignedWord out;
    auto&      stack = out.word.letters;
    stack.reserve(w.size());
    for (auto const& l : w.letters) {
      if (l.inverted) {
        out.sign = -out.sign;
      }
      if (!stack.empty() && stack.back().generator == l.generator) {
        stack.pop_back();
        out.sign = -out.sign;
      } else {
        stack.push_back(Letter{l.generator, false});
      }
    }
    return out;
  }

  Word invert(Word const& w) {
    Word out;
    out.letters.reserve(w.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
      out.letters.push_back(Letter{it->generator, !it->inverted});
    }
    return out;
  }

  namespace {
    // Booth's algorithm would be overkill here; words are short.
    std::size_t least_rotation(std::vector<Letter> const& v) {
      std::size_t const n    = v.size();
      std::size_t       best = 0;
      for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
          auto const lhs = v[(r + k) % n].generator;
          auto const rhs = v[(best + k) % n].generator;
          if (lhs != rhs) {
            if (lhs < rhs) {
              best = r;
            }
            break;
          }
        }
      }
      return best;
    }
  }  // namespace

  SignedWord cyclic_canonical(SignedWord const& sw) {
    SignedWord  out   = sw;
    auto&       v     = out.word.letters;
    std::size_t first = 0;
    std::size_t last  = v.size();
    while (last - first >= 2 && v[first].generator == v[last - 1].generator) {
      ++first;
      --last;
      out.sign = -out.sign;
    }
    std::vector<Letter> core(v.begin() + first, v.begin() + last);
    if (!core.empty()) {
      std::rotate(core.begin(), core.begin() + least_rotation(core), core.end());
    }
    v = std::move(core);
    return out;
  }

  std::array<std::size_t, 3> letter_counts(Word const& w) {
    std::array<std::size_t, 3> counts{};
    for (auto const& l : w.letters) {
      ++counts[static_cast<std::size_t>(l.generator)];
    }
    return counts;
  }

}  // namespace halfturn
