#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace halfturn {

  enum class Generator : std::uint8_t { a = 0, b = 1, c = 2 };

  struct Letter {
    Generator generator = Generator::a;
    bool      inverted  = false;

    friend auto operator<=>(Letter const&, Letter const&) = default;
  };

  // A word in the free product of three groups of order two.  The letters are
  // kept exactly as written; normalize() produces the reduced form.
  struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> l) : letters(std::move(l)) {}

    std::size_t size() const noexcept {
      return letters.size();
    }
    bool empty() const noexcept {
      return letters.empty();
    }

    friend auto operator<=>(Word const&, Word const&) = default;
  };

  // Positive reduced word together with the sign picked up when lifting to
  // SL(2,C), where every generator matrix X satisfies X^2 = -I, X^-1 = -X.
  struct SignedWord {
    Word word;
    int  sign = 1;

    friend auto operator<=>(SignedWord const&, SignedWord const&) = default;
  };

  char to_char(Generator g) noexcept;

  // Grammar: token := ("a"|"b"|"c") "'"?, optional ASCII spaces between
  // tokens.  Throws ParseError with a 1-based position.
  Word parse_word(std::string_view text);

  std::string to_string(Word const& w);
  std::string to_string(SignedWord const& sw);

  Word concat(Word const& lhs, Word const& rhs);
  Word power(Word const& w, unsigned exponent);

  // Drops inverse flags and cancels adjacent equal generators, multiplying the
  // sign by -1 for every flag dropped and every pair cancelled.
  SignedWord normalize(Word const& w);

  // Group inverse: letters reversed, inverse flags toggled.
  Word invert(Word const& w);

  // Cyclically reduces a normalized word (X...X -> ..., sign * -1) and returns
  // its lexicographically least rotation, with a < b < c.
  SignedWord cyclic_canonical(SignedWord const& sw);

  // Number of letters per generator, indexed by Generator.
  std::array<std::size_t, 3> letter_counts(Word const& w);

}  // namespace halfturn
