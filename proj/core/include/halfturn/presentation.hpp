#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace halfturn {

  // A syllable g^e of a relator.
  struct Syllable {
    std::size_t  generator = 0;
    std::int64_t exponent  = 1;
  };

  using Relator = std::vector<Syllable>;

  struct Presentation {
    std::vector<std::string> generator_names;
    std::vector<Relator>     relators;
  };

  // Relator grammar over the declared generator symbols:
  //   relator := item*
  //   item    := (symbol | "(" relator ")") "'"? ("^" integer)?
  // Symbols are matched longest first; spaces are ignored.
  Relator parse_relator(std::string_view text, std::vector<std::string> const& generators);

  // {"generators": [...], "relators": [...]}
  Presentation presentation_from_json(nlohmann::json const& j);

  struct AbelianInvariants {
    std::size_t               free_rank = 0;
    std::vector<std::int64_t> torsion;  // d1 | d2 | ..., each > 1

    std::string to_string() const;  // e.g. "Z^2 + Z_2 + Z_4"
  };

  // Relator exponent-sum matrix over the integers.
  std::vector<std::vector<std::int64_t>> relation_matrix(Presentation const& p);

  // Diagonal of the Smith normal form (nonzero entries, positive, each
  // dividing the next).  Exact; throws OverflowError.
  std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> matrix,
                                           std::size_t                            columns);

  AbelianInvariants abelianize(Presentation const& p);

  // True when the abelianization can be generated by claimed_rank elements,
  // i.e. free_rank + |torsion| <= claimed_rank.  A false result refutes a
  // claimed rank of the group itself.
  bool rank_lower_bound_check(Presentation const& p, std::size_t claimed_rank);

}  // namespace halfturn
