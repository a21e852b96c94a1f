#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "halfturn/cases.hpp"
#include "halfturn/repr.hpp"
#include "halfturn/word.hpp"

namespace testing {

  using cplx = std::complex<double>;

  inline std::string data_path(std::string const& rel) {
    return std::string(HALFTURN_DATA_DIR) + "/" + rel;
  }

  inline nlohmann::json load_json(std::string const& rel) {
    std::ifstream in(data_path(rel));
    if (!in) {
      throw std::runtime_error("missing data file " + rel);
    }
    return nlohmann::json::parse(in);
  }

  inline halfturn::CaseSpec load_fixture(std::string const& name) {
    return halfturn::case_spec_from_json(load_json("fixtures/" + name + ".json"));
  }

  inline nlohmann::json load_expected(std::string const& name) {
    return load_json("fixtures/expected/" + name + ".json");
  }

  // Random word of the given length with random inverse flags.
  inline halfturn::Word random_word(std::mt19937_64& rng, std::size_t length) {
    std::uniform_int_distribution<int> gen(0, 2), flag(0, 1);
    halfturn::Word                     w;
    for (std::size_t i = 0; i < length; ++i) {
      w.letters.push_back({static_cast<halfturn::Generator>(gen(rng)), flag(rng) == 1});
    }
    return w;
  }

  // Random word whose normal form has exactly the given length.
  inline halfturn::Word random_reduced_word(std::mt19937_64& rng, std::size_t length) {
    std::uniform_int_distribution<int> gen(0, 2), flag(0, 1);
    halfturn::Word                     w;
    int                                prev = -1;
    while (w.size() < length) {
      int const g = gen(rng);
      if (g == prev) {
        continue;
      }
      w.letters.push_back({static_cast<halfturn::Generator>(g), flag(rng) == 1});
      prev = g;
    }
    return w;
  }

  inline cplx random_complex(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    return {u(rng), u(rng)};
  }

  // Parameters away from the degenerate locus rho0^2 = 4.
  inline halfturn::Parameters random_params(std::mt19937_64& rng, double radius = 2.5) {
    while (true) {
      cplx const r0 = random_complex(rng, radius);
      if (std::abs(r0 * r0 - 4.0) < 1e-2) {
        continue;
      }
      return halfturn::Parameters::from_rho(r0, random_complex(rng, radius), random_complex(rng, radius));
    }
  }

  inline double rel_err(cplx a, cplx b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
  }

  inline cplx cjson(nlohmann::json const& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
  }

}  // namespace testing
