#include <doctest.h>

#include <cmath>
#include <numbers>

#include "halfturn/cases.hpp"
#include "halfturn/error.hpp"
#include "fixture_check.hpp"

using namespace halfturn;
using testing::cplx;

namespace {
  Poly3 const X = Poly3::variable(Var::x);

  TraceConstraint constraint(char const* word, Rhs rhs) {
    return {parse_word(word), rhs};
  }
}  // namespace

TEST_CASE("rhs_value") {
  CHECK(rhs_value(Rhs::of_order(3)) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(rhs_value(Rhs::infinite_order()) == -2.0);
  CHECK(std::abs(rhs_value(Rhs::of_order(2))) <= 1e-15);
  CHECK(rhs_value(Rhs::trivial()) == 2.0);
  CHECK(rhs_value(Rhs::parabolic()) == -2.0);
  CHECK(rhs_value(Rhs::half_turn()) == 0.0);
  CHECK_THROWS_AS(rhs_value(Rhs::of_order(1)), InvalidOrder);
  CHECK_THROWS_AS(rhs_value(Rhs::of_order(0)), InvalidOrder);
  CHECK_THROWS_AS(rhs_value(Rhs::parameter()), InvalidOrder);

  double prev = rhs_value(Rhs::of_order(2));
  for (unsigned t = 3; t < 200; ++t) {
    double const v = rhs_value(Rhs::of_order(t));
    CHECK(v < prev);
    CHECK(v > -2.0);
    prev = v;
  }
}

TEST_CASE("printed systems are reproduced") {
  for (unsigned n : {3u, 4u, 5u, 7u}) {
    for (auto const* name : {"6a", "6b", "6c", "6d", "6e", "6f", "6g"}) {
      std::string const label = std::string(name) + " n=" + std::to_string(n);
      CAPTURE(label);
      for (auto const& f : testing::printed_system_failures(name, n)) {
        FAIL_CHECK(f);
      }
    }
  }
}

TEST_CASE("custom spec with a trivial pair trace") {
  CaseSpec spec;
  spec.constraints = {constraint("ab", Rhs::trivial())};
  auto const sys   = assemble_system(spec);
  REQUIRE(sys.equations.size() == 1);
  CHECK(testing::move_left(sys.equations[0].lhs, sys.equations[0].rhs).terms == X);
  CHECK(testing::move_left(sys.equations[0].lhs, sys.equations[0].rhs).constant == -2.0);
  CHECK(sys.equations[0].provenance == Provenance::direct);
}

TEST_CASE("odd constraint with zero right-hand side is factored") {
  auto const sys = assemble_system(testing::load_fixture("6g"));
  REQUIRE(sys.equations.size() == 3);
  auto const& e = sys.equations[0];
  CHECK(e.provenance == Provenance::odd_factored);
  CHECK(e.rhs == 0.0);
  CHECK(e.lhs == X * Poly3::variable(Var::y) * Poly3::variable(Var::z) + Poly3(1));
  CHECK_FALSE(sys.warnings.empty());
}

TEST_CASE("provenance follows word parity") {
  for (auto const* name : {"6a", "6b", "6c", "6d", "6e", "6f", "6g"}) {
    auto const family = testing::load_fixture(name);
    auto const spec   = family.is_parametric() ? family.instantiate(5) : family;
    auto const sys    = assemble_system(spec);
    for (std::size_t i = 0; i < sys.equations.size(); ++i) {
      bool const even = normalize(spec.constraints[i].word).word.size() % 2 == 0;
      CHECK((sys.equations[i].provenance == Provenance::direct) == even);
      CHECK(sys.equations[i].constraint == i);
    }
  }
}

TEST_CASE("symmetry reduction") {
  SUBCASE("identity keeps the system") {
    auto const sys = assemble_system(testing::load_fixture("6e"));
    auto const red = apply_symmetry(sys, identity_identification);
    REQUIRE(red.equations.size() == sys.equations.size());
    for (std::size_t i = 0; i < sys.equations.size(); ++i) {
      CHECK(red.equations[i].lhs == sys.equations[i].lhs);
    }
  }
  SUBCASE("6A on the diagonal") {
    auto const spec = testing::load_fixture("6a");
    auto const red  = apply_symmetry(assemble_system(spec), spec.symmetry);
    REQUIRE(red.unknowns().size() == 1);
    CHECK(red.equations.size() == 1);
    cplx const t{0.6623589786223730, 0.5622795120623012};
    CHECK(std::abs(red.equations[0].residual(t, t, t)) <= 1e-9);
    CHECK(std::abs(t * t * t - t + 1.0) <= 1e-12);
  }
  SUBCASE("6G on the diagonal") {
    auto const red = apply_symmetry(assemble_system(testing::load_fixture("6g")), parse_identification("x=y=z"));
    CHECK(red.equations.size() == 2);
    cplx const t{0.5, std::numbers::sqrt3 / 2.0};
    for (auto const& e : red.equations) {
      CHECK(std::abs(e.residual(t, t, t)) <= 1e-12);
    }
  }
}

TEST_CASE("identification and permutation parsing") {
  CHECK(parse_identification("") == identity_identification);
  CHECK(parse_identification("x=y=z") == Identification{Var::x, Var::x, Var::x});
  CHECK(parse_identification("x=z") == Identification{Var::x, Var::y, Var::x});
  CHECK(to_string(parse_identification("x=z")) == "x=z");
  CHECK_THROWS_AS(parse_identification("x=w"), ParseError);
  CHECK(parse_permutation("yxz") == std::array<Var, 3>{Var::y, Var::x, Var::z});
  CHECK_THROWS_AS(parse_permutation("xxz"), ParseError);
}

TEST_CASE("validate") {
  for (auto const* name : {"6a", "6b", "6c", "6d", "6e", "6f", "6g"}) {
    CHECK_NOTHROW(validate(testing::load_fixture(name)));
  }
  auto spec = testing::load_fixture("6e");
  spec.constraints.pop_back();
  CHECK_THROWS_AS(validate(spec), SpecError);

  auto wrong_rhs                 = testing::load_fixture("6a");
  wrong_rhs.constraints[0].rhs   = Rhs::parabolic();
  CHECK_THROWS_AS(validate(wrong_rhs), SpecError);

  auto wrong_parity              = testing::load_fixture("6g");
  wrong_parity.constraints[0].word = parse_word("ab");
  CHECK_THROWS_AS(validate(wrong_parity), SpecError);

  auto mismatched                = testing::load_fixture("6b").instantiate(3);
  mismatched.constraints[2].rhs  = Rhs::of_order(4);
  CHECK_THROWS_AS(validate(mismatched), SpecError);

  auto bad_order                 = testing::load_fixture("6d");
  bad_order.constraints[0].rhs   = Rhs::of_order(1);
  CHECK_THROWS_AS(validate(bad_order), InvalidOrder);
}

TEST_CASE("parametric families") {
  auto const family = testing::load_fixture("6b");
  CHECK(family.is_parametric());
  CHECK_THROWS_AS(assemble_system(family), InvalidOrder);
  auto const at3 = family.instantiate(3);
  CHECK_FALSE(at3.is_parametric());
  CHECK(at3.constraints[1].rhs.order == 3u);
  auto const inf = family.instantiate_infinite();
  CHECK(rhs_value(inf.constraints[1].rhs) == -2.0);
  CHECK(relators(at3).size() == 6);
  CHECK(relators(at3)[4] == power(at3.constraints[1].word, 3));
}

TEST_CASE("relators per right-hand side kind") {
  auto const r = relators(testing::load_fixture("6e"));
  REQUIRE(r.size() == 5);
  CHECK(r[0] == parse_word("aa"));
  CHECK(r[3] == power(parse_word("aca'b'"), 2));
  CHECK(r[4] == power(parse_word("cbab'c'a'"), 2));
}

TEST_CASE("case spec JSON") {
  for (auto const* name : {"6a", "6b", "6c", "6d", "6e", "6f", "6g"}) {
    auto const spec  = testing::load_fixture(name);
    auto const again = case_spec_from_json(to_json(spec));
    CHECK(to_json(again) == to_json(spec));
    CHECK(again.verify_relators == spec.verify_relators);
    CHECK(again.symmetry == spec.symmetry);
    CHECK(again.permutations == spec.permutations);
  }
  CHECK_THROWS_AS(case_spec_from_json(nlohmann::json::parse(R"({"case": "Q", "constraints": []})")), ParseError);
  CHECK_THROWS_AS(case_spec_from_json(nlohmann::json::parse(R"({"case": "A", "constraints": [{"word": "ax", "rhs": {"kind": "trivial"}}]})")),
                  ParseError);
  CHECK_THROWS_AS(case_spec_from_json(nlohmann::json::parse(R"({"case": "A", "constraints": [{"word": "ab", "rhs": {"kind": "odd"}}]})")),
                  ParseError);
  CHECK_THROWS(case_spec_from_json(nlohmann::json::parse(R"({"case": "C", "constraints": [{"word": "ab", "rhs": {"kind": "order", "t": 1}}]})")));
}

TEST_CASE("system JSON lists equations") {
  auto const j = to_json(assemble_system(testing::load_fixture("6e")));
  REQUIRE(j.at("equations").size() == 3);
  CHECK(j.at("equations")[0].contains("text"));
}
