#include <doctest.h>

#include <numbers>
#include <stdexcept>

#include "halfturn/cases.hpp"
#include "halfturn/solver.hpp"
#include "support.hpp"

using namespace halfturn;
using testing::cplx;

namespace {
  Poly3 const X = Poly3::variable(Var::x);
  Poly3 const Y = Poly3::variable(Var::y);
  Poly3 const Z = Poly3::variable(Var::z);

  PolySystem linear_system() {
    PolySystem s;
    s.equations = {Equation{X, 2.0}, Equation{Y, 0.0}, Equation{Z, 0.0}};
    return s;
  }

  PolySystem fixture_system(char const* name, std::optional<unsigned> n = std::nullopt) {
    auto const family = testing::load_fixture(name);
    auto const spec   = !family.is_parametric() ? family : n ? family.instantiate(*n) : family.instantiate_infinite();
    return apply_symmetry(assemble_system(spec), spec.symmetry);
  }

  SolverConfig quick(unsigned starts = 400) {
    SolverConfig c;
    c.starts   = starts;
    c.rng_seed = 1234;
    return c;
  }

  Point conj(Point const& p) {
    return {std::conj(p[0]), std::conj(p[1]), std::conj(p[2])};
  }

  double distance(Point const& p, Point const& q) {
    double d = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      d = std::max(d, std::abs(p[i] - q[i]));
    }
    return d;
  }

  bool contains(std::vector<Solution> const& sols, Point const& p, double tol) {
    return std::any_of(sols.begin(), sols.end(), [&](Solution const& s) { return distance(s.point, p) <= tol; });
  }

  bool identical(SolveResult const& a, SolveResult const& b) {
    if (a.solutions.size() != b.solutions.size() || a.converged_starts != b.converged_starts
        || a.warnings != b.warnings) {
      return false;
    }
    for (std::size_t i = 0; i < a.solutions.size(); ++i) {
      auto const& s = a.solutions[i];
      auto const& t = b.solutions[i];
      if (s.point != t.point || s.residual != t.residual || s.multiplicity_hint != t.multiplicity_hint
          || s.on_component != t.on_component) {
        return false;
      }
    }
    return true;
  }

  Solution make_solution(Point p) {
    Solution s;
    s.point = p;
    s.real_triple = std::all_of(p.begin(), p.end(), [](cplx z) { return std::abs(z.imag()) <= 1e-8; });
    s.complex_candidate = !s.real_triple;
    s.degenerate = std::any_of(p.begin(), p.end(), [](cplx z) { return std::abs(z * z - 4.0) <= 1e-8; });
    s.multiplicity_hint = 1;
    return s;
  }

  char const* const all_fixtures[] = {"6a", "6b", "6c", "6d", "6e", "6f", "6g"};
}  // namespace

TEST_CASE("config validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.starts = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c        = SolverConfig{};
  c.residual_tol = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SolverConfig{};
  c.sample_radius = 0.0;
  CHECK_THROWS_AS(solve(linear_system(), c), std::invalid_argument);
}

TEST_CASE("linear system has one degenerate real solution") {
  auto const r = solve(linear_system(), quick(50));
  REQUIRE(r.solutions.size() == 1);
  auto const& s = r.solutions[0];
  CHECK(distance(s.point, {2.0, 0.0, 0.0}) <= 1e-12);
  CHECK(s.real_triple);
  CHECK(s.degenerate);
  CHECK_FALSE(s.complex_candidate);
  CHECK(r.converged_starts == 50);
  CHECK(system_residual(linear_system(), s.point) <= 1e-12);

  auto const f = filter_candidates(r.solutions);
  CHECK(f.candidates.empty());
  CHECK(f.dropped_real == 1);
}

TEST_CASE("determinism and thread independence") {
  for (auto const* name : {"6e", "6g"}) {
    auto const sys = fixture_system(name);
    auto       c1  = quick();
    c1.threads     = 1;
    auto c4        = quick();
    c4.threads     = 4;
    auto const a   = solve(sys, c1);
    auto const b   = solve(sys, c1);
    auto const d   = solve(sys, c4);
    CHECK(identical(a, b));
    CHECK(identical(a, d));
  }
}

TEST_CASE("different seeds find the same solution set") {
  auto const sys = fixture_system("6e");
  auto       c   = quick();
  auto const a   = solve(sys, c);
  c.rng_seed     = 99;
  auto const b   = solve(sys, c);
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (auto const& s : a.solutions) {
    CHECK(contains(b.solutions, s.point, 1e-8));
  }
}

TEST_CASE("fixture solution sets: residuals, conjugation closure, stability") {
  for (auto const* name : all_fixtures) {
    for (std::optional<unsigned> n : {std::optional<unsigned>(3), std::optional<unsigned>(5)}) {
      std::string const label = std::string(name) + " n=" + std::to_string(n.value_or(0));
      CAPTURE(label);
      auto const family = testing::load_fixture(name);
      if (!family.is_parametric() && n != 3u) {
        continue;
      }
      auto const sys    = fixture_system(name, n);
      auto const config = SolverConfig{};
      auto const r      = solve(sys, config);
      CHECK(r.converged_starts > 0);

      for (auto const& s : r.solutions) {
        if (!s.on_component) {
          CHECK(s.residual <= config.residual_tol);
          CHECK(system_residual(sys, s.point) <= config.residual_tol);
        }
        CHECK(s.real_triple == !s.complex_candidate);
        // points sampled from a curve are arbitrary; only isolated ones pair up
        if (!s.on_component) {
          CHECK(contains(r.solutions, conj(s.point), 1e-6));
        }
      }

      // doubling the starts does not grow the deduplicated set
      auto doubled   = config;
      doubled.starts = 2 * config.starts;
      auto const r2  = solve(sys, doubled);
      std::size_t isolated1 = 0, isolated2 = 0;
      for (auto const& s : r.solutions) {
        isolated1 += s.on_component ? 0 : 1;
      }
      for (auto const& s : r2.solutions) {
        isolated2 += s.on_component ? 0 : 1;
        if (!s.on_component) {
          CHECK(contains(r.solutions, s.point, 1e-6));
        }
      }
      CHECK(isolated2 == isolated1);
    }
  }
}

TEST_CASE("6F carries a curve of solutions") {
  auto const r = solve(fixture_system("6f"), SolverConfig{});
  CHECK(r.positive_dimensional);
  CHECK(std::any_of(r.solutions.begin(), r.solutions.end(), [](Solution const& s) { return s.on_component; }));
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("filter drops real, degenerate and component points") {
  cplx const            w{0.5, std::numbers::sqrt3 / 2.0};
  std::vector<Solution> sols{make_solution({1.0, 0.5, -0.3}),
                             make_solution({2.0, cplx(0.0, 1.0), 0.0}),
                             make_solution({w, w, w})};
  Solution comp = make_solution({cplx(0.1, 0.2), 0.3, 0.4});
  comp.on_component = true;
  sols.push_back(comp);
  auto const f = filter_candidates(sols);
  CHECK(f.dropped_real == 1);
  CHECK(f.dropped_degenerate == 1);
  CHECK(f.dropped_component == 1);
  REQUIRE(f.candidates.size() == 1);
  CHECK(distance(f.candidates[0].solution.point, {w, w, w}) == 0.0);
  CHECK_FALSE(f.candidates[0].conjugate_pair);
}

TEST_CASE("filter collapses conjugates, orientation flips and permutations") {
  Point const p{cplx(0.3, 0.7), cplx(-1.1, 0.2), cplx(0.4, -0.9)};
  std::vector<Solution> sols{make_solution(p),
                             make_solution(conj(p)),
                             make_solution({p[0], -p[1], -p[2]}),
                             make_solution({-p[0], -p[1], p[2]})};
  auto const f = filter_candidates(sols);
  REQUIRE(f.candidates.size() == 1);
  CHECK(f.candidates[0].orbit_size == 4);
  CHECK(f.candidates[0].conjugate_pair);
  CHECK(f.candidates[0].solution.multiplicity_hint == 4);

  FilterOptions no_flip;
  no_flip.collapse_orientation = false;
  CHECK(filter_candidates(sols, no_flip).candidates.size() == 3);

  std::vector<Solution> swapped{make_solution(p), make_solution({p[1], p[0], p[2]})};
  CHECK(filter_candidates(swapped).candidates.size() == 2);
  FilterOptions perm;
  perm.permutations = {parse_permutation("yxz")};
  CHECK(filter_candidates(swapped, perm).candidates.size() == 1);
}

TEST_CASE("filter representative prefers larger imaginary parts") {
  Point const p{cplx(0.3, -0.7), cplx(-1.1, -0.2), cplx(0.4, -0.9)};
  auto const  f = filter_candidates({make_solution(p), make_solution(conj(p))});
  REQUIRE(f.candidates.size() == 1);
  CHECK(f.candidates[0].solution.point == conj(p));
}

TEST_CASE("filter relator verification") {
  Point const p{cplx(0.3, 0.7), cplx(-1.1, 0.2), cplx(0.4, -0.9)};
  FilterOptions opts;
  opts.relators = std::vector<Word>{parse_word("aa"), parse_word("ab")};
  auto const dropped = filter_candidates({make_solution(p)}, opts);
  CHECK(dropped.candidates.empty());
  CHECK(dropped.dropped_relators == 1);

  opts.enforce_relators = false;
  auto const kept = filter_candidates({make_solution(p)}, opts);
  REQUIRE(kept.candidates.size() == 1);
  REQUIRE(kept.candidates[0].relators.has_value());
  CHECK_FALSE(kept.candidates[0].relators->passed);
}

TEST_CASE("parametric sweep") {
  auto const rows = solve_parametric(testing::load_fixture("6d"), {2u, 4u, std::nullopt}, quick());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].order == 2u);
  CHECK_FALSE(rows[2].order.has_value());
  for (auto const& row : rows) {
    CHECK(row.system.equations.size() == 3);
  }
  auto const f2 = filter_candidates(rows[0].result.solutions);
  CHECK(f2.candidates.empty());
  auto const f4 = filter_candidates(rows[1].result.solutions);
  CHECK(f4.candidates.size() == 1);
}
