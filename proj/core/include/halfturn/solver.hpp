#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "halfturn/cases.hpp"
#include "halfturn/repr.hpp"

namespace halfturn {

  struct SolverConfig {
    unsigned      starts        = 2000;
    unsigned      max_iter      = 100;
    double        residual_tol  = 1e-10;
    double        dedup_tol     = 1e-6;
    double        sample_radius = 3.0;
    std::uint64_t rng_seed      = 0;
    // 0 picks the hardware concurrency.  Results do not depend on it.
    unsigned threads = 0;

    // Throws std::invalid_argument.
    void validate() const;
  };

  using Point = std::array<std::complex<double>, 3>;

  struct Solution {
    Point    point{};
    double   residual = 0.0;
    bool     real_triple       = false;  // max |Im t_i| <= 1e-8
    bool     degenerate        = false;  // some |t_i^2 - 4| <= 1e-8
    bool     complex_candidate = false;  // !real_triple
    unsigned multiplicity_hint = 0;      // converged starts in this cluster
    // Newton from nearby points converges elsewhere: the point lies on a
    // positive dimensional part of the solution set.
    bool on_component = false;
  };

  struct SolveResult {
    std::vector<Solution>    solutions;
    unsigned                 converged_starts = 0;
    bool                     positive_dimensional = false;
    std::vector<std::string> warnings;
  };

  // Maximum of |lhs - rhs| over all equations at p.
  double system_residual(PolySystem const& system, Point const& p);

  // Multi-start damped Newton on the first k equations, where k is the number
  // of free unknowns; the remaining equations filter converged points.
  // Deterministic for a fixed seed regardless of the thread count.
  SolveResult solve(PolySystem const& system, SolverConfig const& config);

  struct FilterOptions {
    // Full relator list; when present every candidate must pass
    // verify_relators at relator_tol.
    std::optional<std::vector<Word>> relators;
    double                           relator_tol = 1e-6;
    // When false the relator report is attached but failures are kept.
    bool enforce_relators = true;
    // Orientation flips (t_i -> -t_i on two coordinates) keep the PSL(2,C)
    // group; collapse their images when both are present.
    bool collapse_orientation = true;
    // Extra coordinate permutations known to be symmetries of the case,
    // e.g. {y, x, z} for a system symmetric in t0 <-> t1.
    std::vector<std::array<Var, 3>> permutations;
    double                          match_tol = 1e-6;
  };

  struct Candidate {
    Solution                     solution;
    bool                         conjugate_pair = false;
    unsigned                     orbit_size     = 1;
    std::optional<RelatorReport> relators;
  };

  struct FilterResult {
    std::vector<Candidate> candidates;
    unsigned               dropped_real       = 0;
    unsigned               dropped_degenerate = 0;
    unsigned               dropped_relators   = 0;
    unsigned               dropped_component  = 0;
  };

  // Drops real triples, points where the representation is singular
  // (t0^2 = 4) and points on positive dimensional components, optionally
  // verifies relators, then collapses complex
  // conjugates and the symmetries in options to one representative.
  FilterResult filter_candidates(std::vector<Solution> const& solutions,
                                 FilterOptions const&         options = {});

  struct ParametricRow {
    std::optional<unsigned> order;  // nullopt = infinity
    PolySystem              system;
    SolveResult             result;
  };

  // Instantiates the family parameter with each value and solves.  The
  // family's symmetry identification is applied when apply_family_symmetry.
  std::vector<ParametricRow> solve_parametric(CaseSpec const&                             family,
                                              std::vector<std::optional<unsigned>> const& values,
                                              SolverConfig const&                         config,
                                              bool apply_family_symmetry = true);

}  // namespace halfturn
