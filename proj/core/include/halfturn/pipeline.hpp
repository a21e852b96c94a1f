#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "halfturn/algebra_id.hpp"
#include "halfturn/cases.hpp"
#include "halfturn/solver.hpp"
#include "halfturn/two_gen.hpp"

namespace halfturn {

  struct PipelineConfig {
    SolverConfig solver;
    IdConfig     id;
    // Relators always get a residual report; this and the spec's
    // verify_relators decide whether failures are dropped.
    bool         verify_relators = true;
    bool         identify        = true;
  };

  struct CandidateReport {
    Candidate                                  candidate;
    std::array<std::optional<MinPolyResult>, 3> min_poly;
    std::array<std::optional<MinPolyResult>, 3> min_poly_squared;
    GMParams                                   gm;
    std::array<std::complex<double>, 3>        mu{};
    std::complex<double>                       tr_abc{};
  };

  struct PipelineReport {
    CaseSpec                     spec;  // instantiated
    std::optional<unsigned>      order;
    bool                         parametric = false;
    PolySystem                   system;
    SolveResult                  solve;
    FilterResult                 filter;
    std::vector<CandidateReport> candidates;
  };

  // assemble -> symmetry -> solve -> filter -> identify -> convert.
  // Errors carry the failing stage in their message.
  PipelineReport run_pipeline(CaseSpec const& spec, PipelineConfig const& config);

  // Instantiates a family at order t (nullopt = infinity) first.
  PipelineReport run_pipeline(CaseSpec const&         family,
                              std::optional<unsigned> order,
                              PipelineConfig const&   config);

  nlohmann::json to_json(Solution const& s);
  nlohmann::json to_json(SolveResult const& r);
  nlohmann::json to_json(MinPolyResult const& r);
  nlohmann::json to_json(GMParams const& gm);
  nlohmann::json to_json(PipelineReport const& report);

}  // namespace halfturn
