#include "halfturn/pipeline.hpp"

#include <map>

#include "halfturn/error.hpp"
#include "halfturn/json_io.hpp"
#include "halfturn/trace.hpp"

namespace halfturn {

  namespace {
    template <typename F>
    auto stage(char const* name, F&& f) -> decltype(f()) {
      try {
        return f();
      } catch (DegenerateAxes const& e) {
        throw DegenerateAxes(std::string(name) + ": " + e.what());
      } catch (MixedParity const& e) {
        throw MixedParity(std::string(name) + ": " + e.what());
      } catch (InvalidOrder const& e) {
        throw InvalidOrder(std::string(name) + ": " + e.what());
      } catch (ComputationError const& e) {
        throw ComputationError(std::string(name) + ": " + e.what());
      }
    }

    // identify() is exhaustive, so share results between equal values
    class IdCache {
     public:
      explicit IdCache(IdConfig cfg) : _cfg(cfg) {}

      std::optional<MinPolyResult> get(std::complex<double> v) {
        for (auto const& [key, value] : _entries) {
          if (std::abs(key - v) <= 1e-9) {
            return value;
          }
        }
        auto r = identify(v, _cfg);
        _entries.emplace_back(v, r);
        return r;
      }

     private:
      IdConfig                                                            _cfg;
      std::vector<std::pair<std::complex<double>, std::optional<MinPolyResult>>> _entries;
    };
  }  // namespace

  PipelineReport run_pipeline(CaseSpec const& spec, PipelineConfig const& config) {
    PipelineReport report;
    report.spec = spec;

    report.system = stage("assemble", [&] {
      return apply_symmetry(assemble_system(spec), spec.symmetry);
    });
    report.solve = stage("solve", [&] { return solve(report.system, config.solver); });

    FilterOptions options;
    options.permutations = spec.permutations;
    options.relators         = relators(spec);
    options.enforce_relators = config.verify_relators && spec.verify_relators;
    report.filter = stage("filter", [&] { return filter_candidates(report.solve.solutions, options); });

    IdCache ids(config.id);
    stage("identify", [&] {
      for (auto const& c : report.filter.candidates) {
        CandidateReport cr;
        cr.candidate     = c;
        auto const& p    = c.solution.point;
        auto const  par  = Parameters::from_rho(p[0], p[1], p[2]);
        cr.gm            = to_gm(par);
        for (std::size_t i = 0; i < 3; ++i) {
          cr.mu[i] = mu_from_rho(p[i]);
          if (config.identify) {
            cr.min_poly[i]         = ids.get(p[i]);
            cr.min_poly_squared[i] = ids.get(p[i] * p[i]);
          }
        }
        auto const rep = build_representation(par);
        cr.tr_abc      = (rep.a * rep.b * rep.c).trace();
        report.candidates.push_back(std::move(cr));
      }
      return 0;
    });
    return report;
  }

  PipelineReport run_pipeline(CaseSpec const& family, std::optional<unsigned> order, PipelineConfig const& config) {
    CaseSpec const spec = order ? family.instantiate(*order) : family.instantiate_infinite();
    auto           r    = run_pipeline(spec, config);
    r.order             = order;
    r.parametric        = family.is_parametric();
    return r;
  }

  nlohmann::json to_json(Solution const& s) {
    return {{"point", {to_json(s.point[0]), to_json(s.point[1]), to_json(s.point[2])}},
            {"residual", s.residual},
            {"flags",
             {{"real_triple", s.real_triple},
              {"degenerate", s.degenerate},
              {"complex_candidate", s.complex_candidate},
              {"on_component", s.on_component}}},
            {"multiplicity_hint", s.multiplicity_hint}};
  }

  nlohmann::json to_json(SolveResult const& r) {
    auto sols = nlohmann::json::array();
    for (auto const& s : r.solutions) {
      sols.push_back(to_json(s));
    }
    return {{"solutions", std::move(sols)},
            {"converged_starts", r.converged_starts},
            {"positive_dimensional", r.positive_dimensional},
            {"warnings", r.warnings}};
  }

  nlohmann::json to_json(MinPolyResult const& r) {
    return {{"coefficients", r.coefficients},
            {"polynomial", r.to_string()},
            {"degree", r.degree},
            {"height", r.height},
            {"witness_error", r.witness_error}};
  }

  nlohmann::json to_json(GMParams const& gm) {
    return {{"beta_f", to_json(gm.beta_f)}, {"beta_g", to_json(gm.beta_g)}, {"gamma", to_json(gm.gamma)}};
  }

  namespace {
    nlohmann::json optional_poly(std::optional<MinPolyResult> const& r) {
      return r ? to_json(*r) : nlohmann::json(nullptr);
    }
  }  // namespace

  nlohmann::json to_json(PipelineReport const& report) {
    nlohmann::json j;
    j["case"] = to_string(report.spec.id);
    if (!report.spec.name.empty()) {
      j["name"] = report.spec.name;
    }
    if (report.parametric) {
      j["order"] = report.order ? nlohmann::json(*report.order) : nlohmann::json("inf");
    }
    j["system"] = to_json(report.system);
    j["solve"]  = {{"distinct_solutions", report.solve.solutions.size()},
                   {"converged_starts", report.solve.converged_starts},
                   {"positive_dimensional", report.solve.positive_dimensional},
                   {"warnings", report.solve.warnings}};
    j["filter"] = {{"dropped_real", report.filter.dropped_real},
                   {"dropped_degenerate", report.filter.dropped_degenerate},
                   {"dropped_relators", report.filter.dropped_relators},
                   {"dropped_component", report.filter.dropped_component}};
    auto cands  = nlohmann::json::array();
    for (auto const& c : report.candidates) {
      nlohmann::json cj = to_json(c.candidate.solution);
      cj["conjugate_pair"] = c.candidate.conjugate_pair;
      cj["orbit_size"]     = c.candidate.orbit_size;
      if (c.candidate.relators) {
        cj["relators"] = to_json(*c.candidate.relators);
      }
      cj["mu"]               = {to_json(c.mu[0]), to_json(c.mu[1]), to_json(c.mu[2])};
      cj["tr_abc"]           = to_json(c.tr_abc);
      cj["min_poly"]         = {optional_poly(c.min_poly[0]), optional_poly(c.min_poly[1]), optional_poly(c.min_poly[2])};
      cj["min_poly_squared"] = {optional_poly(c.min_poly_squared[0]),
                                optional_poly(c.min_poly_squared[1]),
                                optional_poly(c.min_poly_squared[2])};
      cj["gm"] = to_json(c.gm);
      cands.push_back(std::move(cj));
    }
    j["candidates"] = std::move(cands);
    if (report.candidates.empty()) {
      j["message"] = "no complex candidates";
    }
    return j;
  }

}  // namespace halfturn
