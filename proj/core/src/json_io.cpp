#include "halfturn/json_io.hpp"

#include <limits>

#include "halfturn/error.hpp"

namespace halfturn {

  nlohmann::json to_json(std::complex<double> z) {
    return nlohmann::json::array({z.real(), z.imag()});
  }

  std::complex<double> complex_from_json(nlohmann::json const& j) {
    if (j.is_number()) {
      return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
      return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ParseError("expected a complex number encoded as [re, im]");
  }

  nlohmann::json to_json(Poly3 const& p) {
    auto out = nlohmann::json::array();
    for (auto const& [e, c] : p.terms()) {
      if (c > std::numeric_limits<std::int64_t>::max()
          || c < std::numeric_limits<std::int64_t>::min()) {
        throw OverflowError("coefficient " + to_string(c) + " does not fit in JSON output");
      }
      out.push_back({e[0], e[1], e[2], static_cast<std::int64_t>(c)});
    }
    return out;
  }

  Poly3 poly_from_json(nlohmann::json const& j) {
    Poly3 p;
    for (auto const& term : j) {
      if (!term.is_array() || term.size() != 4) {
        throw ParseError("polynomial terms must be [i, j, k, c]");
      }
      p += Poly3::monomial({term[0].get<unsigned>(), term[1].get<unsigned>(), term[2].get<unsigned>()},
                           term[3].get<std::int64_t>());
    }
    return p;
  }

  nlohmann::json to_json(TraceElement const& t) {
    nlohmann::json j;
    j["even"] = to_json(t.even);
    j["odd"]  = to_json(t.odd);
    return j;
  }

  nlohmann::json to_json(Mat2 const& m) {
    return nlohmann::json::array({nlohmann::json::array({to_json(m.m11), to_json(m.m12)}),
                                  nlohmann::json::array({to_json(m.m21), to_json(m.m22)})});
  }

  nlohmann::json to_json(Parameters const& p) {
    nlohmann::json j;
    j["rho"] = nlohmann::json::array({to_json(p.rho[0]), to_json(p.rho[1]), to_json(p.rho[2])});
    if (p.mu) {
      auto const& mu = *p.mu;
      j["mu"]        = nlohmann::json::array({to_json(mu[0]), to_json(mu[1]), to_json(mu[2])});
    }
    return j;
  }

  nlohmann::json to_json(Representation const& rep) {
    nlohmann::json j;
    j["params"] = to_json(rep.params);
    j["A"]      = to_json(rep.a);
    j["B"]      = to_json(rep.b);
    j["C"]      = to_json(rep.c);
    j["beta"]   = to_json(rep.beta);
    j["c11"]    = to_json(rep.c11);
    j["c12"]    = to_json(rep.c12);
    j["c21"]    = to_json(rep.c21);
    return j;
  }

  nlohmann::json to_json(RelatorReport const& report) {
    nlohmann::json j;
    j["tolerance"] = report.tolerance;
    j["passed"]    = report.passed;
    auto rows      = nlohmann::json::array();
    for (auto const& r : report.residuals) {
      rows.push_back({{"relator", to_string(r.relator)},
                      {"residual", r.residual},
                      {"identity", r.minus_identity ? "-I" : "+I"},
                      {"passed", r.passed}});
    }
    j["relators"] = std::move(rows);
    return j;
  }

  Parameters parameters_from_json(nlohmann::json const& j) {
    auto triple = [](nlohmann::json const& arr) {
      if (!arr.is_array() || arr.size() != 3) {
        throw ParseError("parameters need exactly three complex values");
      }
      return std::array<std::complex<double>, 3>{
          complex_from_json(arr[0]), complex_from_json(arr[1]), complex_from_json(arr[2])};
    };
    if (j.contains("rho")) {
      auto const r = triple(j.at("rho"));
      return Parameters::from_rho(r[0], r[1], r[2]);
    }
    if (j.contains("mu")) {
      auto const m = triple(j.at("mu"));
      return Parameters::from_mu(m[0], m[1], m[2]);
    }
    throw ParseError("parameters need a \"rho\" or \"mu\" array");
  }

}  // namespace halfturn
