#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "halfturn/poly.hpp"
#include "halfturn/word.hpp"

namespace halfturn {

  enum class RhsKind {
    trivial,    // tr = 2
    order,      // tr = -2 cos(pi / t), t >= 2 or infinite
    parabolic,  // tr = -2
    half_turn   // tr = 0
  };

  struct Rhs {
    RhsKind kind = RhsKind::trivial;
    // Meaningful for RhsKind::order only; nullopt encodes t = infinity.
    std::optional<unsigned> order;
    // The order is a family parameter, fixed later by CaseSpec::instantiate.
    bool parametric = false;

    static Rhs trivial() {
      return {RhsKind::trivial, std::nullopt, false};
    }
    static Rhs of_order(unsigned t) {
      return {RhsKind::order, t, false};
    }
    static Rhs infinite_order() {
      return {RhsKind::order, std::nullopt, false};
    }
    static Rhs parabolic() {
      return {RhsKind::parabolic, std::nullopt, false};
    }
    static Rhs half_turn() {
      return {RhsKind::half_turn, std::nullopt, false};
    }
    static Rhs parameter() {
      return {RhsKind::order, std::nullopt, true};
    }
  };

  // Trivial -> 2, parabolic and order infinity -> -2, half-turn and order 2
  // -> 0, order t -> -2 cos(pi / t).  Throws InvalidOrder for t < 2 and for an
  // unresolved family parameter.
  double rhs_value(Rhs const& rhs);

  struct TraceConstraint {
    Word word;
    Rhs  rhs;
  };

  enum class CaseId { A, B, C, D, E, F, G, H, custom };

  std::string to_string(CaseId id);
  CaseId      case_id_from_string(std::string const& s);

  // Variable identification: variable v is replaced by identification[v].
  using Identification = std::array<Var, 3>;

  constexpr Identification identity_identification{Var::x, Var::y, Var::z};

  // Parses "x=y=z", "x=z", ... ("" is the identity).
  Identification parse_identification(std::string const& text);
  std::string    to_string(Identification const& id);

  // Parses a permutation such as "yxz" (new point = (y, x, z)).
  std::array<Var, 3> parse_permutation(std::string const& text);

  struct CaseSpec {
    CaseId                       id = CaseId::custom;
    std::string                  name;
    std::vector<TraceConstraint> constraints;
    // Optional reduction applied by the pipeline before solving.
    Identification symmetry = identity_identification;
    // Coordinate permutations under which the system is invariant; used to
    // collapse equivalent candidates.
    std::vector<std::array<Var, 3>> permutations;
    // Additional PSL(2,C) relators beyond those implied by the constraints.
    std::vector<Word> extra_relators;
    // When false, relator residuals are reported but do not remove
    // candidates.
    bool verify_relators = true;

    bool is_parametric() const;
    // Copy with every parametric order replaced by t.
    CaseSpec instantiate(unsigned t) const;
    // Copy with every parametric order replaced by infinity.
    CaseSpec instantiate_infinite() const;
  };

  // Checks the number of constraints and the right-hand-side pattern of the
  // case.  Throws SpecError.
  void validate(CaseSpec const& spec);

  // a^2, b^2, c^2, then W for trivial constraints, W^t for finite orders and
  // W^2 for half-turns, then the extra relators.  Parabolic constraints
  // contribute nothing.
  std::vector<Word> relators(CaseSpec const& spec);

  enum class Provenance { direct, odd_squared, odd_factored };

  std::string to_string(Provenance p);

  // lhs(x, y, z) = rhs.
  struct Equation {
    Poly3       lhs;
    double      rhs = 0.0;
    Provenance  provenance = Provenance::direct;
    std::size_t constraint = 0;

    std::complex<double> residual(std::complex<double> x,
                                  std::complex<double> y,
                                  std::complex<double> z) const {
      return lhs.eval(x, y, z) - rhs;
    }
  };

  struct PolySystem {
    std::vector<Equation>              equations;
    Identification                     identification = identity_identification;
    std::vector<std::string>           warnings;
    std::map<std::string, bool>        flags;

    // Representative variables still free after identification.
    std::vector<Var> unknowns() const;
  };

  // One equation per constraint.  Even traces give P = r; odd traces w R give
  // R = 0 when r = 0 (tr(ABC) != 0 assumed, recorded as a warning) and
  // R^2 F = r^2 otherwise.  Equations with zero right-hand side are scaled so
  // the leading term is positive.  Throws MixedParity, InvalidOrder.
  PolySystem assemble_system(CaseSpec const& spec);

  // Substitutes identified variables and removes duplicate equations.
  PolySystem apply_symmetry(PolySystem const& system, Identification const& id);

  // Substitutes an integer value for a variable in every equation.
  PolySystem substitute(PolySystem const& system, Var v, Coeff value);

  // JSON case spec: {"case": "B", "name": ..., "constraints": [{"word": ...,
  // "rhs": {"kind": "order", "t": 3 | "inf" | "n"}}], "symmetry": "x=y=z",
  // "relators": [...], "verify_relators": true}.
  CaseSpec case_spec_from_json(nlohmann::json const& j);
  nlohmann::json to_json(CaseSpec const& spec);
  nlohmann::json to_json(PolySystem const& system);

}  // namespace halfturn
