#include "halfturn/cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

#include "halfturn/error.hpp"
#include "halfturn/json_io.hpp"
#include "halfturn/trace.hpp"

namespace halfturn {

  double rhs_value(Rhs const& rhs) {
    switch (rhs.kind) {
      case RhsKind::trivial: return 2.0;
      case RhsKind::parabolic: return -2.0;
      case RhsKind::half_turn: return 0.0;
      case RhsKind::order: break;
    }
    if (rhs.parametric) {
      throw InvalidOrder("order parameter has not been instantiated");
    }
    if (!rhs.order) {
      return -2.0;
    }
    unsigned const t = *rhs.order;
    if (t < 2) {
      throw InvalidOrder("element order must be at least 2, got " + std::to_string(t));
    }
    // exact values where cos(pi/t) is rational
    if (t == 2) {
      return 0.0;
    }
    if (t == 3) {
      return -1.0;
    }
    return -2.0 * std::cos(std::numbers::pi / t);
  }

  std::string to_string(CaseId id) {
    switch (id) {
      case CaseId::A: return "A";
      case CaseId::B: return "B";
      case CaseId::C: return "C";
      case CaseId::D: return "D";
      case CaseId::E: return "E";
      case CaseId::F: return "F";
      case CaseId::G: return "G";
      case CaseId::H: return "H";
      case CaseId::custom: return "custom";
    }
    return "custom";
  }

  CaseId case_id_from_string(std::string const& s) {
    static std::map<std::string, CaseId> const names{{"A", CaseId::A},
                                                     {"B", CaseId::B},
                                                     {"C", CaseId::C},
                                                     {"D", CaseId::D},
                                                     {"E", CaseId::E},
                                                     {"F", CaseId::F},
                                                     {"G", CaseId::G},
                                                     {"H", CaseId::H},
                                                     {"custom", CaseId::custom},
                                                     {"Custom", CaseId::custom}};
    auto it = names.find(s);
    if (it == names.end()) {
      throw ParseError("unknown case \"" + s + "\"");
    }
    return it->second;
  }

  Identification parse_identification(std::string const& text) {
    Identification id = identity_identification;
    std::vector<Var> group;
    auto flush = [&] {
      if (group.empty()) {
        return;
      }
      Var const rep = *std::min_element(group.begin(), group.end());
      for (Var v : group) {
        id[static_cast<std::size_t>(v)] = rep;
      }
      group.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
      char const ch = text[i];
      if (ch == 'x' || ch == 'y' || ch == 'z') {
        group.push_back(static_cast<Var>(ch - 'x'));
      } else if (ch == ',' || ch == ';') {
        flush();
      } else if (ch != '=' && ch != ' ') {
        throw ParseError(std::string("unexpected character '") + ch + "' in symmetry", i + 1);
      }
    }
    flush();
    return id;
  }

  std::string to_string(Identification const& id) {
    std::string out;
    for (std::size_t rep = 0; rep < 3; ++rep) {
      std::string cls;
      for (std::size_t v = 0; v < 3; ++v) {
        if (static_cast<std::size_t>(id[v]) == rep) {
          cls += cls.empty() ? "" : "=";
          cls += static_cast<char>('x' + v);
        }
      }
      if (cls.size() > 1) {
        out += out.empty() ? "" : ",";
        out += cls;
      }
    }
    return out;
  }

  std::array<Var, 3> parse_permutation(std::string const& text) {
    std::array<Var, 3> perm{};
    std::string sorted = text;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != "xyz") {
      throw ParseError("a permutation lists x, y and z exactly once, got \"" + text + "\"");
    }
    for (std::size_t i = 0; i < 3; ++i) {
      perm[i] = static_cast<Var>(text[i] - 'x');
    }
    return perm;
  }

  bool CaseSpec::is_parametric() const {
    return std::any_of(constraints.begin(), constraints.end(), [](auto const& c) {
      return c.rhs.parametric;
    });
  }

  CaseSpec CaseSpec::instantiate(unsigned t) const {
    CaseSpec out = *this;
    for (auto& c : out.constraints) {
      if (c.rhs.parametric) {
        c.rhs = Rhs::of_order(t);
      }
    }
    return out;
  }

  CaseSpec CaseSpec::instantiate_infinite() const {
    CaseSpec out = *this;
    for (auto& c : out.constraints) {
      if (c.rhs.parametric) {
        c.rhs = Rhs::infinite_order();
      }
    }
    return out;
  }

  namespace {
    enum class RhsClass { two, order, zero, minus_two };
    enum class Parity { even, odd };

    struct Slot {
      RhsClass cls;
      Parity   parity;
    };

    bool matches(Rhs const& rhs, RhsClass cls) {
      switch (cls) {
        case RhsClass::two: return rhs.kind == RhsKind::trivial;
        case RhsClass::order:
          return rhs.kind == RhsKind::order || rhs.kind == RhsKind::half_turn
                 || rhs.kind == RhsKind::parabolic;
        case RhsClass::zero:
          return rhs.kind == RhsKind::half_turn
                 || (rhs.kind == RhsKind::order && !rhs.parametric && rhs.order == 2u);
        case RhsClass::minus_two:
          return rhs.kind == RhsKind::parabolic
                 || (rhs.kind == RhsKind::order && !rhs.parametric && !rhs.order);
      }
      return false;
    }

    std::vector<Slot> pattern(CaseId id) {
      using enum RhsClass;
      using enum Parity;
      switch (id) {
        case CaseId::A: return {{two, even}, {two, even}, {two, even}};
        case CaseId::B: return {{two, even}, {order, even}, {order, even}};
        case CaseId::C: return {{order, even}, {order, even}, {order, even}};
        case CaseId::D: return {{order, even}, {order, even}, {order, odd}};
        case CaseId::E: return {{zero, even}, {zero, even}, {minus_two, even}};
        case CaseId::F: return {{two, even}, {minus_two, even}, {minus_two, even}};
        case CaseId::G: return {{zero, odd}, {minus_two, even}, {minus_two, even}};
        case CaseId::H: return {{order, even}, {minus_two, even}, {zero, odd}};
        case CaseId::custom: return {};
      }
      return {};
    }
  }  // namespace

  void validate(CaseSpec const& spec) {
    if (spec.constraints.size() != 3) {
      throw SpecError("a case spec needs exactly three constraints, got "
                      + std::to_string(spec.constraints.size()));
    }
    for (auto const& c : spec.constraints) {
      if (c.rhs.kind == RhsKind::order && !c.rhs.parametric && c.rhs.order && *c.rhs.order < 2) {
        throw InvalidOrder("element order must be at least 2, got " + std::to_string(*c.rhs.order));
      }
    }
    auto const slots = pattern(spec.id);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      auto const& c      = spec.constraints[i];
      auto const  parity = normalize(c.word).word.size() % 2 == 0 ? Parity::even : Parity::odd;
      if (!matches(c.rhs, slots[i].cls) || parity != slots[i].parity) {
        throw SpecError("constraint " + std::to_string(i + 1) + " does not fit the pattern of case "
                        + to_string(spec.id));
      }
    }
    if (spec.id == CaseId::B) {
      auto const& r1 = spec.constraints[1].rhs;
      auto const& r2 = spec.constraints[2].rhs;
      if (r1.kind != r2.kind || r1.parametric != r2.parametric || r1.order != r2.order) {
        throw SpecError("case B uses the same order t for its second and third constraints");
      }
    }
  }

  std::vector<Word> relators(CaseSpec const& spec) {
    std::vector<Word> out{parse_word("aa"), parse_word("bb"), parse_word("cc")};
    for (auto const& c : spec.constraints) {
      switch (c.rhs.kind) {
        case RhsKind::trivial: out.push_back(c.word); break;
        case RhsKind::half_turn: out.push_back(power(c.word, 2)); break;
        case RhsKind::order:
          if (!c.rhs.parametric && c.rhs.order) {
            out.push_back(power(c.word, *c.rhs.order));
          }
          break;
        case RhsKind::parabolic: break;
      }
    }
    out.insert(out.end(), spec.extra_relators.begin(), spec.extra_relators.end());
    return out;
  }

  std::string to_string(Provenance p) {
    switch (p) {
      case Provenance::direct: return "direct";
      case Provenance::odd_squared: return "odd-squared";
      case Provenance::odd_factored: return "odd-factored";
    }
    return "direct";
  }

  std::vector<Var> PolySystem::unknowns() const {
    std::set<Var> used;
    for (auto const& eq : equations) {
      for (Var v : {Var::x, Var::y, Var::z}) {
        if (eq.lhs.uses(v)) {
          used.insert(v);
        }
      }
    }
    return {used.begin(), used.end()};
  }

  namespace {
    Poly3 positive_leading(Poly3 p) {
      if (!p.is_zero() && p.terms().rbegin()->second < 0) {
        return -p;
      }
      return p;
    }

    void add_case_flags(CaseSpec const& spec, PolySystem& system) {
      bool cusped = false;
      for (auto const& c : spec.constraints) {
        if (c.rhs.kind == RhsKind::parabolic
            || (c.rhs.kind == RhsKind::order && !c.rhs.parametric && !c.rhs.order)) {
          cusped = true;
        }
      }
      system.flags["cusped"] = cusped;
      if (spec.id == CaseId::C) {
        double sum   = 0.0;
        bool   known = true;
        for (auto const& c : spec.constraints) {
          if (c.rhs.kind == RhsKind::order && c.rhs.order && !c.rhs.parametric) {
            sum += 1.0 / *c.rhs.order;
          } else if (c.rhs.kind == RhsKind::half_turn) {
            sum += 0.5;
          } else if (c.rhs.kind != RhsKind::order || c.rhs.parametric) {
            known = false;
          }
        }
        if (known) {
          system.flags["compact"] = sum < 1.0;
        }
      }
    }
  }  // namespace

  PolySystem assemble_system(CaseSpec const& spec) {
    PolySystem system;
    system.equations.reserve(spec.constraints.size());
    for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
      auto const&        c = spec.constraints[i];
      TraceElement const t = trace_of(c.word);
      double const       r = rhs_value(c.rhs);
      Equation           eq;
      eq.constraint = i;
      if (t.odd.is_zero()) {
        eq.lhs        = t.even;
        eq.rhs        = r;
        eq.provenance = Provenance::direct;
      } else if (t.even.is_zero()) {
        if (r == 0.0) {
          eq.lhs        = t.odd;
          eq.rhs        = 0.0;
          eq.provenance = Provenance::odd_factored;
          system.warnings.push_back("constraint " + std::to_string(i + 1)
                                    + ": branch tr(ABC) = 0 discarded");
        } else {
          eq.lhs        = t.odd * t.odd * fricke_poly();
          eq.rhs        = r * r;
          eq.provenance = Provenance::odd_squared;
        }
      } else {
        throw MixedParity("constraint " + std::to_string(i + 1) + " (" + to_string(c.word)
                          + ") has a trace with both even and odd parts");
      }
      if (eq.rhs == 0.0) {
        eq.lhs = positive_leading(std::move(eq.lhs));
      }
      system.equations.push_back(std::move(eq));
    }
    add_case_flags(spec, system);
    return system;
  }

  PolySystem apply_symmetry(PolySystem const& system, Identification const& id) {
    PolySystem out;
    out.warnings = system.warnings;
    out.flags    = system.flags;
    for (std::size_t v = 0; v < 3; ++v) {
      out.identification[v] = id[static_cast<std::size_t>(system.identification[v])];
    }
    for (auto const& eq : system.equations) {
      Equation renamed = eq;
      renamed.lhs      = eq.lhs.rename(id);
      if (renamed.rhs == 0.0) {
        renamed.lhs = positive_leading(std::move(renamed.lhs));
      }
      bool const duplicate
          = std::any_of(out.equations.begin(), out.equations.end(), [&](Equation const& e) {
              return e.lhs == renamed.lhs && e.rhs == renamed.rhs;
            });
      if (!duplicate) {
        out.equations.push_back(std::move(renamed));
      }
    }
    return out;
  }

  PolySystem substitute(PolySystem const& system, Var v, Coeff value) {
    PolySystem out = system;
    for (auto& eq : out.equations) {
      eq.lhs = eq.lhs.substitute(v, value);
    }
    return out;
  }

  namespace {
    Rhs rhs_from_json(nlohmann::json const& j) {
      auto const kind = j.at("kind").get<std::string>();
      if (kind == "trivial") {
        return Rhs::trivial();
      }
      if (kind == "parabolic") {
        return Rhs::parabolic();
      }
      if (kind == "half_turn" || kind == "halfturn") {
        return Rhs::half_turn();
      }
      if (kind == "order") {
        auto const& t = j.at("t");
        if (t.is_number_integer()) {
          auto const value = t.get<long long>();
          if (value < 2) {
            throw InvalidOrder("element order must be at least 2, got " + std::to_string(value));
          }
          return Rhs::of_order(static_cast<unsigned>(value));
        }
        if (t.is_string() && t.get<std::string>() == "inf") {
          return Rhs::infinite_order();
        }
        if (t.is_string()) {
          return Rhs::parameter();
        }
        throw ParseError("order \"t\" must be an integer, \"inf\" or a parameter name");
      }
      throw ParseError("unknown rhs kind \"" + kind + "\"");
    }

    nlohmann::json to_json(Rhs const& rhs) {
      switch (rhs.kind) {
        case RhsKind::trivial: return {{"kind", "trivial"}};
        case RhsKind::parabolic: return {{"kind", "parabolic"}};
        case RhsKind::half_turn: return {{"kind", "half_turn"}};
        case RhsKind::order: break;
      }
      nlohmann::json j{{"kind", "order"}};
      if (rhs.parametric) {
        j["t"] = "n";
      } else if (rhs.order) {
        j["t"] = *rhs.order;
      } else {
        j["t"] = "inf";
      }
      return j;
    }
  }  // namespace

  CaseSpec case_spec_from_json(nlohmann::json const& j) {
    CaseSpec spec;
    try {
      spec.id   = case_id_from_string(j.value("case", std::string("custom")));
      spec.name = j.value("name", std::string());
      for (auto const& c : j.at("constraints")) {
        spec.constraints.push_back({parse_word(c.at("word").get<std::string>()), rhs_from_json(c.at("rhs"))});
      }
      if (j.contains("symmetry")) {
        spec.symmetry = parse_identification(j.at("symmetry").get<std::string>());
      }
      if (j.contains("permutations")) {
        for (auto const& perm : j.at("permutations")) {
          spec.permutations.push_back(parse_permutation(perm.get<std::string>()));
        }
      }
      if (j.contains("relators")) {
        for (auto const& r : j.at("relators")) {
          spec.extra_relators.push_back(parse_word(r.get<std::string>()));
        }
      }
      spec.verify_relators = j.value("verify_relators", true);
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(std::string("malformed case spec: ") + e.what());
    }
    validate(spec);
    return spec;
  }

  nlohmann::json to_json(CaseSpec const& spec) {
    nlohmann::json j;
    j["case"] = to_string(spec.id);
    if (!spec.name.empty()) {
      j["name"] = spec.name;
    }
    auto constraints = nlohmann::json::array();
    for (auto const& c : spec.constraints) {
      constraints.push_back({{"word", to_string(c.word)}, {"rhs", to_json(c.rhs)}});
    }
    j["constraints"] = std::move(constraints);
    if (spec.symmetry != identity_identification) {
      j["symmetry"] = to_string(spec.symmetry);
    }
    if (!spec.permutations.empty()) {
      auto perms = nlohmann::json::array();
      for (auto const& perm : spec.permutations) {
        std::string text;
        for (Var v : perm) {
          text += static_cast<char>('x' + static_cast<int>(v));
        }
        perms.push_back(text);
      }
      j["permutations"] = std::move(perms);
    }
    if (!spec.extra_relators.empty()) {
      auto rel = nlohmann::json::array();
      for (auto const& r : spec.extra_relators) {
        rel.push_back(to_string(r));
      }
      j["relators"] = std::move(rel);
    }
    if (!spec.verify_relators) {
      j["verify_relators"] = false;
    }
    return j;
  }

  nlohmann::json to_json(PolySystem const& system) {
    nlohmann::json j;
    auto           eqs = nlohmann::json::array();
    for (auto const& eq : system.equations) {
      eqs.push_back({{"lhs", halfturn::to_json(eq.lhs)},
                     {"rhs", eq.rhs},
                     {"text", eq.lhs.to_string() + " = " + nlohmann::json(eq.rhs).dump()},
                     {"provenance", to_string(eq.provenance)},
                     {"constraint", eq.constraint}});
    }
    j["equations"]      = std::move(eqs);
    j["identification"] = to_string(system.identification);
    j["warnings"]       = system.warnings;
    j["flags"]          = system.flags;
    return j;
  }

}  // namespace halfturn
