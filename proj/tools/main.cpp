#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "halfturn/algebra_id.hpp"
#include "halfturn/cases.hpp"
#include "halfturn/error.hpp"
#include "halfturn/json_io.hpp"
#include "halfturn/pipeline.hpp"
#include "halfturn/presentation.hpp"
#include "halfturn/repr.hpp"
#include "halfturn/solver.hpp"
#include "halfturn/trace.hpp"
#include "halfturn/two_gen.hpp"
#include "halfturn/word.hpp"

namespace {

  using nlohmann::json;
  using namespace halfturn;

  constexpr char const* tool_version = "0.1.0";

  // Exit codes.
  constexpr int exit_ok          = 0;
  constexpr int exit_usage       = 1;
  constexpr int exit_computation = 2;

  class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct Globals {
    std::uint64_t         seed        = 0;
    std::optional<double> tol;
    int                   json_indent = 2;
  };

  json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw UsageError("cannot open " + path);
    }
    try {
      return json::parse(in);
    } catch (json::parse_error const& e) {
      throw ParseError(path + ": " + e.what());
    }
  }

  // Accepts "1.5", "-2i", "0.66+0.56i", "0.66-0.56i" and "re,im".
  std::complex<double> parse_complex(std::string text) {
    std::erase(text, ' ');
    auto fail = [&] { return ParseError("not a complex number: \"" + text + "\""); };
    if (text.empty()) {
      throw fail();
    }
    auto to_double = [&](std::string const& s) {
      if (s.empty() || s == "+") {
        return 1.0;
      }
      if (s == "-") {
        return -1.0;
      }
      std::size_t used = 0;
      double      v    = 0.0;
      try {
        v = std::stod(s, &used);
      } catch (std::exception const&) {
        throw fail();
      }
      if (used != s.size()) {
        throw fail();
      }
      return v;
    };
    if (auto comma = text.find(','); comma != std::string::npos) {
      return {to_double(text.substr(0, comma)), to_double(text.substr(comma + 1))};
    }
    if (text.back() != 'i') {
      return {to_double(text), 0.0};
    }
    std::string const body = text.substr(0, text.size() - 1);
    // split at the last sign that is not part of an exponent
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        return {to_double(body.substr(0, k)), to_double(body.substr(k))};
      }
    }
    return {0.0, to_double(body)};
  }

  std::vector<std::optional<unsigned>> parse_orders(std::string const& text) {
    std::vector<std::optional<unsigned>> out;
    std::stringstream                    ss(text);
    std::string                          item;
    while (std::getline(ss, item, ',')) {
      if (item == "inf") {
        out.emplace_back(std::nullopt);
        continue;
      }
      std::size_t used = 0;
      long        v    = 0;
      try {
        v = std::stol(item, &used);
      } catch (std::exception const&) {
        used = 0;
      }
      if (used != item.size() || item.empty()) {
        throw UsageError("bad order \"" + item + "\" in --orders");
      }
      if (v < 2) {
        throw InvalidOrder("element order must be at least 2, got " + item);
      }
      out.emplace_back(static_cast<unsigned>(v));
    }
    if (out.empty()) {
      throw UsageError("--orders needs at least one value");
    }
    return out;
  }

  json order_json(std::optional<unsigned> t) {
    return t ? json(*t) : json("inf");
  }

  Parameters params_from_cli(std::vector<std::string> const& rho,
                             std::vector<std::string> const& mu,
                             std::string const&              file) {
    int const given = int(!rho.empty()) + int(!mu.empty()) + int(!file.empty());
    if (given != 1) {
      throw UsageError("give exactly one of --rho, --mu, --params");
    }
    if (!file.empty()) {
      return parameters_from_json(read_json_file(file));
    }
    auto const& v = rho.empty() ? mu : rho;
    if (v.size() != 3) {
      throw UsageError("expected three values");
    }
    auto const z0 = parse_complex(v[0]), z1 = parse_complex(v[1]), z2 = parse_complex(v[2]);
    return rho.empty() ? Parameters::from_mu(z0, z1, z2) : Parameters::from_rho(z0, z1, z2);
  }

  struct Runner {
    Globals                   globals;
    std::string               subcommand;
    std::vector<std::string>  inputs;
    json                      overrides = json::object();

    json manifest() const {
      return {{"subcommand", subcommand},
              {"inputs", inputs},
              {"config", overrides},
              {"seed", globals.seed},
              {"version", tool_version}};
    }

    void emit(json result) const {
      json out{{"manifest", manifest()}, {"result", std::move(result)}};
      std::cout << out.dump(globals.json_indent) << '\n';
      // the timestamp stays off stdout so equal seeds give equal bytes
      auto stamped         = manifest();
      auto const now       = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char       buf[32]   = {};
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      stamped["timestamp"] = buf;
      std::cerr << "manifest: " << stamped.dump() << '\n';
    }
  };

  SolverConfig solver_config(Globals const& g, unsigned starts, double radius, unsigned threads) {
    SolverConfig cfg;
    cfg.starts        = starts;
    cfg.sample_radius = radius;
    cfg.rng_seed      = g.seed;
    cfg.threads       = threads;
    if (g.tol) {
      cfg.residual_tol = *g.tol;
    }
    try {
      cfg.validate();
    } catch (std::invalid_argument const& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized triangle groups: trace polynomials, representations and case systems"};
  app.set_version_flag("--version", tool_version);
  app.require_subcommand(1);

  Runner runner;
  app.add_option("--seed", runner.globals.seed, "Solver seed")->default_val(0);
  app.add_option("--tol", runner.globals.tol, "Tolerance of the subcommand (solver residual, relator or identify acceptance)");
  app.add_option("--json-indent", runner.globals.json_indent, "JSON indent, -1 for compact")->default_val(2);

  // trace
  std::string trace_word;
  auto*       trace = app.add_subcommand("trace", "Trace polynomial of a word");
  trace->add_option("word", trace_word, "Word over a, b, c; ' marks an inverse")->required();

  // repr
  std::vector<std::string> rho, mu;
  std::string              params_file;
  auto*                    repr = app.add_subcommand("repr", "Matrices A, B, C for given parameters");
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--rho", rho, "rho0 rho1 rho2 (complex, e.g. 0.66+0.56i)")->expected(3);
    sub->add_option("--mu", mu, "Complex distances mu0 mu1 mu2")->expected(3);
    sub->add_option("--params", params_file, "JSON file with rho or mu");
  };
  add_params(repr);

  // solve
  std::string spec_path, orders_text;
  unsigned    starts = 2000, threads = 0;
  double      radius = 3.0;
  auto*       solve_cmd = app.add_subcommand("solve", "Solve the polynomial system of a case spec");
  auto add_solver_opts = [&](CLI::App* sub) {
    sub->add_option("spec", spec_path, "Case spec JSON")->required();
    sub->add_option("--starts", starts, "Newton starts")->default_val(2000);
    sub->add_option("--radius", radius, "Sampling radius")->default_val(3.0);
    sub->add_option("--threads", threads, "Worker threads, 0 for all cores")->default_val(0);
    sub->add_option("--orders", orders_text, "Orders for a parametric spec, e.g. 2,3,inf");
  };
  add_solver_opts(solve_cmd);
  bool show_system = false;
  solve_cmd->add_flag("--system", show_system, "Include the assembled system");

  // verify
  std::vector<std::string> relator_words;
  std::string              verify_spec;
  auto*                    verify = app.add_subcommand("verify", "Check relators at a parameter point");
  add_params(verify);
  verify->add_option("--relator", relator_words, "Relator word (repeatable)");
  verify->add_option("--spec", verify_spec, "Take relators from a case spec");
  std::string verify_order;
  verify->add_option("--order", verify_order, "Order for a parametric spec");

  // convert
  auto* convert = app.add_subcommand("convert", "Two-generator parameters (beta_f, beta_g, gamma)");
  add_params(convert);

  // identify
  std::string value_text;
  bool        squared    = false;
  unsigned    max_degree = 8, max_height = 12;
  auto*       identify_cmd = app.add_subcommand("identify", "Minimal integer polynomial of a complex value");
  std::optional<double> value_re, value_im;
  identify_cmd->add_option("value", value_text, "Complex value, e.g. 0.66+0.56i");
  identify_cmd->add_option("--re", value_re, "Real part");
  identify_cmd->add_option("--im", value_im, "Imaginary part");
  identify_cmd->add_flag("--squared", squared, "Identify value^2");
  identify_cmd->add_option("--max-degree", max_degree)->default_val(8);
  identify_cmd->add_option("--max-height", max_height)->default_val(12);

  // abelianize
  std::string pres_path;
  long        claimed_rank = -1;
  auto*       abel = app.add_subcommand("abelianize", "Abelian invariants of a presentation");
  abel->add_option("presentation", pres_path, "Presentation JSON")->required();
  abel->add_option("--rank", claimed_rank, "Claimed number of generators to test");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Assemble, solve, filter, identify and convert");
  add_solver_opts(pipeline);
  bool no_identify = false;
  pipeline->add_flag("--no-identify", no_identify, "Skip minimal polynomials");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForVersion const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return exit_usage;
  }

  Globals const& g = runner.globals;
  if (g.json_indent < -1) {
    std::cerr << "error: --json-indent must be >= -1\n";
    return exit_usage;
  }

  try {
    if (*trace) {
      runner.subcommand = "trace";
      runner.inputs     = {trace_word};
      auto const t      = trace_of(parse_word(trace_word));
      json       r      = to_json(t);
      r["text"]         = t.to_string();
      runner.emit(std::move(r));
    } else if (*repr) {
      runner.subcommand = "repr";
      auto const p      = params_from_cli(rho, mu, params_file);
      runner.inputs     = {params_file.empty() ? to_json(p).dump() : params_file};
      runner.emit(to_json(build_representation(p)));
    } else if (*verify) {
      runner.subcommand = "verify";
      auto const p      = params_from_cli(rho, mu, params_file);
      std::vector<Word> rels;
      if (!verify_spec.empty()) {
        auto spec = case_spec_from_json(read_json_file(verify_spec));
        if (spec.is_parametric()) {
          if (verify_order.empty()) {
            throw UsageError("parametric spec: pass --order");
          }
          auto const t = parse_orders(verify_order).front();
          spec         = t ? spec.instantiate(*t) : spec.instantiate_infinite();
        }
        rels = relators(spec);
        runner.inputs.push_back(verify_spec);
      }
      for (auto const& w : relator_words) {
        rels.push_back(parse_word(w));
        runner.inputs.push_back(w);
      }
      if (rels.empty()) {
        throw UsageError("no relators given (--relator or --spec)");
      }
      double const tol = g.tol.value_or(1e-6);
      runner.overrides["tol"] = tol;
      runner.emit(to_json(verify_relators(build_representation(p), rels, tol)));
    } else if (*convert) {
      runner.subcommand = "convert";
      auto const p      = params_from_cli(rho, mu, params_file);
      runner.inputs     = {params_file.empty() ? to_json(p).dump() : params_file};
      auto const note   = index_note();
      json       r      = to_json(to_gm(p));
      r["index"]        = {{"value", "unknown"}, {"message", note.message}};
      runner.emit(std::move(r));
    } else if (*identify_cmd) {
      runner.subcommand = "identify";
      if (value_text.empty() == !(value_re || value_im)) {
        throw UsageError("give a value or --re/--im");
      }
      if (value_text.empty()) {
        value_text = nlohmann::json(to_json(std::complex<double>(value_re.value_or(0.0), value_im.value_or(0.0)))).dump();
        value_text = value_text.substr(1, value_text.size() - 2);
      }
      runner.inputs = {value_text};
      IdConfig cfg{max_degree, max_height, g.tol.value_or(1e-6)};
      runner.overrides  = {{"squared", squared}, {"max_degree", max_degree}, {"max_height", max_height},
                           {"tol", cfg.accept_tol}};
      auto const v = parse_complex(value_text);
      std::optional<MinPolyResult> r;
      try {
        r = squared ? identify_squared(v, cfg) : identify(v, cfg);
      } catch (std::invalid_argument const& e) {
        throw UsageError(e.what());
      }
      runner.emit(r ? to_json(*r) : json(nullptr));
    } else if (*abel) {
      runner.subcommand = "abelianize";
      runner.inputs     = {pres_path};
      auto const p      = presentation_from_json(read_json_file(pres_path));
      auto const inv    = abelianize(p);
      json       r{{"free_rank", inv.free_rank}, {"torsion", inv.torsion}, {"text", inv.to_string()}};
      if (claimed_rank >= 0) {
        r["rank_check"] = {{"claimed", claimed_rank},
                           {"consistent", rank_lower_bound_check(p, static_cast<std::size_t>(claimed_rank))}};
      }
      runner.emit(std::move(r));
    } else if (*solve_cmd || *pipeline) {
      runner.subcommand = *solve_cmd ? "solve" : "pipeline";
      runner.inputs     = {spec_path};
      auto const cfg    = solver_config(g, starts, radius, threads);
      runner.overrides  = {{"starts", cfg.starts}, {"radius", cfg.sample_radius},
                           {"residual_tol", cfg.residual_tol}};
      auto const spec   = case_spec_from_json(read_json_file(spec_path));

      std::vector<std::optional<unsigned>> orders;
      if (!orders_text.empty()) {
        orders                     = parse_orders(orders_text);
        runner.overrides["orders"] = orders_text;
        if (!spec.is_parametric()) {
          throw UsageError("--orders given but the spec has no parametric order");
        }
      } else if (spec.is_parametric()) {
        throw UsageError("parametric spec: pass --orders");
      }

      if (*solve_cmd) {
        auto solve_one = [&](PolySystem const& system, SolveResult const& r) {
          json j = to_json(r);
          if (show_system) {
            j["system"] = to_json(system);
          }
          return j;
        };
        if (orders.empty()) {
          auto const system = apply_symmetry(assemble_system(spec), spec.symmetry);
          runner.emit(solve_one(system, solve(system, cfg)));
        } else {
          json rows = json::array();
          for (auto const& row : solve_parametric(spec, orders, cfg)) {
            json j     = solve_one(row.system, row.result);
            j["order"] = order_json(row.order);
            rows.push_back(std::move(j));
          }
          runner.emit(std::move(rows));
        }
      } else {
        PipelineConfig pc;
        pc.solver   = cfg;
        pc.identify = !no_identify;
        if (orders.empty()) {
          auto const report = run_pipeline(spec, pc);
          if (report.candidates.empty()) {
            std::cerr << "no complex candidates\n";
          }
          runner.emit(to_json(report));
        } else {
          json rows = json::array();
          for (auto const& t : orders) {
            auto const report = run_pipeline(spec, t, pc);
            if (report.candidates.empty()) {
              std::cerr << "order " << order_json(t).dump() << ": no complex candidates\n";
            }
            rows.push_back(to_json(report));
          }
          runner.emit(std::move(rows));
        }
      }
    }
  } catch (UsageError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (ParseError const& e) {
    std::cerr << "ParseError: " << e.what() << '\n';
    return exit_usage;
  } catch (SpecError const& e) {
    std::cerr << "SpecError: " << e.what() << '\n';
    return exit_usage;
  } catch (DegenerateAxes const& e) {
    std::cerr << "DegenerateAxes: " << e.what() << '\n';
    return exit_computation;
  } catch (MixedParity const& e) {
    std::cerr << "MixedParity: " << e.what() << '\n';
    return exit_computation;
  } catch (InvalidOrder const& e) {
    std::cerr << "InvalidOrder: " << e.what() << '\n';
    return exit_computation;
  } catch (ComputationError const& e) {
    std::cerr << "ComputationError: " << e.what() << '\n';
    return exit_computation;
  } catch (json::exception const& e) {
    std::cerr << "ParseError: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_ok;
}
