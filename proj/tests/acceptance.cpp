// Prints one PASS/FAIL line per acceptance criterion; exits nonzero when any
// criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sys/wait.h>

#include "fixture_check.hpp"
#include "halfturn/presentation.hpp"
#include "halfturn/trace.hpp"
#include "halfturn/two_gen.hpp"

using namespace halfturn;
using testing::cplx;

namespace {
  struct Outcome {
    bool        pass = true;
    std::string detail;

    void require(bool ok, std::string const& what) {
      if (!ok) {
        pass = false;
        if (!detail.empty()) {
          detail += "; ";
        }
        detail += what;
      }
    }
  };

  std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }

  void collect(Outcome& o, std::vector<testing::RunCheck> const& runs) {
    for (auto const& r : runs) {
      for (auto const& f : r.failures) {
        o.require(false, f);
      }
    }
  }

  double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
  }

  testing::RunCheck const* find_run(std::vector<testing::RunCheck> const& runs, std::optional<unsigned> order,
                                    bool infinite) {
    for (auto const& r : runs) {
      if (r.order == order && r.infinite == infinite) {
        return &r;
      }
    }
    return nullptr;
  }

  Outcome example_6a() {
    Outcome    o;
    auto const start = std::chrono::steady_clock::now();
    auto const runs  = testing::check_fixture("6a");
    double const t   = seconds_since(start);
    collect(o, runs);
    auto const& rep = runs.at(0).report;
    o.require(rep.candidates.size() == 1, "expected one candidate");
    if (!rep.candidates.empty()) {
      auto const& c = rep.candidates[0];
      Point const want{cplx(0.662359, 0.56228), cplx(0.662359, 0.56228), cplx(0.662359, 0.56228)};
      o.require(testing::distance_up_to(c.candidate.solution.point, want, "conjugation", rep.spec) <= 5e-5,
                "root away from 0.662359+0.56228i");
      o.require(c.min_poly[0] && c.min_poly[0]->coefficients == std::vector<std::int64_t>{1, -1, 0, 1},
                "minimal polynomial is not t^3 - t + 1");
      o.require(c.candidate.relators && c.candidate.relators->passed, "relators not verified");
    }
    o.require(t < 60.0, "runtime " + num(t) + " s");
    if (o.pass) {
      o.detail = "root and t^3 - t + 1 in " + num(t) + " s";
    }
    return o;
  }

  Outcome example_6b() {
    Outcome    o;
    auto const runs = testing::check_fixture("6b");
    collect(o, runs);
    auto const* n3  = find_run(runs, 3u, false);
    auto const* n2  = find_run(runs, 2u, false);
    auto const* inf = find_run(runs, std::nullopt, true);
    o.require(n3 && n2 && inf, "expected runs for n = 3, 2, inf");
    if (n3) {
      o.require(n3->report.candidates.size() == 1, "n=3 has " + std::to_string(n3->report.candidates.size()) + " candidates");
      if (!n3->report.candidates.empty()) {
        double const s3 = std::numbers::sqrt3;
        Point const  want{cplx(s3, 1.0) / 2.0, cplx(-s3, 1.0) / 2.0, 0.0};
        o.require(testing::distance_up_to(n3->report.candidates[0].candidate.solution.point, want, "orbit",
                                          n3->report.spec)
                      <= 1e-8,
                  "n=3 candidate differs from ((i+sqrt3)/2, (i-sqrt3)/2, 0)");
      }
    }
    if (n2) {
      o.require(n2->report.candidates.empty(), "n=2 has candidates");
    }
    if (inf) {
      o.require(inf->report.candidates.empty(), "n=inf has candidates");
    }
    if (o.pass) {
      o.detail = "n=3 unique candidate; n=2 and n=inf empty";
    }
    return o;
  }

  Outcome example_6c() {
    Outcome    o;
    auto const runs = testing::check_fixture("6c");
    collect(o, runs);
    for (unsigned n : {4u, 5u, 6u}) {
      auto const* r = find_run(runs, n, false);
      o.require(r != nullptr, "missing n=" + std::to_string(n));
      if (r) {
        o.require(!r->report.candidates.empty(), "n=" + std::to_string(n) + " has no candidate");
        for (auto const& c : r->report.candidates) {
          double const err = testing::closed_form_error(c.candidate.solution.point, n);
          o.require(err <= 1e-8, "n=" + std::to_string(n) + " closed form error " + num(err));
        }
      }
    }
    auto const* r3 = find_run(runs, 3u, false);
    o.require(r3 != nullptr, "missing n=3");
    if (r3) {
      for (auto const& s : r3->report.solve.solutions) {
        o.require(s.real_triple, "n=3 has a non-real solution");
      }
    }
    if (o.pass) {
      o.detail = "closed form holds for n=4,5,6; n=3 all real";
    }
    return o;
  }

  Outcome examples_6efg() {
    Outcome o;
    double  worst_relator = 0.0;
    for (auto const* name : {"6e", "6f", "6g"}) {
      auto const runs = testing::check_fixture(name);
      collect(o, runs);
      auto const& rep = runs.at(0).report;
      o.require(!rep.candidates.empty(), std::string(name) + " has no candidate");
      for (auto const& c : rep.candidates) {
        o.require(c.candidate.relators.has_value(), std::string(name) + " relators not checked");
        if (c.candidate.relators) {
          for (auto const& r : c.candidate.relators->residuals) {
            worst_relator = std::max(worst_relator, r.residual);
          }
        }
      }
    }
    o.require(worst_relator <= 1e-6, "relator residual " + num(worst_relator));

    // the stated values themselves
    auto const e = testing::check_fixture("6e").at(0).report;
    if (!e.candidates.empty()) {
      auto const& p = e.candidates[0].candidate.solution.point;
      Point const sq{p[0] * p[0], p[1] * p[1], p[2] * p[2]};
      Point const want{cplx(1.0, 1.0), cplx(1.0, 1.0), cplx(0.0, 2.0)};
      o.require(testing::distance_up_to(sq, want, "conjugation", e.spec) <= 1e-8, "6E squares");
    }
    if (o.pass) {
      o.detail = "6E, 6F, 6G candidates match; worst relator residual " + num(worst_relator);
    }
    return o;
  }

  Outcome printed_systems() {
    Outcome o;
    for (unsigned n : {3u, 4u, 5u, 7u}) {
      for (auto const* name : {"6b", "6d", "6e"}) {
        for (auto const& f : testing::printed_system_failures(name, n)) {
          o.require(false, f);
        }
      }
    }
    if (o.pass) {
      o.detail = "6B, 6D, 6E term for term";
    }
    return o;
  }

  Outcome trace_oracle() {
    Outcome                            o;
    std::mt19937_64                    rng(20240611);
    std::uniform_int_distribution<int> len(0, 12);
    std::vector<Representation>        reps;
    std::vector<TracePoint>            points;
    for (int i = 0; i < 10; ++i) {
      reps.push_back(build_representation(testing::random_params(rng)));
      auto const& r = reps.back();
      points.push_back({(r.a * r.b).trace(), (r.a * r.c).trace(), (r.b * r.c).trace(), (r.a * r.b * r.c).trace()});
    }
    double   worst = 0.0;
    unsigned prop_failures = 0;
    auto     single = [](Generator g, bool inv) { return Word({Letter{g, inv}}); };
    for (int n = 0; n < 1000; ++n) {
      Word const         w  = testing::random_reduced_word(rng, static_cast<std::size_t>(len(rng)));
      Word const         v  = testing::random_word(rng, static_cast<std::size_t>(len(rng)));
      TraceElement const t  = trace_of(w);
      SignedWord const   nf = normalize(w);
      for (std::size_t i = 0; i < reps.size(); ++i) {
        worst = std::max(worst, testing::rel_err(eval_trace(t, points[i]), eval_word_matrix(reps[i], w).trace()));
      }
      bool const even = nf.word.size() % 2 == 0;
      prop_failures += (even ? t.odd.is_zero() : t.even.is_zero()) ? 0 : 1;
      prop_failures += trace_of(concat(w, v)) == trace_of(concat(v, w)) ? 0 : 1;
      prop_failures += trace_of(invert(w)) == t ? 0 : 1;
      Word rev = nf.word;
      std::reverse(rev.letters.begin(), rev.letters.end());
      TraceElement const fwd = trace_of(nf.word);
      prop_failures += trace_of(rev) == (even ? fwd : -fwd) ? 0 : 1;
      for (auto g : {Generator::a, Generator::b, Generator::c}) {
        prop_failures += trace_of(concat(concat(single(g, false), w), single(g, true))) == t ? 0 : 1;
      }
    }
    o.require(worst <= 1e-9, "worst relative error " + num(worst));
    o.require(prop_failures == 0, std::to_string(prop_failures) + " symbolic property failures");
    if (o.pass) {
      o.detail = "1000 words x 10 points, worst relative error " + num(worst);
    }
    return o;
  }

  Outcome fricke() {
    Outcome         o;
    std::mt19937_64 rng(77);
    double          worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      auto const  par = testing::random_params(rng);
      auto const  rep = build_representation(par);
      cplx const  w   = (rep.a * rep.b * rep.c).trace();
      auto const& r   = par.rho;
      worst = std::max(worst, testing::rel_err(w * w, 4.0 - r[0] * r[0] - r[1] * r[1] - r[2] * r[2] - r[0] * r[1] * r[2]));
    }
    o.require(worst <= 1e-9, "worst relative error " + num(worst));
    Poly3 const x = Poly3::variable(Var::x), y = Poly3::variable(Var::y), z = Poly3::variable(Var::z);
    o.require(trace_of(parse_word("babcbcaca")) == TraceElement(Poly3{}, x * y * z + Poly3(1)),
              "tr(A1 B1 C1) != tr(ABC)(xyz + 1)");
    if (o.pass) {
      o.detail = "100 triples, worst relative error " + num(worst) + "; 6G factorization holds";
    }
    return o;
  }

  Outcome two_generator() {
    Outcome         o;
    std::mt19937_64 rng(8);
    double          worst_gamma = 0.0, worst_trace = 0.0;
    for (int n = 0; n < 100; ++n) {
      auto const  par    = testing::random_params(rng);
      auto const  rep    = build_representation(par);
      auto const [f, g]  = two_generator_pair(rep);
      auto const& r      = par.rho;
      worst_gamma = std::max(worst_gamma, testing::rel_err(commutator(f, g).trace() - 2.0, to_gm(par).gamma));
      worst_trace = std::max({worst_trace, testing::rel_err(f.trace(), r[1]), testing::rel_err(g.trace(), r[2]),
                              testing::rel_err((f * g).trace(), -r[0])});
    }
    o.require(worst_gamma <= 1e-8, "gamma error " + num(worst_gamma));
    o.require(worst_trace <= 1e-9, "trace error " + num(worst_trace));
    if (o.pass) {
      o.detail = "gamma error " + num(worst_gamma) + ", trace error " + num(worst_trace);
    }
    return o;
  }

  Outcome abelianization() {
    Outcome    o;
    auto const start = std::chrono::steady_clock::now();
    auto       inv   = [](char const* file) {
      return abelianize(presentation_from_json(testing::load_json(std::string("presentations/") + file)));
    };
    auto const picard = inv("picard.json");
    auto const three  = inv("involutions3.json");
    auto const free3  = inv("free3.json");
    double const t    = seconds_since(start);
    o.require(picard.free_rank == 0 && picard.torsion == std::vector<std::int64_t>{2, 2}, "Picard gives " + picard.to_string());
    o.require(three.free_rank == 0 && three.torsion == std::vector<std::int64_t>{2, 2, 2}, "<a,b,c | a^2,b^2,c^2> gives " + three.to_string());
    o.require(free3.free_rank == 3 && free3.torsion.empty(), "free group gives " + free3.to_string());
    o.require(t < 1.0, "took " + num(t) + " s");
    if (o.pass) {
      o.detail = picard.to_string() + ", " + three.to_string() + ", " + free3.to_string();
    }
    return o;
  }

  std::pair<int, std::string> capture(std::string const& cmd) {
    std::string out;
    FILE*       pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) {
      return {-1, out};
    }
    std::array<char, 4096> buf{};
    std::size_t            n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
      out.append(buf.data(), n);
    }
    int const status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
  }

  Outcome determinism() {
    Outcome o;
    for (auto const* name : {"6a", "6e"}) {
      std::string const cmd = std::string("'") + HALFTURN_CLI + "' --seed 7 pipeline '"
                              + testing::data_path(std::string("fixtures/") + name + ".json") + "' 2>/dev/null";
      auto const a = capture(cmd);
      auto const b = capture(cmd);
      o.require(a.first == 0 && b.first == 0, std::string(name) + " pipeline failed");
      o.require(a.second == b.second && !a.second.empty(), std::string(name) + " outputs differ");
    }
    std::string const par = std::string("'") + HALFTURN_CLI + "' --seed 7 pipeline '"
                            + testing::data_path("fixtures/6b.json") + "' --orders 2,3,inf 2>/dev/null";
    auto const a = capture(par);
    auto const b = capture(par);
    o.require(a.first == 0 && a.second == b.second, "6B sweep outputs differ");
    if (o.pass) {
      o.detail = "byte-identical pipeline output for 6A, 6E and the 6B sweep";
    }
    return o;
  }
}  // namespace

int main() {
  std::vector<std::pair<char const*, std::function<Outcome()>>> const criteria{
      {"6A reproduction", example_6a},
      {"6B orders 3, 2, inf", example_6b},
      {"6C sweep", example_6c},
      {"6E, 6F, 6G", examples_6efg},
      {"printed systems", printed_systems},
      {"trace oracle suite", trace_oracle},
      {"Fricke relation", fricke},
      {"two-generator cross-check", two_generator},
      {"abelianization", abelianization},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& e) {
      o.pass   = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
  return failed == 0 ? 0 : 1;
}
