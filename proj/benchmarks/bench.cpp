#include <benchmark/benchmark.h>

#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "halfturn/algebra_id.hpp"
#include "halfturn/cases.hpp"
#include "halfturn/presentation.hpp"
#include "halfturn/solver.hpp"
#include "halfturn/trace.hpp"

using namespace halfturn;

namespace {
  CaseSpec fixture(char const* name) {
    std::ifstream in(std::string(HALFTURN_DATA_DIR) + "/fixtures/" + name + ".json");
    return case_spec_from_json(nlohmann::json::parse(in));
  }

  Word random_word(std::mt19937_64& rng, std::size_t length) {
    std::uniform_int_distribution<int> gen(0, 2), flag(0, 1);
    Word                               w;
    for (std::size_t i = 0; i < length; ++i) {
      w.letters.push_back({static_cast<Generator>(gen(rng)), flag(rng) == 1});
    }
    return w;
  }

  // Fresh engine per iteration, so this measures the uncached recursion.
  void trace_cold(benchmark::State& state) {
    std::mt19937_64 rng(1);
    Word const      w = random_word(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
      TraceEngine engine;
      benchmark::DoNotOptimize(engine.trace_of(w));
    }
  }
  BENCHMARK(trace_cold)->Arg(8)->Arg(16)->Arg(24);

  void trace_cached(benchmark::State& state) {
    std::mt19937_64 rng(1);
    Word const      w = random_word(rng, 24);
    TraceEngine     engine;
    engine.trace_of(w);
    for (auto _ : state) {
      benchmark::DoNotOptimize(engine.trace_of(w));
    }
  }
  BENCHMARK(trace_cached);

  void solve_fixture(benchmark::State& state, char const* name) {
    auto const spec = fixture(name);
    auto const sys  = apply_symmetry(assemble_system(spec), spec.symmetry);
    SolverConfig cfg;
    cfg.starts = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
      benchmark::DoNotOptimize(solve(sys, cfg));
    }
  }
  BENCHMARK_CAPTURE(solve_fixture, 6e, "6e")->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
  BENCHMARK_CAPTURE(solve_fixture, 6g, "6g")->Arg(2000)->Unit(benchmark::kMillisecond);

  void identify_value(benchmark::State& state) {
    std::complex<double> const v{0.6623589786223730, 0.5622795120623012};
    for (auto _ : state) {
      benchmark::DoNotOptimize(identify(v));
    }
  }
  BENCHMARK(identify_value)->Unit(benchmark::kMillisecond);

  void abelianize_picard(benchmark::State& state) {
    std::ifstream in(std::string(HALFTURN_DATA_DIR) + "/presentations/picard.json");
    auto const    p = presentation_from_json(nlohmann::json::parse(in));
    for (auto _ : state) {
      benchmark::DoNotOptimize(abelianize(p));
    }
  }
  BENCHMARK(abelianize_picard);
}  // namespace

BENCHMARK_MAIN();
