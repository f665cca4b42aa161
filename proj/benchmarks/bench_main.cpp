#include <benchmark/benchmark.h>

#include <random>

#include "charvar/count.hpp"
#include "charvar/oracle.hpp"
#include "charvar/subsystems.hpp"

using namespace charvar;

namespace {

ProblemSpec override_spec(const char* group, std::map<std::string, bool> o) {
  ProblemSpec s;
  s.rd = build_root_datum(group);
  s.g = 1;
  s.n = 2;
  s.m = 1;
  s.overrides = std::move(o);
  return s;
}

ProblemSpec gl_spec(std::size_t n) {
  ProblemSpec s;
  s.rd = general_linear(n);
  s.g = 1;
  s.n = 2;
  s.m = 1;
  std::vector<std::string> symbols;
  std::string prod, diag = "diag(";
  for (std::size_t i = 0; i < n; ++i) {
    symbols.push_back("a" + std::to_string(i));
    prod += (i ? "*" : "") + symbols.back();
    diag += (i ? ", " : "") + symbols.back();
  }
  s.eigenvalues = EigenvalueDatum::parse(symbols, {prod + " = 1"});
  s.classes = {parse_torus_element(s.rd, s.eigenvalues, diag + ")")};
  return s;
}

void BM_count_gl(benchmark::State& st) {
  const ProblemSpec s = gl_spec(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(count_polynomial(s));
}
BENCHMARK(BM_count_gl)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_count_so5(benchmark::State& st) {
  const ProblemSpec s = override_spec(
      "SO(5)", {{"C2", true}, {"A1xA1", true}, {"A1[long]", false}, {"A1[short]", false}, {"empty", false}});
  for (auto _ : st) benchmark::DoNotOptimize(count_polynomial(s));
}
BENCHMARK(BM_count_so5)->Unit(benchmark::kMillisecond);

void BM_count_g2(benchmark::State& st) {
  const ProblemSpec s = override_spec("G2(sc)", {{"G2", true},
                                                 {"A2", true},
                                                 {"A1xA1", true},
                                                 {"A1[long]", false},
                                                 {"A1[short]", false},
                                                 {"empty", false}});
  for (auto _ : st) benchmark::DoNotOptimize(count_polynomial(s));
}
BENCHMARK(BM_count_g2)->Unit(benchmark::kMillisecond);

void BM_poset(benchmark::State& st, char family, std::size_t rank) {
  const RootDatum rd = cartan_type(family, rank, true);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_closed_subsystems(rd));
}
BENCHMARK_CAPTURE(BM_poset, B4, 'B', 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_poset, D4, 'D', 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_poset, F4, 'F', 4)->Unit(benchmark::kMillisecond);

void BM_smith(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> e(-20, 20);
  IntMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = e(rng);
  for (auto _ : st) benchmark::DoNotOptimize(smith_normal_form(M));
}
BENCHMARK(BM_smith)->RangeMultiplier(2)->Range(4, 16);

void BM_brute_force_gl2(benchmark::State& st) {
  const auto G = FiniteGroupModel::create(GroupKind::GL2, static_cast<unsigned>(st.range(0)));
  const auto C = semisimple_class(G, {2, G.field().inv(2)});
  for (auto _ : st) benchmark::DoNotOptimize(brute_force_count(G, 1, {&C}));
}
BENCHMARK(BM_brute_force_gl2)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
