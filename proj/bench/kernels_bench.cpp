// Serial reference vs OpenMP kernels on the state cube.

#include <benchmark/benchmark.h>

#include "knotbound/corpus.hpp"
#include "knotbound/kernels.hpp"

namespace {

const kb::Diagram& sample(int which) {
  static const auto corpus = kb::ingest_corpus(kb::data_path("genus_two.csv"));
  static const auto small = kb::ingest_corpus(kb::data_path("knots_10.csv"));
  static const kb::Diagram d10 = kb::find_entry(small, "10_132")->diagram;
  static const kb::Diagram d11 = kb::find_entry(corpus, "11n95")->diagram;
  static const kb::Diagram d12 = kb::find_entry(corpus, "12n253")->diagram;
  return which == 10 ? d10 : which == 11 ? d11 : d12;
}

template <kb::StateHistogram (*F)(const kb::StateTable&)>
void histogram(benchmark::State& st) {
  const kb::StateTable t = kb::state_table(sample(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(F(t).counts.data());
  st.SetItemsProcessed(st.iterations() * (std::int64_t(1) << t.crossings));
}

template <kb::CubeLabels (*F)(const kb::StateTable&)>
void cube(benchmark::State& st) {
  const kb::StateTable t = kb::state_table(sample(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(F(t).labels.data());
  st.SetItemsProcessed(st.iterations() * (std::int64_t(1) << t.crossings));
}

}  // namespace

BENCHMARK(histogram<kb::state_histogram_serial>)->Name("histogram/serial")->Arg(10)->Arg(11)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(histogram<kb::state_histogram_parallel>)->Name("histogram/omp")->Arg(10)->Arg(11)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(cube<kb::label_cube_serial>)->Name("cube_labels/serial")->Arg(10)->Arg(11)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(cube<kb::label_cube_parallel>)->Name("cube_labels/omp")->Arg(10)->Arg(11)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
