// Serial reference kernels against their OpenMP counterparts on the sizes
// the experiments use. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <cmath>

#include "ksz/kernels.hpp"
#include "ksz/rng.hpp"

namespace k = ksz::kernels;
using ksz::cplx;

namespace {

std::vector<cplx> random_complex(std::size_t n, std::uint64_t stream) {
  ksz::CounterRng rng(1, stream);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {rng.normal(), rng.normal()};
  return v;
}

template <bool Parallel>
void BM_column_sup(benchmark::State& state) {
  const std::size_t K = 12, N = static_cast<std::size_t>(state.range(0));
  const auto a = random_complex(K * N, 0);
  const auto g = random_complex(K, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? k::omp::column_sup(a, K, N, g) : k::serial::column_sup(a, K, N, g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(K * N));
}

template <bool Parallel>
void BM_torus_grid_max(benchmark::State& state) {
  k::TermTable t;
  t.n = 2;
  const int m = static_cast<int>(state.range(0));
  ksz::CounterRng rng(2, 0);
  for (int i = 0; i < 4 * m; ++i) {
    t.exps.push_back(static_cast<int>(rng.uniform() * (m + 1)));
    t.exps.push_back(static_cast<int>(rng.uniform() * (m + 1)));
    t.coeffs.push_back({rng.normal(), rng.normal()});
  }
  const std::size_t points = 1 + 20 * static_cast<std::size_t>(m);
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? k::omp::torus_grid_max(t, points) : k::serial::torus_grid_max(t, points));
}

template <bool Parallel>
void BM_flow_grid_max(benchmark::State& state) {
  const std::size_t N = static_cast<std::size_t>(state.range(0)), batch = 16;
  std::vector<double> freqs;
  for (std::size_t n = 1; n <= N; ++n) freqs.push_back(std::log(static_cast<double>(n)));
  const auto c = random_complex(batch * N, 3);
  const double step = M_PI / (4 * std::log(static_cast<double>(N)));
  const std::size_t count = static_cast<std::size_t>(1e4 / step) + 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? k::omp::flow_grid_max(freqs, c, batch, step, count)
                                      : k::serial::flow_grid_max(freqs, c, batch, step, count));
}

template <bool Parallel>
void BM_vertex_max(benchmark::State& state) {
  k::MultilinearTerms q;
  q.n = static_cast<std::size_t>(state.range(0));
  ksz::CounterRng rng(4, 0);
  for (std::size_t i = 0; i < q.n; ++i)
    for (std::size_t j = i + 1; j < q.n; ++j) {
      q.vars.push_back({i, j});
      q.coeffs.push_back(rng.uniform() < 0.5 ? -1.0 : 1.0);
    }
  for (auto _ : state) benchmark::DoNotOptimize(Parallel ? k::omp::vertex_max(q) : k::serial::vertex_max(q));
}

template <bool Parallel>
void BM_bilinear_vertex_max(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  ksz::CounterRng rng(5, 0);
  std::vector<double> a(n * n);
  for (auto& v : a) v = rng.normal();
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? k::omp::bilinear_vertex_max(a, n, n) : k::serial::bilinear_vertex_max(a, n, n));
}

}  // namespace

BENCHMARK(BM_column_sup<false>)->Name("column_sup/serial")->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_column_sup<true>)->Name("column_sup/omp")->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_torus_grid_max<false>)->Name("torus_grid_max/serial")->Arg(8)->Arg(16);
BENCHMARK(BM_torus_grid_max<true>)->Name("torus_grid_max/omp")->Arg(8)->Arg(16);
BENCHMARK(BM_flow_grid_max<false>)->Name("flow_grid_max/serial")->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_flow_grid_max<true>)->Name("flow_grid_max/omp")->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_vertex_max<false>)->Name("vertex_max/serial")->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_vertex_max<true>)->Name("vertex_max/omp")->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bilinear_vertex_max<false>)->Name("bilinear_vertex_max/serial")->Arg(12)->Arg(16);
BENCHMARK(BM_bilinear_vertex_max<true>)->Name("bilinear_vertex_max/omp")->Arg(12)->Arg(16);

BENCHMARK_MAIN();
