#include <cmath>

#include "doctest.h"
#include "ksz/kernels.hpp"
#include "ksz/rng.hpp"

using namespace ksz;
namespace k = ksz::kernels;

namespace {

bool same(const k::ArgMax& a, const k::ArgMax& b) { return a.value == b.value && a.index == b.index; }

std::vector<cplx> random_complex(CounterRng& rng, std::size_t n) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = {rng.normal(), rng.normal()};
  return v;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("ArgMax order") {
    k::ArgMax a;
    a.offer(1.0, 5);
    a.offer(1.0, 3);
    a.offer(0.5, 0);
    CHECK(a.index == 3);
    k::ArgMax b;
    b.offer(1.0, 1);
    CHECK(k::combine(a, b).index == 1);
  }

  TEST_CASE("map and argmax") {
    auto fn = [](std::size_t i) { return std::sin(0.37 * double(i)) * std::floor(double(i % 97) / 10); };
    CHECK(k::serial::map_indices(10'000, fn) == k::omp::map_indices(10'000, fn));
    CHECK(same(k::serial::argmax_indices(10'000, fn), k::omp::argmax_indices(10'000, fn)));
    auto flat = [](std::size_t) { return 2.0; };
    CHECK(k::omp::argmax_indices(5000, flat).index == 0);
    CHECK(k::omp::argmax_indices(0, flat).value == -INFINITY);
  }

  TEST_CASE("column_sup") {
    CounterRng rng(1, 1);
    const auto a = random_complex(rng, 37 * 1001);
    const auto g = random_complex(rng, 37);
    CHECK(same(k::serial::column_sup(a, 37, 1001, g), k::omp::column_sup(a, 37, 1001, g)));
  }

  TEST_CASE("torus_grid_max") {
    CounterRng rng(2, 1);
    k::TermTable t;
    t.n = 3;
    for (int term = 0; term < 12; ++term) {
      for (int d = 0; d < 3; ++d) t.exps.push_back(static_cast<int>(rng.uniform() * 9) - 4);
      t.coeffs.push_back({rng.normal(), rng.normal()});
    }
    const auto s = k::serial::torus_grid_max(t, 41);
    CHECK(same(s, k::omp::torus_grid_max(t, 41)));
    // Direct evaluation at the reported node.
    std::uint64_t idx = s.index;
    std::vector<int> node(3);
    for (int d = 2; d >= 0; --d) node[d] = static_cast<int>(idx % 41), idx /= 41;
    cplx v{};
    for (std::size_t term = 0; term < t.terms(); ++term) {
      double phase = 0;
      for (int d = 0; d < 3; ++d) phase += t.exps[term * 3 + d] * node[d];
      v += t.coeffs[term] * std::polar(1.0, 2 * M_PI * phase / 41);
    }
    CHECK(std::abs(v) == doctest::Approx(s.value).epsilon(1e-12));
  }

  TEST_CASE("flow kernels") {
    CounterRng rng(3, 1);
    std::vector<double> freqs;
    for (int n = 1; n <= 40; ++n) freqs.push_back(std::log(double(n)));
    const auto c = random_complex(rng, 3 * 40);
    const double step = M_PI / (4 * std::log(40.0));
    CHECK(k::serial::flow_abs_values(freqs, std::span(c).first(40), step, 5000) ==
          k::omp::flow_abs_values(freqs, std::span(c).first(40), step, 5000));
    const auto s = k::serial::flow_grid_max(freqs, c, 3, step, 5000);
    const auto p = k::omp::flow_grid_max(freqs, c, 3, step, 5000);
    for (int b = 0; b < 3; ++b) CHECK(same(s[b], p[b]));
    const auto vals = k::serial::flow_abs_values(freqs, std::span(c).first(40), step, 5000);
    CHECK(vals[s[0].index] == doctest::Approx(s[0].value).epsilon(1e-12));
  }

  TEST_CASE("vertex kernels") {
    CounterRng rng(4, 1);
    k::MultilinearTerms q;
    q.n = 14;
    for (std::size_t i = 0; i < 14; ++i)
      for (std::size_t j = i + 1; j < 14; ++j) {
        q.vars.push_back({i, j});
        q.coeffs.push_back(rng.uniform() < 0.5 ? -1.0 : 1.0);
      }
    CHECK(same(k::serial::vertex_max(q), k::omp::vertex_max(q)));
    std::vector<double> a(12 * 9);
    for (auto& v : a) v = rng.normal();
    CHECK(same(k::serial::bilinear_vertex_max(a, 12, 9), k::omp::bilinear_vertex_max(a, 12, 9)));
  }

  TEST_CASE("dispatch follows the policy") {
    k::set_default_exec(k::Exec::Serial);
    CHECK(k::default_exec() == k::Exec::Serial);
    k::set_default_exec(k::Exec::Parallel);
    CHECK(k::default_exec() == k::Exec::Parallel);
  }
}
