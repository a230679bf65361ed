#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "doctest.h"
#include "ksz/dirichlet.hpp"
#include "ksz/error.hpp"
#include "ksz/rng.hpp"

using namespace ksz;

namespace {

std::uint64_t trial_division_pi(std::uint64_t x) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 2; n <= x; ++n) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    count += prime;
  }
  return count;
}

DirichletPoly random_dirichlet(CounterRng& rng, std::uint64_t max_n, std::size_t size) {
  DirichletPoly d;
  while (d.coeffs().size() < size)
    d.set(1 + static_cast<std::uint64_t>(rng.uniform() * max_n), {rng.normal(), rng.normal()});
  return d;
}

}  // namespace

TEST_SUITE("dirichlet") {
  TEST_CASE("prime counting") {
    for (std::uint64_t x : {0u, 1u, 2u, 3u, 10u, 100u, 997u, 1000u, 7919u, 20000u})
      CHECK(prime_count(x) == trial_division_pi(x));
    CHECK(prime_count(1'000'000) == 78498);
    CHECK(prime_count(10'000'000'000ULL) == 455052511);
    CHECK(primes_up_to(20) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(first_primes(5) == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
  }

  TEST_CASE("prime_stats examples") {
    const std::vector<std::uint64_t> a12{12};
    const auto s = prime_stats(a12);
    CHECK(s.Pi == 5);
    CHECK(s.Omega == 3);
    CHECK(s.factorizations.at(12) == std::vector<std::pair<std::uint64_t, int>>{{0, 2}, {1, 1}});
    const std::vector<std::uint64_t> one{1};
    CHECK(prime_stats(one).Pi == 0);
    CHECK(prime_stats(one).Omega == 0);
    const std::vector<std::uint64_t> big{(std::uint64_t{1} << 40) - 87};  // a prime near 2^40
    CHECK(prime_stats(big).Omega == 1);
    CHECK_THROWS_AS(prime_stats(std::vector<std::uint64_t>{}), InvalidArgument);
    CHECK_THROWS_AS(prime_stats(std::vector<std::uint64_t>{0}), InvalidArgument);
    CHECK_THROWS_AS(prime_stats(std::vector<std::uint64_t>{kMaxSupport + 1}), InvalidArgument);
  }

  TEST_CASE("factorizations multiply back and Omega is attained") {
    std::vector<std::uint64_t> A(3000);
    std::iota(A.begin(), A.end(), 1);
    const auto s = prime_stats(A);
    const auto primes = first_primes(s.Pi);
    int best = 0;
    for (auto n : A) {
      std::uint64_t prod = 1;
      int omega = 0;
      for (auto [k, e] : s.factorizations.at(n)) {
        for (int i = 0; i < e; ++i) prod *= primes.at(k);
        omega += e;
      }
      CHECK(prod == n);
      CHECK(omega <= s.Omega);
      best = std::max(best, omega);
    }
    CHECK(best == s.Omega);
  }

  TEST_CASE("Omega of {1..N} is at most log N / log 2") {
    for (std::uint64_t N : {2u, 10u, 1000u, 65535u, 65536u, 1'000'000u}) {
      std::vector<std::uint64_t> A(N);
      std::iota(A.begin(), A.end(), 1);
      const auto s = prime_stats(A);
      CHECK(s.Omega <= std::log(double(N)) / std::log(2.0) + 1e-12);
      CHECK(s.Pi == prime_count(N));
    }
  }

  TEST_CASE("costa_pereira_check") {
    const auto c100 = costa_pereira_check(100);
    CHECK(c100.pi_exact == 25);
    CHECK(c100.upper == doctest::Approx(36.19120682527098).epsilon(1e-14));
    CHECK_FALSE(c100.violated);
    const auto c5 = costa_pereira_check(5);
    CHECK(c5.pi_exact == 3);
    CHECK(c5.lower == doctest::Approx(2.1533827903669653).epsilon(1e-14));
    CHECK(costa_pereira_check(2).pi_exact == 1);
    for (double x = 5; x < 1e6; x *= 1.37) CHECK_FALSE(costa_pereira_check(x).violated);
    CHECK_THROWS_AS(costa_pereira_check(1.5), InvalidArgument);
  }

  TEST_CASE("bohr_lift examples") {
    const auto p = bohr_lift(DirichletPoly({{12, 1.0}}));
    CHECK(p.n() == 5);
    CHECK(p.flavor() == Flavor::Monomial);
    CHECK(p.terms().at({2, 1, 0, 0, 0}) == cplx(1.0));
    const auto c = bohr_lift(DirichletPoly({{1, cplx(0.5, 2)}}));
    CHECK(c.n() == 0);
    CHECK(c.terms().at({}) == cplx(0.5, 2));
    const auto s = bohr_lift(DirichletPoly({{2, 1.0}, {3, 1.0}}));
    CHECK(s.n() == 2);
    CHECK(s.terms().size() == 2);
    CHECK(s.terms().count({1, 0}) == 1);
    CHECK(s.terms().count({0, 1}) == 1);
    CHECK_THROWS_AS(bohr_lift(DirichletPoly{}), InvalidArgument);
  }

  TEST_CASE("lift round trip and degree law") {
    CounterRng rng(100, 0);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = random_dirichlet(rng, 1000, 1 + static_cast<std::size_t>(rng.uniform() * 50));
      const auto p = bohr_lift(d);
      const auto back = bohr_unlift(p);
      CHECK(back.coeffs() == d.coeffs());
      const auto support = d.support();
      const auto stats = prime_stats(support);
      CHECK(p.n() == stats.Pi);
      CHECK(p.degree() == stats.Omega);
    }
    SparsePoly huge(1, Flavor::Monomial);
    huge.add_term({64}, 1.0);
    CHECK_THROWS_AS(bohr_unlift(huge), InvalidArgument);
  }

  TEST_CASE("kronecker_sup_flow examples") {
    const auto one = kronecker_sup_flow(DirichletPoly({{2, cplx(0.6, 0.8) * 3.0}}));
    CHECK(one.lower == doctest::Approx(3.0).epsilon(1e-14));
    const auto two = kronecker_sup_flow(DirichletPoly({{1, 1.0}, {2, 1.0}}));
    CHECK(two.lower == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(two.witness_t == 0.0);
    CHECK_THROWS_AS(kronecker_sup_flow(DirichletPoly({{1, 1.0}, {2, 1.0}}), {.step = 10.0}), InvalidArgument);
  }

  TEST_CASE("flow approaches the l1 norm on prime supports") {
    CounterRng rng(55, 0);
    const auto primes = first_primes(4);
    for (int trial = 0; trial < 20; ++trial) {
      DirichletPoly d;
      double l1 = 0;
      for (auto p : primes) {
        const cplx a{rng.normal(), rng.normal()};
        d.set(p, a);
        l1 += std::abs(a);
      }
      const auto est = kronecker_sup_flow(d, {.t_max = 1e4, .refine = true});
      CHECK(est.lower <= l1 * (1 + 1e-12));
      CHECK(est.lower >= 0.95 * l1);
      CHECK(std::abs(d.at_time(*est.witness_t)) == doctest::Approx(est.lower).epsilon(1e-12));
    }
  }

  TEST_CASE("flow is monotone in t_max and in step refinement") {
    CounterRng rng(56, 0);
    for (int trial = 0; trial < 10; ++trial) {
      const auto d = random_dirichlet(rng, 200, 12);
      for (bool refine : {false, true}) {
        double prev = 0;
        for (double t_max : {10.0, 100.0, 1000.0, 3000.0}) {
          const double v = kronecker_sup_flow(d, {.t_max = t_max, .refine = refine}).lower;
          CHECK(v >= prev);
          prev = v;
        }
      }
      const double base = std::numbers::pi / (4 * std::log(double(d.max_index())));
      const double coarse = kronecker_sup_flow(d, {.t_max = 500, .step = base}).lower;
      const double fine = kronecker_sup_flow(d, {.t_max = 500, .step = base / 2}).lower;
      CHECK(fine >= coarse);
      CHECK(kronecker_sup_flow(d, {.t_max = 500, .refine = true}).lower >=
            kronecker_sup_flow(d, {.t_max = 500}).lower);
    }
  }

  TEST_CASE("batched flow matches single flow") {
    CounterRng rng(57, 0);
    const std::vector<std::uint64_t> support{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<cplx> coeffs(3 * support.size());
    for (auto& c : coeffs) c = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const auto batch = kronecker_sup_flow_batch(support, coeffs, 3, {.t_max = 2000});
    for (std::size_t b = 0; b < 3; ++b) {
      DirichletPoly d;
      for (std::size_t j = 0; j < support.size(); ++j) d.set(support[j], coeffs[b * support.size() + j]);
      CHECK(batch[b] == kronecker_sup_flow(d, {.t_max = 2000}).lower);
    }
  }

  TEST_CASE("sup_lifted examples") {
    CHECK(sup_lifted(DirichletPoly({{2, 1.0}, {3, 1.0}}), 16).lower == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sup_lifted(DirichletPoly({{15, cplx(0, -2.5)}}), 4).lower == doctest::Approx(2.5).epsilon(1e-14));
  }

  TEST_CASE("lifted sup dominates the flow") {
    CounterRng rng(58, 0);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = random_dirichlet(rng, 30, 2 + static_cast<std::size_t>(rng.uniform() * 10));
      const double flow = kronecker_sup_flow(d, {.t_max = 1e3}).lower;
      const double lifted = sup_lifted(d, 2048, static_cast<std::uint64_t>(trial)).lower;
      CHECK(lifted >= flow - 1e-9);
    }
  }

  TEST_CASE("dirichlet_rhs_bound") {
    CHECK(dirichlet_rhs_bound(std::vector<std::uint64_t>{2}, 2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(dirichlet_rhs_bound(std::vector<std::uint64_t>{1}, 2) == 1.0);
    std::vector<std::uint64_t> A(64);
    std::iota(A.begin(), A.end(), 1);
    CHECK(dirichlet_rhs_bound(A, 2) == doctest::Approx(25.768845704107502).epsilon(1e-14));
  }
}
