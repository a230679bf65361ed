#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ksz/error.hpp"
#include "ksz/interp.hpp"
#include "ksz/norms.hpp"
#include "ksz/rng.hpp"

using namespace ksz;

namespace {

// Dual formulation: K(1, t, x) = max sum |x_i| v_i over 0 <= v_i <= 1,
// ||v||_2 <= t, solved by bisection on v_i = min(1, lambda |x_i|).
double k_dual_oracle(double t, const std::vector<cplx>& x) {
  std::vector<double> a;
  for (auto v : x)
    if (std::abs(v) > 0) a.push_back(std::abs(v));
  if (a.empty()) return 0.0;
  auto v_norm = [&](double lambda) {
    double s = 0;
    for (double ai : a) s += std::pow(std::min(1.0, lambda * ai), 2);
    return std::sqrt(s);
  };
  auto value = [&](double lambda) {
    double s = 0;
    for (double ai : a) s += ai * std::min(1.0, lambda * ai);
    return s;
  };
  const double amin = *std::min_element(a.begin(), a.end());
  if (v_norm(1.0 / amin) <= t) return value(1.0 / amin);
  double lo = 0, hi = 1.0 / amin;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (v_norm(mid) <= t ? lo : hi) = mid;
  }
  return value(lo);
}

// Primal grid over the split magnitudes of a two-entry vector.
double k_primal_grid_2d(double t, double a0, double a1) {
  const int n = 2000;
  double best = a0 + a1;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double c0 = a0 * i / n, c1 = a1 * j / n;
      best = std::min(best, (a0 - c0) + (a1 - c1) + t * std::hypot(c0, c1));
    }
  return best;
}

double weighted_linf_objective(double s, double t, const std::vector<cplx>& xi, int k_lo, double u) {
  double sup = 0;
  for (std::size_t i = 0; i < xi.size(); ++i)
    sup = std::max(sup, std::ldexp(1.0, -(k_lo + int(i))) * std::max(std::abs(xi[i]) - u, 0.0));
  return s * u + t * sup;
}

// Dense scan in u followed by ternary refinement (the objective is convex).
double weighted_linf_oracle(double s, double t, const std::vector<cplx>& xi, int k_lo) {
  double top = 0;
  for (auto v : xi) top = std::max(top, std::abs(v));
  if (top == 0) return 0;
  const int n = 20000;
  int best_i = 0;
  double best = weighted_linf_objective(s, t, xi, k_lo, 0);
  for (int i = 1; i <= n; ++i) {
    const double v = weighted_linf_objective(s, t, xi, k_lo, top * i / n);
    if (v < best) best = v, best_i = i;
  }
  double lo = top * std::max(best_i - 1, 0) / n, hi = top * std::min(best_i + 1, n) / n;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (weighted_linf_objective(s, t, xi, k_lo, m1) <= weighted_linf_objective(s, t, xi, k_lo, m2)) hi = m2;
    else lo = m1;
  }
  return std::min(best, weighted_linf_objective(s, t, xi, k_lo, 0.5 * (lo + hi)));
}

std::vector<cplx> random_vector(CounterRng& rng, std::size_t n) {
  std::vector<cplx> x(n);
  for (auto& v : x) v = {rng.normal(), rng.normal()};
  return x;
}

}  // namespace

TEST_SUITE("interp") {
  TEST_CASE("QFunction validation") {
    CHECK_NOTHROW(QFunction::power(0.3));
    CHECK_NOTHROW(QFunction([](double s, double t) { return std::max(s, t); }));
    CHECK_THROWS_AS(QFunction([](double s, double t) { return s * t; }), InvalidArgument);
    CHECK_THROWS_AS(QFunction([](double s, double t) { return s - t; }), InvalidArgument);
    CHECK_THROWS_AS(QFunction::power(1.5), InvalidArgument);
  }

  TEST_CASE("k_functional_l1_l2 examples") {
    for (double t : {0.25, 1.0, 3.0})
      CHECK(k_functional_l1_l2(t, std::vector<cplx>{cplx(0, -2)}) == doctest::Approx(std::min(1.0, t) * 2));
    CHECK(k_functional_l1_l2(1.0, std::vector<cplx>{1, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(k_primal_grid_2d(1.0, 1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    const std::vector<cplx> x{3, 1, cplx(0, 1), 0.5};
    CHECK(k_functional_l1_l2(1e6, x) == doctest::Approx(l1_norm(x)).epsilon(1e-14));
    CHECK(k_functional_l1_l2(1.0, std::vector<cplx>(4)) == 0.0);
    CHECK_THROWS_AS(k_functional_l1_l2(0.0, x), InvalidArgument);
  }

  TEST_CASE("k_functional_l1_l2 against the dual and primal oracles") {
    CounterRng rng(1, 7);
    for (int trial = 0; trial < 500; ++trial) {
      const auto x = random_vector(rng, 1 + trial % 6);
      for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double k = k_functional_l1_l2(t, x);
        CHECK(k == doctest::Approx(k_dual_oracle(t, x)).epsilon(1e-9));
        CHECK(k <= std::min(l1_norm(x), t * l2_norm(x)) * (1 + 1e-14));
      }
    }
    for (int trial = 0; trial < 5; ++trial) {
      const double a0 = std::abs(rng.normal()), a1 = std::abs(rng.normal());
      for (double t : {0.5, 1.2})
        CHECK(k_functional_l1_l2(t, std::vector<cplx>{a0, a1}) <= k_primal_grid_2d(t, a0, a1) + 1e-12);
    }
  }

  TEST_CASE("K profile invariants") {
    CounterRng rng(2, 7);
    for (int trial = 0; trial < 100; ++trial) {
      const auto x = random_vector(rng, 1 + static_cast<std::size_t>(rng.uniform() * 100));
      const auto prof = k_profile(x, -10, 10);
      CHECK(prof.values.size() == 21);
      CHECK(prof.nondecreasing());
      CHECK(prof.concave());
    }
  }

  TEST_CASE("weighted l_inf examples") {
    CHECK(k_functional_weighted_linf(1.0, 8.0, std::vector<cplx>{0, 0, 3, 0}, 0) == doctest::Approx(3.0 * 1.0));
    CHECK(k_functional_weighted_linf(5.0, 8.0, std::vector<cplx>{0, 0, 3, 0}, 0) == doctest::Approx(3.0 * 2.0));
    CHECK(k_functional_weighted_linf(1.0, 1.0, std::vector<cplx>(5), -2) == 0.0);
    // Weights 2 and 1: the minimum sits between breakpoints, at u = 1/2.
    CHECK(k_functional_weighted_linf(1.5, 1.0, std::vector<cplx>{1, 1.5}, -1) == doctest::Approx(1.75).epsilon(1e-14));
  }

  TEST_CASE("weighted l_inf against a dense oracle and the sandwich") {
    CounterRng rng(3, 7);
    for (int trial = 0; trial < 300; ++trial) {
      const auto xi = random_vector(rng, 9);
      const double s = std::exp(2 * rng.normal()), t = std::exp(2 * rng.normal());
      const double k = k_functional_weighted_linf(s, t, xi, -4);
      CHECK(k == doctest::Approx(weighted_linf_oracle(s, t, xi, -4)).epsilon(1e-8));
      const double L = weighted_linf_lower(s, t, xi, -4);
      CHECK(k >= L * (1 - 1e-12));
      CHECK(k <= 2 * L * (1 + 1e-12));
    }
  }

  TEST_CASE("k_method_norm") {
    const std::vector<cplx> e1{1, 0, 0};
    for (double theta : {0.2, 0.5, 0.8}) CHECK(k_method_norm(e1, QFunction::power(theta)) == doctest::Approx(1.0));
    CHECK(k_method_norm(std::vector<cplx>(4), QFunction::power(0.5)) == 0.0);
    CounterRng rng(4, 7);
    for (double r : {3.0, 4.0}) {
      double lo = INFINITY, hi = 0;
      for (int trial = 0; trial < 200; ++trial) {
        const auto x = random_vector(rng, 512);
        const double ratio = k_method_norm(x, QFunction::power(2 / r)) / weak_norm(x, conjugate_exponent(r));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      CHECK(hi / lo <= 10.0);
    }
  }

  TEST_CASE("cl_orlicz_norm") {
    CHECK(cl_orlicz_norm(std::vector<cplx>{1, 2}, QFunction([](double s, double) { return s; })) ==
          doctest::Approx(3.0).epsilon(1e-8));
    CHECK(cl_orlicz_norm(std::vector<cplx>{3, 4}, QFunction([](double, double t) { return t; })) ==
          doctest::Approx(5.0).epsilon(1e-8));
    CHECK(cl_orlicz_norm(std::vector<cplx>{1, 1}, QFunction::power(0.5)) ==
          doctest::Approx(1.681792830507429).epsilon(1e-8));
  }

  TEST_CASE("homogeneity") {
    CounterRng rng(5, 7);
    const auto psi = QFunction::power(0.5);
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = random_vector(rng, 20);
      const double lambda = std::exp(rng.normal());
      std::vector<cplx> y(x);
      for (auto& v : y) v *= lambda;
      CHECK(k_functional_l1_l2(0.7, y) == doctest::Approx(lambda * k_functional_l1_l2(0.7, x)).epsilon(1e-12));
      CHECK(k_functional_weighted_linf(0.7, 1.3, y, -3) ==
            doctest::Approx(lambda * k_functional_weighted_linf(0.7, 1.3, x, -3)).epsilon(1e-12));
      CHECK(k_method_norm(y, psi) == doctest::Approx(lambda * k_method_norm(x, psi)).epsilon(1e-10));
      CHECK(cl_orlicz_norm(y, psi) == doctest::Approx(lambda * cl_orlicz_norm(x, psi)).epsilon(1e-8));
    }
  }
}
