#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "ksz/error.hpp"
#include "ksz/norms.hpp"
#include "ksz/rng.hpp"

using namespace ksz;

namespace {

std::vector<cplx> random_vector(CounterRng& rng, std::size_t n) {
  std::vector<cplx> x(n);
  for (auto& v : x) v = {rng.normal(), rng.normal()};
  return x;
}

const double kTwoThreeQuarters = 1.681792830507429;  // 2^(3/4)

}  // namespace

TEST_SUITE("norms") {
  TEST_CASE("decreasing rearrangement") {
    CHECK(decreasing_rearrangement(as_complex(std::vector<double>{3, 1, 2})) == std::vector<double>{3, 2, 1});
    const std::vector<cplx> x{{0, 1}, -2};
    CHECK(decreasing_rearrangement(x) == std::vector<double>{2, 1});
    CHECK(decreasing_rearrangement(std::vector<cplx>(3)) == std::vector<double>{0, 0, 0});
  }

  TEST_CASE("weak_norm") {
    CHECK(weak_norm(std::vector<cplx>{1, 0, 0}, 2) == 1.0);
    std::vector<cplx> x;
    for (int n = 1; n <= 100; ++n) x.push_back(std::pow(n, -0.5));
    CHECK(weak_norm(x, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(weak_norm(std::vector<cplx>{1, 1}, 4.0 / 3.0) == doctest::Approx(kTwoThreeQuarters).epsilon(1e-14));
    CHECK_THROWS_AS(weak_norm(x, 1.0), InvalidArgument);
  }

  TEST_CASE("marcinkiewicz_norm") {
    CHECK(marcinkiewicz_norm(std::vector<cplx>{2, 1}, WeightSequence({1, 1})) == 2.0);
    const auto w = WeightSequence::from_psi([](double n) { return std::sqrt(n); }, 4);
    CHECK(marcinkiewicz_norm(std::vector<cplx>{1}, w) == doctest::Approx(1.0));
    CHECK(marcinkiewicz_norm(std::vector<cplx>{1, 1, 1}, WeightSequence({1, 1, 1})) == 1.0);
    CHECK_THROWS_AS(WeightSequence({1, 2}), InvalidArgument);
    CHECK_THROWS_AS(WeightSequence({1, 0}), InvalidArgument);
  }

  TEST_CASE("s_norm") {
    CHECK(s_norm(std::vector<cplx>{3, 4}, 2) == doctest::Approx(5.0));
    CHECK(s_norm(std::vector<cplx>{1}, 4) == doctest::Approx(1.0));
    CHECK(s_norm(std::vector<cplx>{1, 1}, 4) == doctest::Approx(kTwoThreeQuarters).epsilon(1e-14));
    CHECK_THROWS_AS(s_norm(std::vector<cplx>{1}, 1.5), InvalidArgument);
  }

  TEST_CASE("harmonic numbers") {
    CHECK(harmonic_number(1) == 1.0);
    CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
    const double h = harmonic_number(1'000'000);
    CHECK(h > std::log(1e6));
    CHECK(h <= 1 + std::log(1e6));
    CHECK(h == doctest::Approx(14.392726722864989).epsilon(1e-13));
  }

  TEST_CASE("l_hN_norm") {
    CHECK(l_hN_norm(std::vector<cplx>{{3, 4}}) == doctest::Approx(5.0));
    CHECK(l_hN_norm(std::vector<cplx>{1, 1}) == doctest::Approx(1.3103706971044482).epsilon(1e-14));
    for (std::size_t N : {3u, 10u, 100u}) {
      const double h = harmonic_number(N);
      CHECK(l_hN_norm(std::vector<cplx>(N, 1.0)) == doctest::Approx(std::pow(h, 1 / h)).epsilon(1e-13));
    }
  }

  TEST_CASE("orlicz_empirical_norm") {
    CHECK(orlicz_empirical_norm(EmpiricalSample({2, 2, 2}), 2) ==
          doctest::Approx(2 * 1.2011224087864498).epsilon(1e-8));
    CHECK(orlicz_empirical_norm(EmpiricalSample({0, 3}), 2) == doctest::Approx(3 * 0.9540645820000013).epsilon(1e-8));
    CHECK(orlicz_empirical_norm(EmpiricalSample({0, 0}), 2) == 0.0);
    CHECK_THROWS_AS(EmpiricalSample({}), InvalidArgument);
    CHECK_THROWS_AS(EmpiricalSample({-1.0}), InvalidArgument);
  }

  TEST_CASE("pmoment_orlicz_estimate") {
    CHECK(pmoment_orlicz_estimate(EmpiricalSample({1.5, 1.5}), 3, 64) == doctest::Approx(1.5));
    CHECK(pmoment_orlicz_estimate(EmpiricalSample({0, 0}), 2, 64) == 0.0);
    // {0, a}: max_p p^(-1/2) 2^(-1/p) a, attained at p = 1 and p = 2.
    const EmpiricalSample s({0, 4});
    const double pm = pmoment_orlicz_estimate(s, 2, 64);
    CHECK(pm == doctest::Approx(2.0).epsilon(1e-12));
    const double ln = orlicz_empirical_norm(s, 2);
    CHECK(std::max(pm / ln, ln / pm) <= 4.0);
  }

  TEST_CASE("orlicz_seq_norm") {
    const auto sqrt_fn = [](double t) { return std::sqrt(t); };
    CHECK(orlicz_seq_norm(std::vector<cplx>{3, 4}, sqrt_fn) == doctest::Approx(5.0).epsilon(1e-8));
    CHECK(orlicz_seq_norm(std::vector<cplx>{0, 0}, sqrt_fn) == 0.0);
    CHECK(orlicz_seq_norm(std::vector<cplx>{1, 1}, [](double t) { return std::pow(t, 0.75); }) ==
          doctest::Approx(kTwoThreeQuarters).epsilon(1e-8));
    CHECK_THROWS_AS(orlicz_seq_norm(std::vector<cplx>{1}, [](double t) { return -t; }), InvalidArgument);
  }

  TEST_CASE("Kisliakov sandwich on random vectors") {
    CounterRng rng(2024, 0);
    for (std::size_t N : {1u, 10u, 1000u}) {
      for (int trial = 0; trial < 200; ++trial) {
        auto x = random_vector(rng, N);
        if (trial % 3 == 0) x[static_cast<std::size_t>(rng.uniform() * N)] *= 50.0;
        const double inf = linf_norm(x);
        const double v = l_hN_norm(x);
        CHECK(v >= inf / std::exp(1.0) - 1e-10);
        CHECK(v <= std::exp(1.0 / std::exp(1.0)) * inf + 1e-10);
      }
    }
  }

  TEST_CASE("Marcinkiewicz equivalence of s_norm and weak l_r'") {
    CounterRng rng(5, 1);
    for (double r : {3.0, 4.0}) {
      const double rp = conjugate_exponent(r);
      for (int trial = 0; trial < 300; ++trial) {
        const auto x = random_vector(rng, 1 + static_cast<std::size_t>(rng.uniform() * 200));
        const double w = weak_norm(x, rp);
        const double s = s_norm(x, r);
        CHECK(w <= s * (1 + 1e-12));
        CHECK(s <= rp / (rp - 1) * w * (1 + 1e-12));
      }
    }
  }

  TEST_CASE("norm axioms") {
    CounterRng rng(9, 3);
    const auto w = WeightSequence::power(3.0, 40);
    const auto l32 = [](double t) { return std::pow(t, 2.0 / 3.0); };
    const std::vector<std::function<double(std::span<const cplx>)>> norms{
        [&](std::span<const cplx> x) { return marcinkiewicz_norm(x, w); },
        [](std::span<const cplx> x) { return s_norm(x, 4.0); },
        [](std::span<const cplx> x) { return l_hN_norm(x); },
        [&](std::span<const cplx> x) { return orlicz_seq_norm(x, l32); }};
    for (const auto& norm : norms) {
      for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_vector(rng, 40);
        const auto y = random_vector(rng, 40);
        const cplx lambda{rng.normal(), rng.normal()};
        std::vector<cplx> sum(40), scaled(40);
        for (std::size_t i = 0; i < 40; ++i) {
          sum[i] = x[i] + y[i];
          scaled[i] = lambda * x[i];
        }
        CHECK(norm(sum) <= (norm(x) + norm(y)) * (1 + 1e-8));
        CHECK(norm(scaled) == doctest::Approx(std::abs(lambda) * norm(x)).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("rearrangement invariance") {
    CounterRng rng(31, 0);
    for (int trial = 0; trial < 50; ++trial) {
      auto x = random_vector(rng, 25);
      auto y = x;
      std::reverse(y.begin(), y.end());
      std::rotate(y.begin(), y.begin() + 7, y.end());
      for (auto& v : y) v = std::abs(v);
      CHECK(weak_norm(x, 1.5) == doctest::Approx(weak_norm(y, 1.5)).epsilon(1e-14));
      CHECK(s_norm(x, 3) == doctest::Approx(s_norm(y, 3)).epsilon(1e-14));
      CHECK(marcinkiewicz_norm(x, WeightSequence::power(2.5, 25)) ==
            doctest::Approx(marcinkiewicz_norm(y, WeightSequence::power(2.5, 25))).epsilon(1e-14));
      // l_hN weights position j by 1/j, so only the modulus part applies.
      std::vector<cplx> moduli(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) moduli[i] = std::abs(x[i]);
      CHECK(l_hN_norm(x) == doctest::Approx(l_hN_norm(moduli)).epsilon(1e-14));
      CHECK(orlicz_seq_norm(x, [](double t) { return std::sqrt(t); }) ==
            doctest::Approx(orlicz_seq_norm(y, [](double t) { return std::sqrt(t); })).epsilon(1e-8));
    }
  }

  TEST_CASE("estimators agree within a factor of four") {
    CounterRng rng(77, 0);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 200);
      std::vector<double> v(n);
      const int kind = trial % 3;
      for (auto& x : v) {
        if (kind == 0) x = std::abs(rng.normal());
        else if (kind == 1) x = rng.uniform() < 0.1 ? 5 * rng.uniform() : 0.0;
        else x = std::exp(rng.normal());
      }
      if (*std::max_element(v.begin(), v.end()) == 0.0) v[0] = 1.0;
      const EmpiricalSample s(v);
      for (double r : {1.0, 2.0}) {
        const double a = orlicz_empirical_norm(s, r);
        const double b = pmoment_orlicz_estimate(s, r, 64);
        CHECK(std::max(a / b, b / a) <= 4.0);
      }
    }
  }
}
