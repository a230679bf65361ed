#include "ksz/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ksz/error.hpp"
#include "ksz/kernels.hpp"

namespace ksz {

namespace {

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t x) {
  std::vector<std::uint64_t> primes;
  if (x < 2) return primes;
  std::vector<bool> composite(x + 1, false);
  for (std::uint64_t i = 2; i <= x; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= x; j += i) composite[j] = true;
  }
  return primes;
}

// Lucy's recursion on the values floor(x / k): O(x^(3/4)) time, O(sqrt x) memory.
std::uint64_t prime_count(std::uint64_t x) {
  if (x < 2) return 0;
  const std::uint64_t r = isqrt(x);
  std::vector<std::int64_t> small(r + 1), large(r + 1);
  for (std::uint64_t v = 1; v <= r; ++v) {
    small[v] = static_cast<std::int64_t>(v) - 1;
    large[v] = static_cast<std::int64_t>(x / v) - 1;
  }
  for (std::uint64_t p = 2; p <= r; ++p) {
    if (small[p] == small[p - 1]) continue;
    const std::int64_t below = small[p - 1];
    const std::uint64_t p2 = p * p;
    const std::uint64_t lim = std::min(r, x / p2);
    for (std::uint64_t k = 1; k <= lim; ++k) {
      const std::uint64_t kp = k * p;
      const std::int64_t sub = kp <= r ? large[kp] : small[x / kp];
      large[k] -= sub - below;
    }
    for (std::uint64_t v = r; v >= p2; --v) small[v] -= small[v / p] - below;
  }
  return static_cast<std::uint64_t>(large[1]);
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  if (count == 0) return {};
  const double n = static_cast<double>(count);
  const auto bound = count < 6 ? std::uint64_t{15}
                               : static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n)))) + 10;
  auto primes = primes_up_to(bound);
  primes.resize(count);
  return primes;
}

PrimeStats prime_stats(std::span<const std::uint64_t> A) {
  require(!A.empty(), "prime_stats: empty support");
  std::uint64_t max_n = 0;
  for (std::uint64_t n : A) {
    require(n >= 1, "prime_stats: support entries must be >= 1");
    require(n <= kMaxSupport, "prime_stats: support entry " + std::to_string(n) + " exceeds 2^40");
    max_n = std::max(max_n, n);
  }
  const auto small = primes_up_to(isqrt(max_n));
  std::map<std::uint64_t, std::uint64_t> large_index;
  PrimeStats stats;
  stats.Pi = prime_count(max_n);
  for (std::uint64_t n : A) {
    if (stats.factorizations.count(n)) continue;
    std::vector<std::pair<std::uint64_t, int>> f;
    std::uint64_t rest = n;
    int omega = 0;
    for (std::size_t k = 0; k < small.size() && small[k] * small[k] <= rest; ++k) {
      int e = 0;
      while (rest % small[k] == 0) {
        rest /= small[k];
        ++e;
      }
      if (e > 0) {
        f.emplace_back(k, e);
        omega += e;
      }
    }
    if (rest > 1) {
      auto it = large_index.find(rest);
      if (it == large_index.end()) it = large_index.emplace(rest, prime_count(rest) - 1).first;
      f.emplace_back(it->second, 1);
      omega += 1;
    }
    stats.Omega = std::max(stats.Omega, omega);
    stats.factorizations.emplace(n, std::move(f));
  }
  return stats;
}

PrimeCountCheck costa_pereira_check(double x) {
  require(x >= 2.0 && std::isfinite(x), "costa_pereira_check: x must be >= 2");
  PrimeCountCheck out;
  out.pi_exact = prime_count(static_cast<std::uint64_t>(std::floor(x)));
  out.lower = x * std::numbers::ln2 / std::log(x);
  out.upper = 5.0 * x / (3.0 * std::log(x));
  const auto pi = static_cast<double>(out.pi_exact);
  out.violated = (x >= 5.0 && pi < out.lower) || pi > out.upper;
  return out;
}

DirichletPoly::DirichletPoly(const std::map<std::uint64_t, cplx>& coeffs) {
  for (const auto& [n, a] : coeffs) set(n, a);
}

void DirichletPoly::set(std::uint64_t n, cplx a) {
  require(n >= 1, "DirichletPoly: indices must be >= 1");
  require(std::isfinite(a.real()) && std::isfinite(a.imag()), "DirichletPoly: coefficients must be finite");
  if (a == cplx{})
    c_.erase(n);
  else
    c_[n] = a;
}

cplx DirichletPoly::coeff(std::uint64_t n) const {
  const auto it = c_.find(n);
  return it == c_.end() ? cplx{} : it->second;
}

std::vector<std::uint64_t> DirichletPoly::support() const {
  std::vector<std::uint64_t> out;
  out.reserve(c_.size());
  for (const auto& kv : c_) out.push_back(kv.first);
  return out;
}

cplx DirichletPoly::at_time(double t) const {
  cplx s{};
  for (const auto& [n, a] : c_) s += a * std::polar(1.0, -t * std::log(static_cast<double>(n)));
  return s;
}

SparsePoly bohr_lift(const DirichletPoly& d) {
  require(!d.empty(), "bohr_lift: empty Dirichlet polynomial");
  const auto support = d.support();
  const auto stats = prime_stats(support);
  if (stats.Pi > 1'000'000)
    throw BudgetExceeded("bohr_lift: Pi(A) = " + std::to_string(stats.Pi) + " variables exceeds the cap of 10^6");
  const auto n = static_cast<std::size_t>(stats.Pi);
  SparsePoly p(n, Flavor::Monomial);
  MultiIndex alpha(n);
  for (const auto& [index, a] : d.coeffs()) {
    std::fill(alpha.begin(), alpha.end(), 0);
    for (const auto& [k, e] : stats.factorizations.at(index)) alpha[k] = e;
    p.add_term(alpha, a);
  }
  return p;
}

DirichletPoly bohr_unlift(const SparsePoly& p) {
  require(p.flavor() == Flavor::Monomial, "bohr_unlift: polynomial must have monomial flavor");
  const auto primes = first_primes(p.n());
  DirichletPoly d;
  for (const auto& [alpha, c] : p.terms()) {
    std::uint64_t index = 1;
    for (std::size_t k = 0; k < alpha.size(); ++k)
      for (int e = 0; e < alpha[k]; ++e)
        if (__builtin_mul_overflow(index, primes[k], &index))
          throw InvalidArgument("bohr_unlift: index overflows 64 bits");
    d.set(index, d.coeff(index) + c);
  }
  return d;
}

namespace {

struct FlowGrid {
  double step = 0.0;
  std::size_t count = 1;
};

// Requires max_n >= 2.
FlowGrid flow_grid(std::uint64_t max_n, const FlowOptions& options) {
  require(options.t_max > 0.0 && std::isfinite(options.t_max), "kronecker_sup_flow: t_max must be positive");
  const double fastest = std::log(static_cast<double>(max_n));
  const double required = std::numbers::pi / fastest;
  FlowGrid g;
  g.step = options.step.value_or(std::numbers::pi / (4.0 * fastest));
  require(g.step > 0.0, "kronecker_sup_flow: step must be positive");
  if (g.step > required)
    throw InvalidArgument("kronecker_sup_flow: step " + std::to_string(g.step) +
                          " is too coarse; need step <= pi/log " + std::to_string(max_n) + " = " +
                          std::to_string(required));
  g.count = static_cast<std::size_t>(std::floor(options.t_max / g.step * (1.0 + 1e-12))) + 1;
  return g;
}

}  // namespace

std::vector<double> kronecker_sup_flow_batch(std::span<const std::uint64_t> support, std::span<const cplx> coeffs,
                                             std::size_t batch, const FlowOptions& options) {
  require(!support.empty(), "kronecker_sup_flow_batch: empty support");
  require(coeffs.size() == batch * support.size(), "kronecker_sup_flow_batch: shape mismatch");
  std::uint64_t max_n = 0;
  std::vector<double> freqs;
  for (std::uint64_t n : support) {
    require(n >= 1, "kronecker_sup_flow_batch: indices must be >= 1");
    max_n = std::max(max_n, n);
    freqs.push_back(std::log(static_cast<double>(n)));
  }
  const FlowGrid g = max_n == 1 ? FlowGrid{} : flow_grid(max_n, options);
  const auto best = kernels::flow_grid_max(freqs, coeffs, batch, g.step, g.count);
  std::vector<double> out(batch);
  for (std::size_t b = 0; b < batch; ++b) out[b] = best[b].value;
  return out;
}

SupEstimate kronecker_sup_flow(const DirichletPoly& d, const FlowOptions& options) {
  require(!d.empty(), "kronecker_sup_flow: empty Dirichlet polynomial");
  SupEstimate est;
  est.method = SupMethod::MultistartSearch;
  const std::uint64_t max_n = d.max_index();
  if (max_n == 1) {
    require(options.t_max > 0.0 && std::isfinite(options.t_max), "kronecker_sup_flow: t_max must be positive");
    est.lower = std::abs(d.coeff(1));
    est.witness_t = 0.0;
    return est;
  }
  const FlowGrid grid = flow_grid(max_n, options);
  const double step = grid.step;
  const std::size_t count = grid.count;
  std::vector<double> freqs;
  std::vector<cplx> coeffs;
  double lipschitz = 0.0;
  for (const auto& [n, a] : d.coeffs()) {
    freqs.push_back(std::log(static_cast<double>(n)));
    coeffs.push_back(a);
    lipschitz += std::abs(a) * freqs.back();
  }
  auto value_at = [&](double t) {
    cplx s{};
    for (std::size_t j = 0; j < freqs.size(); ++j) s += coeffs[j] * std::polar(1.0, -t * freqs[j]);
    return std::abs(s);
  };
  if (!options.refine) {
    const auto best = kernels::flow_grid_max(freqs, coeffs, 1, step, count)[0];
    est.lower = best.value;
    est.witness_t = static_cast<double>(best.index) * step;
    return est;
  }
  const auto values = kernels::flow_abs_values(freqs, coeffs, step, count);
  kernels::ArgMax raw;
  for (std::size_t k = 0; k < count; ++k) raw.offer(values[k], k);
  // Between grid nodes |D| moves by at most step * sum |a_n| log n, so a
  // node below raw.value - delta cannot lead to a better maximum.
  const double delta = step * lipschitz;
  std::vector<std::size_t> candidates;
  for (std::size_t k = 1; k + 1 < count; ++k)
    if (values[k] >= values[k - 1] && values[k] >= values[k + 1] && values[k] + delta >= raw.value)
      candidates.push_back(k);
  std::vector<double> where(candidates.size());
  const auto refined = kernels::argmax_indices(candidates.size(), [&](std::size_t c) {
    const double center = static_cast<double>(candidates[c]) * step;
    double lo = center - step, hi = center + step;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = value_at(x1), f2 = value_at(x2);
    double best_t = center, best_v = values[candidates[c]];
    for (int it = 0; it < 100 && hi - lo > 1e-13 * std::max(1.0, center); ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = value_at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = value_at(x1);
      }
      if (f1 > best_v) best_v = f1, best_t = x1;
      if (f2 > best_v) best_v = f2, best_t = x2;
    }
    where[c] = best_t;
    return best_v;
  });
  est.lower = raw.value;
  est.witness_t = static_cast<double>(raw.index) * step;
  if (!candidates.empty() && refined.value > raw.value) {
    est.lower = refined.value;
    est.witness_t = where[refined.index];
  }
  return est;
}

SupEstimate sup_lifted(const DirichletPoly& d, std::size_t sampler_budget, std::uint64_t seed) {
  require(sampler_budget >= 1, "sup_lifted: sampler_budget must be positive");
  SampleOptions options;
  options.seed = seed;
  return sample_torus(bohr_lift(d), sampler_budget, options);
}

double dirichlet_rhs_bound(std::span<const std::uint64_t> A, double r) {
  const auto stats = prime_stats(A);
  RhsParams params;
  params.Pi = static_cast<double>(stats.Pi);
  params.Omega = static_cast<double>(stats.Omega);
  params.r = r;
  return ksz_rhs_bound(Theorem::Main, params);
}

}  // namespace ksz
