#include "ksz/polys.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "ksz/error.hpp"
#include "ksz/fft.hpp"
#include "ksz/kernels.hpp"
#include "ksz/norms.hpp"
#include "ksz/rng.hpp"

namespace ksz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx ipow(cplx z, int e) {
  if (e < 0) return 1.0 / ipow(z, -e);
  cplx result = 1.0;
  while (e > 0) {
    if (e & 1) result *= z;
    z *= z;
    e >>= 1;
  }
  return result;
}

bool is_real(cplx c) { return c.imag() == 0.0; }

// Flat copy of a polynomial's terms for repeated evaluation.
struct FlatPoly {
  std::size_t n = 0;
  std::vector<int> exps;
  std::vector<cplx> coeffs;

  explicit FlatPoly(const SparsePoly& p) : n(p.n()) {
    for (const auto& [alpha, c] : p.terms()) {
      exps.insert(exps.end(), alpha.begin(), alpha.end());
      coeffs.push_back(c);
    }
  }
  std::size_t terms() const { return coeffs.size(); }
  const int* alpha(std::size_t t) const { return exps.data() + t * n; }

  cplx eval(std::span<const cplx> z) const {
    cplx s{};
    for (std::size_t t = 0; t < terms(); ++t) {
      cplx v = coeffs[t];
      const int* a = alpha(t);
      for (std::size_t k = 0; k < n; ++k)
        if (a[k] != 0) v *= ipow(z[k], a[k]);
      s += v;
    }
    return s;
  }

  // Value and holomorphic gradient; monomial flavor only.
  cplx eval_grad(std::span<const cplx> z, std::vector<cplx>& grad) const {
    std::fill(grad.begin(), grad.end(), cplx{});
    std::vector<cplx> f(n), prefix(n + 1), suffix(n + 1);
    cplx s{};
    for (std::size_t t = 0; t < terms(); ++t) {
      const int* a = alpha(t);
      for (std::size_t k = 0; k < n; ++k) f[k] = a[k] ? ipow(z[k], a[k]) : cplx{1.0};
      prefix[0] = 1.0;
      for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * f[k];
      suffix[n] = 1.0;
      for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] * f[k];
      s += coeffs[t] * prefix[n];
      for (std::size_t k = 0; k < n; ++k)
        if (a[k] > 0)
          grad[k] += coeffs[t] * static_cast<double>(a[k]) * ipow(z[k], a[k] - 1) * prefix[k] * suffix[k + 1];
    }
    return s;
  }
};

double norm_p(std::span<const cplx> z, double p) { return std::isinf(p) ? linf_norm(z) : lp_norm(z, p); }

// Point of the l_p unit ball maximizing Re sum a_k w_k (the value is ||a||_p').
std::vector<cplx> dual_point(std::span<const cplx> a, double p, bool real_domain) {
  const std::size_t n = a.size();
  std::vector<cplx> b(a.begin(), a.end());
  if (real_domain)
    for (auto& v : b) v = v.real();
  std::vector<cplx> w(n, cplx{});
  auto phase = [&](cplx v) { return v == cplx{} ? cplx{1.0} : std::conj(v) / std::abs(v); };
  if (std::isinf(p)) {
    for (std::size_t k = 0; k < n; ++k) w[k] = phase(b[k]);
    return w;
  }
  if (p == 1.0) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(b[k]) > std::abs(b[best])) best = k;
    w[best] = phase(b[best]);
    return w;
  }
  const double q = p / (p - 1.0);
  const double nq = lp_norm(b, q);
  if (nq == 0.0) {
    w[0] = 1.0;
    return w;
  }
  for (std::size_t k = 0; k < n; ++k) w[k] = phase(b[k]) * std::pow(std::abs(b[k]) / nq, q - 1.0);
  return w;
}

std::vector<cplx> random_sphere_point(CounterRng& rng, std::size_t n, double p, bool real_domain) {
  std::vector<cplx> z(n);
  for (auto& v : z) {
    const double re = rng.normal();
    v = real_domain ? cplx{re} : cplx{re, rng.normal()};
  }
  const double nz = norm_p(z, p);
  for (auto& v : z) v /= nz;
  return z;
}

// max over |w| = 1 of |sum_e b_e w^e| for exponents in [0, deg], by an FFT
// grid followed by golden-section refinement around the best node.
std::pair<double, double> max_on_circle(std::span<const int> exps, std::span<const cplx> b, int deg) {
  const std::size_t L = std::max<std::size_t>(64, 4 * (1 + 20 * static_cast<std::size_t>(deg)));
  const auto values = roots_of_unity_values(exps, b, L);
  std::size_t best = 0;
  for (std::size_t j = 1; j < L; ++j)
    if (std::abs(values[j]) > std::abs(values[best])) best = j;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(L);
  auto f = [&](double theta) {
    cplx s{};
    for (std::size_t t = 0; t < exps.size(); ++t) s += b[t] * std::polar(1.0, theta * exps[t]);
    return std::abs(s);
  };
  double lo = h * static_cast<double>(best) - h, hi = lo + 2.0 * h;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  double theta = h * static_cast<double>(best);
  double value = std::abs(values[best]);
  const double mid = 0.5 * (lo + hi);
  if (f(mid) > value) {
    theta = mid;
    value = f(mid);
  }
  return {value, theta};
}

// Coordinatewise circle ascent on the torus.
double circle_ascent(const FlatPoly& fp, std::vector<cplx>& z, int max_sweeps) {
  double value = std::abs(fp.eval(z));
  std::vector<int> exps;
  std::vector<cplx> b;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double start = value;
    for (std::size_t k = 0; k < fp.n; ++k) {
      int lo = 0, hi = 0;
      for (std::size_t t = 0; t < fp.terms(); ++t) {
        lo = std::min(lo, fp.alpha(t)[k]);
        hi = std::max(hi, fp.alpha(t)[k]);
      }
      if (lo == hi) continue;
      exps.clear();
      b.clear();
      for (std::size_t t = 0; t < fp.terms(); ++t) {
        cplx v = fp.coeffs[t];
        const int* a = fp.alpha(t);
        for (std::size_t j = 0; j < fp.n; ++j)
          if (j != k && a[j] != 0) v *= ipow(z[j], a[j]);
        exps.push_back(a[k] - lo);
        b.push_back(v);
      }
      const auto [v, theta] = max_on_circle(exps, b, hi - lo);
      if (v > value) {
        const cplx old = z[k];
        z[k] = std::polar(1.0, theta);
        const double check = std::abs(fp.eval(z));
        if (check > value) {
          value = check;
        } else {
          z[k] = old;
        }
      }
    }
    if (value - start <= 1e-12 * std::max(1.0, value)) break;
  }
  return value;
}

void require_p(double p, const char* op) {
  require(p >= 1.0 && !std::isnan(p), std::string(op) + ": p must be >= 1");
}

std::vector<std::size_t> decode_grid_index(std::uint64_t flat, std::size_t n, std::size_t points) {
  std::vector<std::size_t> digits(n);
  for (std::size_t k = n; k-- > 0;) {
    digits[k] = static_cast<std::size_t>(flat % points);
    flat /= points;
  }
  return digits;
}

}  // namespace

int abs_degree(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += std::abs(a);
  return s;
}

SparsePoly::SparsePoly(std::size_t n, Flavor flavor) : n_(n), flavor_(flavor) {}

void SparsePoly::add_term(const MultiIndex& alpha, cplx c) {
  require(alpha.size() == n_, "SparsePoly: multi-index length " + std::to_string(alpha.size()) +
                                  " does not match n = " + std::to_string(n_));
  require(std::isfinite(c.real()) && std::isfinite(c.imag()), "SparsePoly: coefficient must be finite");
  if (flavor_ == Flavor::Monomial)
    for (int a : alpha) require(a >= 0, "SparsePoly: monomial exponents must be nonnegative");
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    if (c != cplx{}) terms_.emplace(alpha, c);
    return;
  }
  it->second += c;
  if (it->second == cplx{}) terms_.erase(it);
}

int SparsePoly::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, abs_degree(alpha));
  return d;
}

int SparsePoly::axis_span(std::size_t k) const {
  require(k < n_, "SparsePoly::axis_span: axis out of range");
  if (terms_.empty()) return 0;
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (const auto& [alpha, c] : terms_) {
    lo = std::min(lo, alpha[k]);
    hi = std::max(hi, alpha[k]);
  }
  return hi - lo;
}

SparsePoly multiply(const SparsePoly& p, const SparsePoly& q) {
  require(p.n() == q.n() && p.flavor() == q.flavor(), "multiply: operands differ in n or flavor");
  SparsePoly out(p.n(), p.flavor());
  MultiIndex sum(p.n());
  for (const auto& [a, c] : p.terms())
    for (const auto& [b, d] : q.terms()) {
      for (std::size_t k = 0; k < p.n(); ++k) sum[k] = a[k] + b[k];
      out.add_term(sum, c * d);
    }
  return out;
}

cplx eval_poly(const SparsePoly& p, std::span<const cplx> z) {
  require(z.size() == p.n(), "eval_poly: point has length " + std::to_string(z.size()) + ", expected " +
                                 std::to_string(p.n()));
  for (const auto& [alpha, c] : p.terms())
    for (std::size_t k = 0; k < p.n(); ++k)
      require(!(alpha[k] < 0 && z[k] == cplx{}), "eval_poly: zero coordinate with a negative exponent");
  return FlatPoly(p).eval(z);
}

std::string_view to_string(SupMethod method) {
  switch (method) {
    case SupMethod::TorusGridBernstein: return "TorusGridBernstein";
    case SupMethod::VertexExact: return "VertexExact";
    case SupMethod::Spectral: return "Spectral";
    case SupMethod::MultistartSearch: return "MultistartSearch";
  }
  return "?";
}

std::size_t torus_grid_points(const SparsePoly& p, int grid_factor, bool certify) {
  require(grid_factor >= 1, "sup_torus: grid_factor must be positive");
  const auto m = static_cast<std::size_t>(p.degree());
  const std::size_t base = static_cast<std::size_t>(grid_factor) * m + 1;
  return certify ? std::max(base, 1 + 20 * m) : base;
}

SupEstimate sup_torus(const SparsePoly& p, int grid_factor, const TorusOptions& options) {
  const std::size_t L = torus_grid_points(p, grid_factor, options.certify);
  const std::size_t n = p.n();
  const std::size_t m = static_cast<std::size_t>(p.degree());
  SupEstimate est;
  est.method = SupMethod::TorusGridBernstein;
  if (n == 0) {
    est.lower = p.terms().empty() ? 0.0 : std::abs(p.terms().begin()->second);
    est.upper = est.lower;
    return est;
  }
  const double evaluations = std::pow(static_cast<double>(L), static_cast<double>(n));
  if (evaluations > static_cast<double>(options.budget))
    throw BudgetExceeded("sup_torus: grid of " + std::to_string(L) + "^" + std::to_string(n) +
                         " points exceeds the evaluation budget of " + std::to_string(options.budget) +
                         "; use sample_torus for a lower bound");
  const FlatPoly fp(p);
  std::vector<std::size_t> digits;
  if (n == 1) {
    const auto values = roots_of_unity_values(fp.exps, fp.coeffs, L);
    kernels::ArgMax best;
    for (std::size_t j = 0; j < L; ++j) best.offer(std::abs(values[j]), j);
    est.lower = best.value;
    digits = {static_cast<std::size_t>(best.index)};
  } else {
    kernels::TermTable table{n, fp.exps, fp.coeffs};
    const auto best = kernels::torus_grid_max(table, L);
    est.lower = best.value;
    digits = decode_grid_index(best.index, n, L);
  }
  est.witness.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    est.witness[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(digits[k]) / static_cast<double>(L));
  if (L >= 1 + 20 * m) est.upper = 2.0 * est.lower;
  return est;
}

SupEstimate sample_torus(const SparsePoly& p, std::size_t samples, const SampleOptions& options) {
  require(samples >= 1, "sample_torus: need at least one sample");
  const std::size_t n = p.n();
  const FlatPoly fp(p);
  SupEstimate est;
  est.method = SupMethod::MultistartSearch;
  if (n == 0) {
    est.lower = std::abs(fp.eval({}));
    return est;
  }
  // Candidate 0 is (1, ..., 1); candidate i > 0 uses stream i.
  auto point = [&](std::size_t i) {
    std::vector<cplx> z(n, cplx{1.0});
    if (i == 0) return z;
    CounterRng rng(options.seed, i);
    for (auto& v : z) v = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    return z;
  };
  const std::size_t count = samples + 1;
  const auto values = kernels::map_indices(count, [&](std::size_t i) { return std::abs(fp.eval(point(i))); });
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  const std::size_t starts = std::min(count, std::max<std::size_t>(1, options.ascent_starts));
  std::vector<std::vector<cplx>> refined(starts);
  const auto best = kernels::argmax_indices(starts, [&](std::size_t s) {
    refined[s] = point(order[s]);
    return circle_ascent(fp, refined[s], options.max_sweeps);
  });
  est.lower = best.value;
  est.witness = refined[best.index];
  return est;
}

SupEstimate sup_ball(const SparsePoly& p, double p_exp, SupMethod strategy, const SearchOptions& options) {
  require_p(p_exp, "sup_ball");
  require(p.flavor() == Flavor::Monomial, "sup_ball: polynomial must have monomial flavor");
  const std::size_t n = p.n();
  SupEstimate est;
  est.method = strategy;
  const FlatPoly fp(p);
  if (strategy == SupMethod::VertexExact) {
    require(std::isinf(p_exp), "sup_ball: VertexExact requires p = infinity");
    kernels::MultilinearTerms terms{n, {}, {}};
    for (const auto& [alpha, c] : p.terms()) {
      require(is_real(c), "sup_ball: VertexExact requires real coefficients");
      std::vector<std::size_t> vars;
      for (std::size_t k = 0; k < n; ++k) {
        require(alpha[k] <= 1, "sup_ball: VertexExact requires every exponent <= 1");
        if (alpha[k] == 1) vars.push_back(k);
      }
      terms.vars.push_back(std::move(vars));
      terms.coeffs.push_back(c.real());
    }
    if (n > 24) throw BudgetExceeded("sup_ball: VertexExact supports n <= 24, got n = " + std::to_string(n));
    const auto best = kernels::vertex_max(terms);
    est.lower = best.value;
    est.upper = best.value;
    est.witness.resize(n);
    for (std::size_t k = 0; k < n; ++k) est.witness[k] = ((best.index >> k) & 1u) ? -1.0 : 1.0;
    return est;
  }
  require(strategy == SupMethod::MultistartSearch, "sup_ball: strategy must be MultistartSearch or VertexExact");
  if (n == 0) {
    est.lower = std::abs(fp.eval({}));
    return est;
  }
  const std::size_t starts = std::max<std::size_t>(64, options.starts);
  std::vector<std::vector<cplx>> witnesses(starts);
  const int max_deg = p.degree();
  const auto best = kernels::argmax_indices(starts, [&](std::size_t s) {
    CounterRng rng(options.seed, s);
    auto z = random_sphere_point(rng, n, p_exp, options.real_domain);
    std::vector<cplx> grad(n);
    cplx v = fp.eval_grad(z, grad);
    double value = std::abs(v);
    for (int it = 0; it < options.max_iterations; ++it) {
      const double start_value = value;
      const cplx rot = v == cplx{} ? cplx{1.0} : std::conj(v) / std::abs(v);
      std::vector<cplx> a(n);
      for (std::size_t k = 0; k < n; ++k) a[k] = rot * grad[k];
      const auto w = dual_point(a, p_exp, options.real_domain);
      std::vector<cplx> trial(n);
      for (double step = 1.0; step >= 1.0 / 1024.0; step *= 0.5) {
        for (std::size_t k = 0; k < n; ++k) trial[k] = z[k] + step * (w[k] - z[k]);
        const double tv = std::abs(fp.eval(trial));
        if (tv > value) {
          z = trial;
          value = tv;
          break;
        }
      }
      // Push to the sphere: along lambda * z / ||z||, |lambda| = 1 (or
      // lambda = +-1 on the real domain), the modulus dominates |P(z)|.
      const double nz = norm_p(z, p_exp);
      if (nz > 0.0) {
        std::vector<int> degs;
        std::vector<cplx> b;
        std::vector<cplx> u(n);
        for (std::size_t k = 0; k < n; ++k) u[k] = z[k] / nz;
        if (options.real_domain) {
          for (double sign : {1.0, -1.0}) {
            for (std::size_t k = 0; k < n; ++k) trial[k] = sign * u[k];
            const double tv = std::abs(fp.eval(trial));
            if (tv > value) {
              z = trial;
              value = tv;
            }
          }
        } else {
          for (std::size_t t = 0; t < fp.terms(); ++t) {
            const int* al = fp.alpha(t);
            cplx c = fp.coeffs[t];
            int d = 0;
            for (std::size_t k = 0; k < n; ++k)
              if (al[k]) {
                c *= ipow(u[k], al[k]);
                d += al[k];
              }
            degs.push_back(d);
            b.push_back(c);
          }
          const auto [cv, theta] = max_on_circle(degs, b, max_deg);
          if (cv > value) {
            const cplx lam = std::polar(1.0, theta);
            for (std::size_t k = 0; k < n; ++k) trial[k] = lam * u[k];
            const double tv = std::abs(fp.eval(trial));
            if (tv > value) {
              z = trial;
              value = tv;
            }
          }
        }
      }
      v = fp.eval_grad(z, grad);
      value = std::abs(v);
      if (value - start_value <= options.min_improvement) break;
    }
    witnesses[s] = z;
    return value;
  });
  est.lower = best.value;
  est.witness = witnesses[best.index];
  return est;
}

MultilinearForm::MultilinearForm(std::vector<std::size_t> dims, std::vector<cplx> coeffs)
    : dims_(std::move(dims)), c_(std::move(coeffs)) {
  require(!dims_.empty(), "MultilinearForm: need at least one factor");
  std::size_t total = 1;
  for (std::size_t d : dims_) {
    require(d >= 1, "MultilinearForm: every dimension must be positive");
    total *= d;
  }
  require(c_.size() == total, "MultilinearForm: tensor has " + std::to_string(c_.size()) + " entries, expected " +
                                  std::to_string(total));
  for (const auto& v : c_)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), "MultilinearForm: coefficients must be finite");
}

MultilinearForm MultilinearForm::bilinear(std::size_t rows, std::size_t cols, std::span<const double> a) {
  require(a.size() == rows * cols, "MultilinearForm::bilinear: shape mismatch");
  return MultilinearForm({rows, cols}, std::vector<cplx>(a.begin(), a.end()));
}

bool MultilinearForm::is_real() const {
  return std::all_of(c_.begin(), c_.end(), [](const cplx& v) { return v.imag() == 0.0; });
}

namespace {

// cur has layout [rest][n]; contracts the trailing axis with z.
std::vector<cplx> contract_last(const std::vector<cplx>& cur, std::span<const cplx> z) {
  const std::size_t n = z.size();
  std::vector<cplx> out(cur.size() / n);
  for (std::size_t i = 0; i < out.size(); ++i) {
    cplx s{};
    for (std::size_t k = 0; k < n; ++k) s += cur[i * n + k] * z[k];
    out[i] = s;
  }
  return out;
}

// cur has layout [n][rest]; contracts the leading axis with z.
std::vector<cplx> contract_first(const std::vector<cplx>& cur, std::span<const cplx> z) {
  const std::size_t n = z.size();
  const std::size_t rest = cur.size() / n;
  std::vector<cplx> out(rest);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < rest; ++i) out[i] += z[k] * cur[k * rest + i];
  return out;
}

// Gradient of the form in factor j with the other factors fixed.
std::vector<cplx> factor_gradient(const MultilinearForm& form, const std::vector<std::vector<cplx>>& z,
                                  std::size_t j) {
  std::vector<cplx> cur(form.coeffs().begin(), form.coeffs().end());
  for (std::size_t f = form.order(); f-- > j + 1;) cur = contract_last(cur, z[f]);
  for (std::size_t f = 0; f < j; ++f) cur = contract_first(cur, z[f]);
  return cur;
}

std::vector<cplx> concat(const std::vector<std::vector<cplx>>& z) {
  std::vector<cplx> out;
  for (const auto& v : z) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace

cplx eval_multilinear(const MultilinearForm& form, std::span<const std::vector<cplx>> z) {
  require(z.size() == form.order(), "eval_multilinear: expected " + std::to_string(form.order()) + " vectors");
  for (std::size_t j = 0; j < z.size(); ++j)
    require(z[j].size() == form.dims()[j], "eval_multilinear: vector " + std::to_string(j + 1) + " has length " +
                                               std::to_string(z[j].size()) + ", expected " +
                                               std::to_string(form.dims()[j]));
  std::vector<cplx> cur(form.coeffs().begin(), form.coeffs().end());
  for (std::size_t f = form.order(); f-- > 0;) cur = contract_last(cur, z[f]);
  return cur[0];
}

double spectral_norm(std::span<const double> a, std::size_t rows, std::size_t cols) {
  require(a.size() == rows * cols && rows >= 1 && cols >= 1, "spectral_norm: shape mismatch");
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(a.data(),
                                                                                           rows, cols);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

SupEstimate sup_multilinear(const MultilinearForm& form, std::span<const double> p, SupMethod strategy,
                            const SearchOptions& options) {
  const std::size_t m = form.order();
  require(p.size() == m, "sup_multilinear: need one exponent per factor");
  for (double pj : p) require_p(pj, "sup_multilinear");
  const auto& dims = form.dims();
  SupEstimate est;
  est.method = strategy;

  if (strategy == SupMethod::Spectral) {
    require(m == 2 && p[0] == 2.0 && p[1] == 2.0, "sup_multilinear: Spectral requires m = 2 and p = (2, 2)");
    using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const CMat> a(form.coeffs().data(), dims[0], dims[1]);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    est.lower = svd.singularValues()(0);
    est.upper = est.lower;
    // x^T A y = u^* A v = sigma for x = conj(u), y = v.
    for (Eigen::Index i = 0; i < svd.matrixU().rows(); ++i) est.witness.push_back(std::conj(svd.matrixU()(i, 0)));
    for (Eigen::Index i = 0; i < svd.matrixV().rows(); ++i) est.witness.push_back(svd.matrixV()(i, 0));
    return est;
  }

  if (strategy == SupMethod::VertexExact) {
    require(form.is_real(), "sup_multilinear: VertexExact requires real coefficients");
    for (double pj : p) require(std::isinf(pj), "sup_multilinear: VertexExact requires every p_j = infinity");
    const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
    if (total > 24)
      throw BudgetExceeded("sup_multilinear: VertexExact supports sum n_j <= 24, got " + std::to_string(total));
    std::vector<double> real(form.coeffs().size());
    std::transform(form.coeffs().begin(), form.coeffs().end(), real.begin(), [](const cplx& v) { return v.real(); });
    // The last factor is optimized in closed form: y = sign(w), value ||w||_1.
    auto last_factor = [&](std::span<const cplx> w) {
      std::vector<cplx> y(w.size());
      for (std::size_t k = 0; k < w.size(); ++k) y[k] = w[k].real() < 0.0 ? -1.0 : 1.0;
      return y;
    };
    auto signs = [](std::uint64_t bits, std::size_t offset, std::size_t len) {
      std::vector<cplx> x(len);
      for (std::size_t k = 0; k < len; ++k) x[k] = ((bits >> (offset + k)) & 1u) ? -1.0 : 1.0;
      return x;
    };
    std::vector<std::vector<cplx>> z(m);
    if (m == 1) {
      z[0] = last_factor(form.coeffs());
      est.lower = l1_norm(form.coeffs());
    } else if (m == 2) {
      const auto best = kernels::bilinear_vertex_max(real, dims[0], dims[1]);
      z[0] = signs(best.index, 0, dims[0]);
      z[1] = last_factor(factor_gradient(form, {z[0], std::vector<cplx>(dims[1])}, 1));
      est.lower = best.value;
    } else {
      const std::size_t bits = total - dims[m - 1];
      auto leading = [&](std::uint64_t code) {
        std::vector<std::vector<cplx>> zz(m);
        std::size_t offset = 0;
        for (std::size_t j = 0; j + 1 < m; ++j) {
          zz[j] = signs(code, offset, dims[j]);
          offset += dims[j];
        }
        zz[m - 1].assign(dims[m - 1], cplx{});
        return zz;
      };
      const auto best = kernels::argmax_indices(std::size_t{1} << bits, [&](std::size_t code) {
        return l1_norm(factor_gradient(form, leading(code), m - 1));
      });
      z = leading(best.index);
      const auto w = factor_gradient(form, z, m - 1);
      z[m - 1] = last_factor(w);
      est.lower = best.value;
    }
    est.upper = est.lower;
    est.witness = concat(z);
    return est;
  }

  require(strategy == SupMethod::MultistartSearch,
          "sup_multilinear: strategy must be Spectral, VertexExact or MultistartSearch");
  const std::size_t starts = std::max<std::size_t>(64, options.starts);
  std::vector<std::vector<cplx>> witnesses(starts);
  const auto best = kernels::argmax_indices(starts, [&](std::size_t s) {
    CounterRng rng(options.seed, s);
    std::vector<std::vector<cplx>> z(m);
    for (std::size_t j = 0; j < m; ++j) z[j] = random_sphere_point(rng, dims[j], p[j], options.real_domain);
    double value = std::abs(eval_multilinear(form, z));
    for (int it = 0; it < options.max_iterations; ++it) {
      const double start_value = value;
      for (std::size_t j = 0; j < m; ++j) {
        const auto g = factor_gradient(form, z, j);
        cplx v{};
        for (std::size_t k = 0; k < g.size(); ++k) v += g[k] * z[j][k];
        const cplx rot = v == cplx{} ? cplx{1.0} : std::conj(v) / std::abs(v);
        std::vector<cplx> a(g.size());
        for (std::size_t k = 0; k < g.size(); ++k) a[k] = rot * g[k];
        auto candidate = z;
        candidate[j] = dual_point(a, p[j], options.real_domain);
        const double cv = std::abs(eval_multilinear(form, candidate));
        if (cv > value) {
          z = std::move(candidate);
          value = cv;
        }
      }
      if (value - start_value <= options.min_improvement) break;
    }
    witnesses[s] = concat(z);
    return value;
  });
  est.lower = best.value;
  est.witness = witnesses[best.index];
  return est;
}

std::string_view to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::Gateway: return "Gateway";
    case Theorem::Matrix: return "Matrix";
    case Theorem::KSZone: return "KSZone";
    case Theorem::KSZoneWidth: return "KSZoneWidth";
    case Theorem::KSZmulti: return "KSZmulti";
    case Theorem::Gurgel: return "Gurgel";
    case Theorem::Analog: return "Analog";
    case Theorem::Main: return "Main";
  }
  return "?";
}

Theorem theorem_from_string(std::string_view name) {
  for (auto t : {Theorem::Gateway, Theorem::Matrix, Theorem::KSZone, Theorem::KSZoneWidth, Theorem::KSZmulti,
                 Theorem::Gurgel, Theorem::Analog, Theorem::Main})
    if (to_string(t) == name) return t;
  throw InvalidArgument("unknown theorem '" + std::string(name) + "'");
}

double mixed_orlicz_exponent(std::span<const double> p) {
  require(!p.empty(), "mixed_orlicz_exponent: empty exponent list");
  double r = kInf;
  for (double pk : p) {
    require_p(pk, "mixed_orlicz_exponent");
    const double conj = pk == 1.0 ? kInf : conjugate_exponent(pk);
    r = std::min(r, std::max(2.0, conj));
  }
  return r;
}

double ksz_rhs_bound(Theorem theorem, const RhsParams& params) {
  const std::string name(to_string(theorem));
  auto get = [&](const std::optional<double>& v, const char* symbol, double min, bool strict) {
    if (!v) throw InvalidArgument("ksz_rhs_bound(" + name + "): missing parameter '" + symbol + "'");
    const double x = *v;
    if (std::isnan(x) || !std::isfinite(x) || (strict ? x <= min : x < min))
      throw InvalidArgument("ksz_rhs_bound(" + name + "): invalid parameter '" + symbol + "' = " + std::to_string(x));
    return x;
  };
  auto get_list = [&](const std::optional<std::vector<double>>& v, const char* symbol) {
    if (!v || v->empty()) throw InvalidArgument("ksz_rhs_bound(" + name + "): missing parameter '" + symbol + "'");
    return *v;
  };
  auto r_of = [&] { return get(params.r, "r", 2.0, false); };
  const double e = std::numbers::e;
  switch (theorem) {
    case Theorem::Gateway: {
      const double N = get(params.N, "N", 1.0, false);
      const double r = r_of();
      return e * e * std::sqrt(r) * std::sqrt(1.0 + std::log(N));
    }
    case Theorem::Matrix: {
      const double N = get(params.N, "N", 1.0, false);
      return std::pow(1.0 + std::log(N), 1.0 / r_of());
    }
    case Theorem::KSZone: {
      const double n = get(params.n, "n", 1.0, false);
      const double m = get(params.m, "m", 1.0, false);
      return std::pow(n * (1.0 + std::log(m)), 1.0 / r_of());
    }
    case Theorem::KSZoneWidth: {
      const double n = get(params.n, "n", 1.0, false);
      const double m = get(params.m, "m", 1.0, false);
      const double w = get(params.width, "width", 0.0, true);
      const double inner = 1.0 + std::log(8.0 * m * m / w);
      if (inner <= 0.0) throw InvalidArgument("ksz_rhs_bound(" + name + "): invalid parameter 'width' (too large)");
      return std::pow(n * inner, 1.0 / r_of());
    }
    case Theorem::KSZmulti: {
      const auto dims = get_list(params.dims, "dims");
      double total = 0.0;
      for (double d : dims) {
        if (!(d >= 1.0)) throw InvalidArgument("ksz_rhs_bound(" + name + "): invalid parameter 'dims'");
        total += d;
      }
      const auto m = static_cast<double>(dims.size());
      if (params.m && *params.m != m)
        throw InvalidArgument("ksz_rhs_bound(" + name + "): parameter 'm' disagrees with the length of 'dims'");
      return std::pow(total * (1.0 + std::log(m)), 1.0 / r_of());
    }
    case Theorem::Gurgel: {
      const double n = get(params.n, "n", 1.0, false);
      const auto p = get_list(params.p, "p");
      for (double pk : p)
        if (!(pk >= 1.0)) throw InvalidArgument("ksz_rhs_bound(" + name + "): invalid parameter 'p'");
      if (params.m && *params.m != static_cast<double>(p.size()))
        throw InvalidArgument("ksz_rhs_bound(" + name + "): parameter 'm' disagrees with the length of 'p'");
      double exponent = 1.0 / mixed_orlicz_exponent(p);
      for (double pk : p) exponent += std::max(0.5 - 1.0 / pk, 0.0);
      return std::pow(n, exponent);
    }
    case Theorem::Analog: {
      const double n = get(params.n, "n", 1.0, false);
      const double m = get(params.m, "m", 1.0, false);
      const auto p = get_list(params.p, "p");
      if (p.size() != 1 || !(p[0] >= 1.0))
        throw InvalidArgument("ksz_rhs_bound(" + name + "): parameter 'p' must be a single exponent >= 1");
      const double rp = mixed_orlicz_exponent(p);
      return std::pow(n * (1.0 + std::log(m)), 1.0 / rp) * std::pow(n, m * std::max(0.5 - 1.0 / p[0], 0.0));
    }
    case Theorem::Main: {
      const double Pi = get(params.Pi, "Pi", 0.0, false);
      const double Omega = get(params.Omega, "Omega", 0.0, false);
      const double r = r_of();
      if (Pi == 0.0) return 1.0;
      if (Omega < 1.0) throw InvalidArgument("ksz_rhs_bound(" + name + "): parameter 'Omega' must be >= 1 when Pi > 0");
      return std::pow(1.0 + Pi * (1.0 + 20.0 * std::log(Omega)), 1.0 / r);
    }
  }
  throw InvalidArgument("ksz_rhs_bound: unknown theorem");
}

NetConstants harris_constants(bool real_homogeneous) {
  return real_homogeneous ? NetConstants{std::sqrt(std::numbers::e), 0.5} : NetConstants{std::numbers::e, 1.0};
}

NetConstants wilhelmsen_constants(double width) {
  require(width > 0.0 && std::isfinite(width), "wilhelmsen_constants: width must be positive");
  return {4.0 / width, 2.0};
}

double log_bernstein_grid_size(std::size_t n, int m) {
  require(m >= 0, "log_bernstein_grid_size: degree must be nonnegative");
  return static_cast<double>(n) * std::log1p(20.0 * m);
}

double log_ball_net_size(std::size_t n, int m, const NetConstants& c, bool complex_field) {
  require(m >= 0, "log_ball_net_size: degree must be nonnegative");
  const double per = std::log1p(2.0 * c.M * std::pow(static_cast<double>(m), c.nu));
  return (complex_field ? 2.0 : 1.0) * static_cast<double>(n) * per;
}

double log_multilinear_net_size(std::span<const std::size_t> dims) {
  require(!dims.empty(), "log_multilinear_net_size: need at least one factor");
  const auto m = static_cast<double>(dims.size());
  double s = 0.0;
  for (std::size_t d : dims) s += 2.0 * static_cast<double>(d) * std::log1p(2.0 * m);
  return s;
}

double holder_ball_factor(std::size_t n, double p, double r) {
  require(n >= 1, "holder_ball_factor: n must be positive");
  require_p(p, "holder_ball_factor");
  const double rc = conjugate_exponent(r);
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return std::pow(static_cast<double>(n), std::max(1.0 / rc - inv_p, 0.0));
}

double monomial_holder_factor(const MultiIndex& alpha, double p) {
  require_p(p, "monomial_holder_factor");
  double log_num = 0.0;
  double total = 0.0;
  for (int a : alpha) {
    require(a >= 0, "monomial_holder_factor: exponents must be nonnegative");
    if (a > 0) log_num += a * std::log(static_cast<double>(a));
    total += a;
  }
  if (std::isinf(p) || total == 0.0) return 1.0;
  return std::exp((log_num - total * std::log(total)) / p);
}

}  // namespace ksz
