#include "ksz/interp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ksz/error.hpp"
#include "ksz/kernels.hpp"
#include "ksz/norms.hpp"

namespace ksz {

namespace {

// Sorted moduli with prefix sums and suffix sums of squares.
struct L1L2Table {
  std::vector<double> a;       // nonincreasing
  std::vector<double> prefix;  // prefix[k] = a_1 + ... + a_k
  std::vector<double> tail2;   // tail2[k] = a_{k+1}^2 + ... + a_n^2

  explicit L1L2Table(std::span<const cplx> x) : a(decreasing_rearrangement(x)) {
    const std::size_t n = a.size();
    prefix.assign(n + 1, 0.0);
    tail2.assign(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + a[k];
    for (std::size_t k = n; k-- > 0;) tail2[k] = tail2[k + 1] + a[k] * a[k];
  }

  // Cost of the split that caps every modulus at theta, with k entries above theta.
  double split_cost(double t, std::size_t k, double theta) const {
    const auto kd = static_cast<double>(k);
    return prefix[k] - kd * theta + t * std::sqrt(kd * theta * theta + tail2[k]);
  }

  double k(double t) const {
    const std::size_t n = a.size();
    if (n == 0 || a[0] == 0.0) return 0.0;
    double best = std::min(prefix[n], t * std::sqrt(tail2[0]));
    // On theta in [a_{k+1}, a_k] the cost is convex in theta with its
    // stationary point at t theta = sqrt(k theta^2 + S_k).
    for (std::size_t k = 1; k <= n; ++k) {
      const double hi = a[k - 1];
      const double lo = k < n ? a[k] : 0.0;
      best = std::min(best, split_cost(t, k, hi));
      const double t2 = t * t;
      const auto kd = static_cast<double>(k);
      if (t2 > kd) {
        const double theta = std::sqrt(tail2[k] / (t2 - kd));
        if (theta >= lo && theta <= hi) best = std::min(best, split_cost(t, k, theta));
      }
    }
    return best;
  }
};

}  // namespace

QFunction::QFunction(std::function<double(double, double)> psi) : psi_(std::move(psi)) {
  require(static_cast<bool>(psi_), "QFunction: empty handle");
  std::vector<double> grid(10);
  for (int i = 0; i < 10; ++i) grid[i] = std::pow(10.0, -3.0 + 6.0 * i / 9.0);
  const double lambdas[5] = {1e-3, 0.1, 0.5, 3.0, 1e3};
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double s = grid[i], t = grid[j];
      const double v = psi_(s, t);
      require(std::isfinite(v) && v >= 0.0, "QFunction: psi must be finite and nonnegative on (0, inf)^2");
      for (double lam : lambdas) {
        const double lv = psi_(lam * s, lam * t);
        require(std::abs(lv - lam * v) <= 1e-9 * lam * v, "QFunction: psi is not positively homogeneous");
      }
      if (i + 1 < grid.size())
        require(psi_(grid[i + 1], t) >= v * (1.0 - 1e-12), "QFunction: psi is not nondecreasing in s");
      if (j + 1 < grid.size())
        require(psi_(s, grid[j + 1]) >= v * (1.0 - 1e-12), "QFunction: psi is not nondecreasing in t");
    }
}

QFunction QFunction::power(double theta) {
  require(theta >= 0.0 && theta <= 1.0, "QFunction::power: theta must lie in [0, 1]");
  return QFunction([theta](double s, double t) { return std::pow(s, 1.0 - theta) * std::pow(t, theta); });
}

double k_functional_l1_l2(double t, std::span<const cplx> x) {
  require(t > 0.0 && std::isfinite(t), "k_functional_l1_l2: t must be positive");
  return L1L2Table(x).k(t);
}

bool KProfile::nondecreasing() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1] * (1.0 - 1e-12)) return false;
  return true;
}

bool KProfile::concave() const {
  for (std::size_t i = 1; i + 1 < values.size(); ++i)
    if (values[i] < (2.0 * values[i - 1] + values[i + 1]) / 3.0 * (1.0 - 1e-12)) return false;
  return true;
}

KProfile k_profile(std::span<const cplx> x, int k_lo, int k_hi) {
  require(k_lo <= k_hi, "k_profile: empty index range");
  const L1L2Table table(x);
  KProfile profile;
  profile.k_lo = k_lo;
  profile.k_hi = k_hi;
  profile.values = kernels::map_indices(static_cast<std::size_t>(k_hi - k_lo + 1), [&](std::size_t i) {
    return table.k(std::ldexp(1.0, k_lo + static_cast<int>(i)));
  });
  return profile;
}

double k_functional_weighted_linf(double s, double t, std::span<const cplx> xi, int k_lo) {
  require(s > 0.0 && std::isfinite(s), "k_functional_weighted_linf: s must be positive");
  require(t > 0.0 && std::isfinite(t), "k_functional_weighted_linf: t must be positive");
  const std::size_t n = xi.size();
  std::vector<double> b(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    b[i] = std::abs(xi[i]);
    w[i] = std::ldexp(t, -(k_lo + static_cast<int>(i)));
  }
  auto objective = [&](double u) {
    double g = 0.0;
    for (std::size_t i = 0; i < n; ++i) g = std::max(g, w[i] * std::max(b[i] - u, 0.0));
    return s * u + g;
  };
  // The objective is convex and piecewise linear; its kinks sit at 0, at the
  // |xi_k|, and where two of the lines w_k (|xi_k| - u) cross.
  std::vector<double> candidates{0.0};
  for (std::size_t i = 0; i < n; ++i) {
    candidates.push_back(b[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w[i] == w[j]) continue;
      const double u = (w[i] * b[i] - w[j] * b[j]) / (w[i] - w[j]);
      if (u > 0.0 && std::isfinite(u)) candidates.push_back(u);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  // Convexity: binary search for the first candidate where the objective stops decreasing.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (objective(candidates[mid]) <= objective(candidates[mid + 1]))
      hi = mid;
    else
      lo = mid + 1;
  }
  double best = objective(candidates[lo]);
  if (lo > 0) best = std::min(best, objective(candidates[lo - 1]));
  if (lo + 1 < candidates.size()) best = std::min(best, objective(candidates[lo + 1]));
  return best;
}

double weighted_linf_lower(double s, double t, std::span<const cplx> xi, int k_lo) {
  require(s > 0.0 && t > 0.0, "weighted_linf_lower: s and t must be positive");
  double L = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i)
    L = std::max(L, std::min(s, std::ldexp(t, -(k_lo + static_cast<int>(i)))) * std::abs(xi[i]));
  return L;
}

double k_method_norm(std::span<const cplx> x, const QFunction& psi, int k_window) {
  require(k_window >= 1, "k_method_norm: k_window must be >= 1");
  const L1L2Table table(x);
  std::map<int, double> cache;
  auto term = [&](int k) {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    const double v = table.k(std::ldexp(1.0, k)) / psi(1.0, std::ldexp(1.0, k));
    cache.emplace(k, v);
    return v;
  };
  auto sup_over = [&](int w) {
    double best = 0.0;
    for (int k = -w; k <= w; ++k) best = std::max(best, term(k));
    return best;
  };
  constexpr int kCap = 64;
  int w = std::min(k_window, kCap);
  double current = sup_over(w);
  while (w < kCap) {
    const int next = std::min(2 * w, kCap);
    const double widened = sup_over(next);
    const bool stable = widened <= current * 1.01;
    current = widened;
    w = next;
    if (stable) break;
  }
  return current;
}

double cl_orlicz_norm(std::span<const cplx> x, const QFunction& phi) {
  return orlicz_seq_norm(x, [&phi](double u) { return u <= 0.0 ? 0.0 : phi(u, std::sqrt(u)); });
}

}  // namespace ksz
