#pragma once

// K-functionals for the couples (l1, l2) and (l_inf, l_inf(2^-k)), the
// K-method (psi, inf) norm, and Calderon-Lozanovskii norms of (l1, l2).

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace ksz {
using cplx = std::complex<double>;

/// A function psi(s, t) on (0, inf)^2, positively homogeneous of degree 1
/// and nondecreasing in each argument. Both properties are checked on a
/// sampled 10 x 10 x 5 grid at construction; a handle that passes the sample
/// but fails elsewhere is the caller's problem.
class QFunction {
 public:
  explicit QFunction(std::function<double(double, double)> psi);
  /// s^(1 - theta) t^theta, theta in [0, 1].
  static QFunction power(double theta);

  double operator()(double s, double t) const { return psi_(s, t); }

 private:
  std::function<double(double, double)> psi_;
};

/// K(1, t, x; l1, l2) = inf over x = x0 + x1 of ||x0||_1 + t ||x1||_2.
double k_functional_l1_l2(double t, std::span<const cplx> x);

struct KProfile {
  int k_lo = 0;
  int k_hi = 0;
  /// K(1, 2^k, x) for k = k_lo..k_hi.
  std::vector<double> values;

  bool nondecreasing() const;
  /// f(t) >= (2 f(t/2) + f(2t)) / 3 at every interior node.
  bool concave() const;
};

KProfile k_profile(std::span<const cplx> x, int k_lo, int k_hi);

/// Exact K(s, t, xi; l_inf, l_inf(2^-k)) = min_{u >= 0} s u + t sup_k 2^-k (|xi_k| - u)_+
/// where xi[i] carries index k = k_lo + i.
double k_functional_weighted_linf(double s, double t, std::span<const cplx> xi, int k_lo);

/// L = sup_k min(s, 2^-k t) |xi_k|; the exact value lies in [L, 2L].
double weighted_linf_lower(double s, double t, std::span<const cplx> xi, int k_lo);

/// sup_k K(1, 2^k, x; l1, l2) / psi(1, 2^k) over k in [-W, W]. W starts at
/// k_window and doubles until the sup moves by less than 1%, capped at 64.
double k_method_norm(std::span<const cplx> x, const QFunction& psi, int k_window = 8);

/// Norm of x in phi(l1, l2) = l_Phi with Phi^-1(u) = phi(u, sqrt u).
double cl_orlicz_norm(std::span<const cplx> x, const QFunction& phi);

}  // namespace ksz
