#pragma once

// Sequence-space norms and exponential Orlicz norms of empirical samples.
//
// All functions are pure. Sequences are complex; real data can be passed
// through as_complex(). Every sequence norm here is rearrangement invariant:
// it depends only on the decreasing rearrangement of |x|.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ksz {

using cplx = std::complex<double>;

std::vector<cplx> as_complex(std::span<const double> x);

/// |x| sorted nonincreasing.
std::vector<double> decreasing_rearrangement(std::span<const cplx> x);

double l1_norm(std::span<const cplx> x);
double l2_norm(std::span<const cplx> x);
double linf_norm(std::span<const cplx> x);
/// (sum |x_k|^p)^(1/p) for finite p >= 1 (computed with max scaling).
double lp_norm(std::span<const cplx> x, double p);

/// Conjugate exponent r' = r / (r - 1).
double conjugate_exponent(double r);

/// Positive nonincreasing weight w_1 >= w_2 >= ... > 0 of a Marcinkiewicz space.
class WeightSequence {
 public:
  explicit WeightSequence(std::vector<double> w);
  /// w_n = psi(n) - psi(n - 1) with psi(0) = 0, for n = 1..length.
  static WeightSequence from_psi(const std::function<double(double)>& psi, std::size_t length);
  /// psi(n) = n^(1 - 1/q): the weight whose Marcinkiewicz space is weak-l_q.
  static WeightSequence power(double q, std::size_t length);

  std::span<const double> values() const { return w_; }
  std::size_t size() const { return w_.size(); }

 private:
  std::vector<double> w_;
};

/// Weak-l_q quasi-norm sup_n n^(1/q) x*_n; q > 1.
double weak_norm(std::span<const cplx> x, double q);

/// sup_n (x*_1 + ... + x*_n) / (w_1 + ... + w_n), n <= length(w).
/// x is zero-extended; entries of x beyond length(w) are ignored.
double marcinkiewicz_norm(std::span<const cplx> x, const WeightSequence& w);

/// l_2 for r = 2, otherwise the Marcinkiewicz norm with psi(n) = n^(1 - 1/r').
double s_norm(std::span<const cplx> x, double r);

/// h_N = 1 + 1/2 + ... + 1/N.
double harmonic_number(std::size_t n);

/// (sum_j |xi_j|^h_N / j)^(1/h_N), N = length(xi). The weights 1/j are used
/// as-is (total mass h_N), which is what pins the e^(-1) / e^(1/e) sandwich
/// against ||xi||_inf.
double l_hN_norm(std::span<const cplx> xi);

/// Nonnegative finite realizations of a scalar statistic, uniform weights.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(std::vector<double> values);
  std::span<const double> values() const { return v_; }
  std::size_t size() const { return v_.size(); }
  double max() const { return max_; }

 private:
  std::vector<double> v_;
  double max_ = 0.0;
};

/// Luxemburg norm for phi_r(t) = exp(t^r) - 1 under the empirical measure:
/// smallest eps with mean(exp((v/eps)^r) - 1) <= 1. Log-scale bisection on
/// the bracket [max/50, 50 max]; exponents above 700 count as infinite.
double orlicz_empirical_norm(const EmpiricalSample& sample, double r);

/// max over integer p in [1, p_max] of p^(-1/r) (mean v^p)^(1/p).
double pmoment_orlicz_estimate(const EmpiricalSample& sample, double r, double p_max);

/// Luxemburg norm of x in the Orlicz sequence space whose Young function is
/// the inverse of `phi_inverse`. phi_inverse must be continuous, strictly
/// increasing, and vanish at 0; this is checked on a sampled grid.
double orlicz_seq_norm(std::span<const cplx> x, const std::function<double(double)>& phi_inverse);

}  // namespace ksz
