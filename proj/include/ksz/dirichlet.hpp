#pragma once

// Finitely supported Dirichlet polynomials D(s) = sum_{n in A} a_n n^(-s),
// their prime statistics, and the Bohr lift n = prod p_k^alpha_k -> z^alpha.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ksz/polys.hpp"

namespace ksz {

/// pi(x): number of primes <= x.
std::uint64_t prime_count(std::uint64_t x);

/// All primes <= x.
std::vector<std::uint64_t> primes_up_to(std::uint64_t x);

/// The first `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);

struct PrimeStats {
  /// max_{n in A} pi(n).
  std::uint64_t Pi = 0;
  /// max_{n in A} of the number of prime factors with multiplicity.
  int Omega = 0;
  /// n -> sparse exponent vector: (k, alpha_k) with k the 0-based index of
  /// the prime, increasing in k.
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, int>>> factorizations;
};

constexpr std::uint64_t kMaxSupport = std::uint64_t{1} << 40;

/// Exact Pi, Omega and factorizations. A nonempty, 1 <= n <= 2^40.
PrimeStats prime_stats(std::span<const std::uint64_t> A);

struct PrimeCountCheck {
  std::uint64_t pi_exact = 0;
  /// x log 2 / log x, a lower bound for x >= 5.
  double lower = 0.0;
  /// 5x / (3 log x), an upper bound for x > 1.
  double upper = 0.0;
  bool violated = false;
};

PrimeCountCheck costa_pereira_check(double x);

class DirichletPoly {
 public:
  DirichletPoly() = default;
  explicit DirichletPoly(const std::map<std::uint64_t, cplx>& coeffs);

  /// Sets a_n; a zero coefficient removes n from the support.
  void set(std::uint64_t n, cplx a);
  cplx coeff(std::uint64_t n) const;

  const std::map<std::uint64_t, cplx>& coeffs() const { return c_; }
  std::vector<std::uint64_t> support() const;
  bool empty() const { return c_.empty(); }
  std::uint64_t max_index() const { return c_.empty() ? 0 : c_.rbegin()->first; }

  /// sum_n a_n n^(-it).
  cplx at_time(double t) const;

 private:
  std::map<std::uint64_t, cplx> c_;
};

/// Monomial polynomial in exactly Pi(A) variables with coefficient a_n at
/// alpha(n). Throws BudgetExceeded for Pi(A) > 10^6.
SparsePoly bohr_lift(const DirichletPoly& d);

/// Inverse of bohr_lift: z^alpha -> (prod p_k^alpha_k)^(-s). Throws when an
/// index would overflow 64 bits.
DirichletPoly bohr_unlift(const SparsePoly& p);

struct FlowOptions {
  double t_max = 1e4;
  /// Default pi / (4 log max A).
  std::optional<double> step;
  /// Golden-section refinement of interior grid maxima that can still beat
  /// the best grid value (Lipschitz test).
  bool refine = false;
};

/// max over t in {0, step, ..., <= t_max} of |D(it)|; lower bound only.
/// Requires step <= pi / log max A.
SupEstimate kronecker_sup_flow(const DirichletPoly& d, const FlowOptions& options = {});

/// Raw-grid flow sups for `batch` coefficient rows over one support
/// (coeffs is batch x |support|, row-major). Phases are shared across rows.
std::vector<double> kronecker_sup_flow_batch(std::span<const std::uint64_t> support, std::span<const cplx> coeffs,
                                             std::size_t batch, const FlowOptions& options = {});

/// Lower bound for the sup of the lift over T^Pi(A) (sample_torus).
SupEstimate sup_lifted(const DirichletPoly& d, std::size_t sampler_budget, std::uint64_t seed = 0);

/// (1 + Pi(A) (1 + 20 log Omega(A)))^(1/r).
double dirichlet_rhs_bound(std::span<const std::uint64_t> A, double r);

}  // namespace ksz
