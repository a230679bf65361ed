#pragma once

// Sparse polynomials, multilinear forms, sup-norm estimators, and the
// constant-free right-hand sides of the KSZ inequalities.
//
// Sup estimators return a certified lower value (attained at the witness)
// and, where a proof is available, an upper value:
//   TorusGridBernstein  upper = 2 * grid max on a grid with >= 1 + 20m nodes per axis
//   VertexExact         upper = lower (cube enumeration)
//   Spectral            upper = lower (largest singular value)
//   MultistartSearch    lower only

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ksz {
using cplx = std::complex<double>;

enum class Flavor { Trig, Monomial };

using MultiIndex = std::vector<int>;

/// |alpha| = sum_k |alpha_k|.
int abs_degree(const MultiIndex& alpha);

class SparsePoly {
 public:
  SparsePoly(std::size_t n, Flavor flavor);

  /// Adds c to the coefficient at alpha. A coefficient that becomes exactly
  /// zero is removed.
  void add_term(const MultiIndex& alpha, cplx c);

  std::size_t n() const { return n_; }
  Flavor flavor() const { return flavor_; }
  const std::map<MultiIndex, cplx>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  /// max |alpha| over stored terms; 0 for the zero polynomial.
  int degree() const;
  /// max - min of alpha_k over the stored terms.
  int axis_span(std::size_t k) const;

 private:
  std::size_t n_;
  Flavor flavor_;
  std::map<MultiIndex, cplx> terms_;
};

SparsePoly multiply(const SparsePoly& p, const SparsePoly& q);

cplx eval_poly(const SparsePoly& p, std::span<const cplx> z);

enum class SupMethod { TorusGridBernstein, VertexExact, Spectral, MultistartSearch };
std::string_view to_string(SupMethod method);

struct SupEstimate {
  double lower = 0.0;
  std::optional<double> upper;
  SupMethod method = SupMethod::MultistartSearch;
  /// Point attaining `lower`. Multilinear sups concatenate z_1, ..., z_m.
  std::vector<cplx> witness;
  /// Flow sups report the time t of the witness instead of a point.
  std::optional<double> witness_t;
};

struct TorusOptions {
  /// Raise the grid to the Bernstein density 1 + 20m per axis and report an upper bound.
  bool certify = true;
  std::uint64_t budget = 100'000'000;
};

/// Max of |P| on the uniform tensor grid with points_per_axis nodes,
/// points_per_axis = max(grid_factor*m + 1, 1 + 20m) when certifying, else
/// grid_factor*m + 1. One variable uses an FFT. Throws BudgetExceeded when
/// points_per_axis^n exceeds the budget; sample_torus is the fallback.
SupEstimate sup_torus(const SparsePoly& p, int grid_factor, const TorusOptions& options = {});

/// Number of nodes per axis sup_torus would use.
std::size_t torus_grid_points(const SparsePoly& p, int grid_factor, bool certify);

struct SampleOptions {
  std::uint64_t seed = 0;
  /// Best random points that are refined by coordinatewise circle ascent.
  std::size_t ascent_starts = 8;
  int max_sweeps = 200;
};

/// Lower bound for the torus sup: `samples` random points, then
/// coordinatewise maximization along each circle from the best ones. The
/// point (1, ..., 1) is always among the candidates.
SupEstimate sample_torus(const SparsePoly& p, std::size_t samples, const SampleOptions& options = {});

struct SearchOptions {
  std::size_t starts = 64;
  int max_iterations = 200;
  double min_improvement = 1e-10;
  std::uint64_t seed = 0;
  /// Restrict the search to real vectors.
  bool real_domain = false;
};

/// Sup of |P| over the closed unit ball of l_p^n (p may be infinity).
/// MultistartSearch: Frank-Wolfe ascent toward the dual-normalized gradient
/// from random sphere points. VertexExact: real coefficients, p = infinity,
/// every exponent <= 1, n <= 24.
SupEstimate sup_ball(const SparsePoly& p, double p_exp, SupMethod strategy, const SearchOptions& options = {});

/// Dense coefficient tensor c(j_1, ..., j_m), row-major (j_1 slowest).
class MultilinearForm {
 public:
  MultilinearForm(std::vector<std::size_t> dims, std::vector<cplx> coeffs);
  /// Real square or rectangular matrix as a bilinear form.
  static MultilinearForm bilinear(std::size_t rows, std::size_t cols, std::span<const double> a);

  std::size_t order() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::span<const cplx> coeffs() const { return c_; }
  bool is_real() const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<cplx> c_;
};

cplx eval_multilinear(const MultilinearForm& form, std::span<const std::vector<cplx>> z);

/// Sup of |L(z_1, ..., z_m)| over the product of l_{p_j} unit balls.
/// Spectral: m = 2, p = (2, 2). VertexExact: real, all p_j = infinity,
/// sum n_j <= 24. MultistartSearch: alternating exact maximization in each
/// factor.
SupEstimate sup_multilinear(const MultilinearForm& form, std::span<const double> p, SupMethod strategy,
                            const SearchOptions& options = {});

/// Largest singular value of a dense real matrix (row-major).
double spectral_norm(std::span<const double> a, std::size_t rows, std::size_t cols);

enum class Theorem { Gateway, Matrix, KSZone, KSZoneWidth, KSZmulti, Gurgel, Analog, Main };
std::string_view to_string(Theorem theorem);
Theorem theorem_from_string(std::string_view name);

/// Symbols consumed by ksz_rhs_bound. Each formula reads only the fields it
/// needs; p entries may be infinity.
struct RhsParams {
  std::optional<double> N, n, m, r, width, Pi, Omega;
  std::optional<std::vector<double>> p;
  std::optional<std::vector<double>> dims;
};

/// Constant-free growth factor of the selected inequality:
///   Gateway      e^2 sqrt(r) (1 + log N)^(1/2)
///   Matrix       (1 + log N)^(1/r)
///   KSZone       (n (1 + log m))^(1/r)
///   KSZoneWidth  (n (1 + log(8 m^2 / width)))^(1/r)
///   KSZmulti     (sum_j n_j (1 + log m))^(1/r), m = number of dims
///   Gurgel       n^(1/r(p) + sum_j max(1/2 - 1/p_j, 0)), r(p) = min_k max(2, p_k')
///   Analog       (n (1 + log m))^(1/r(p)) n^(m max(1/2 - 1/p, 0)), r(p) = max(2, p')
///   Main         (1 + Pi (1 + 20 log Omega))^(1/r)
/// Throws InvalidArgument naming the first missing or invalid symbol.
double ksz_rhs_bound(Theorem theorem, const RhsParams& params);

/// r(p) = min_k max(2, p_k') for a list of exponents in [1, infinity].
double mixed_orlicz_exponent(std::span<const double> p);

struct NetConstants {
  double M;
  double nu;
};

/// Markov-type constants for the ball net: complex (M = e, nu = 1) or real
/// homogeneous (M = sqrt(e), nu = 1/2). The caller picks the route.
NetConstants harris_constants(bool real_homogeneous);
/// Constants for a convex body of width w: M = 4/w, nu = 2.
NetConstants wilhelmsen_constants(double width);

/// log of (1 + 20m)^n, the Bernstein grid cardinality on T^n.
double log_bernstein_grid_size(std::size_t n, int m);
/// log of (1 + 2 M m^nu)^(2n) (complex) or ^n (real).
double log_ball_net_size(std::size_t n, int m, const NetConstants& c, bool complex_field);
/// log of prod_j (1 + 2m)^(2 n_j) with m the number of factors.
double log_multilinear_net_size(std::span<const std::size_t> dims);

/// sup over the l_p^n unit ball of (sum |z_i|^r')^(1/r') = n^max(1/r' - 1/p, 0).
double holder_ball_factor(std::size_t n, double p, double r);
/// (alpha^alpha / |alpha|^|alpha|)^(1/p) with 0^0 = 1; 1 for p = infinity.
double monomial_holder_factor(const MultiIndex& alpha, double p);

}  // namespace ksz
