#pragma once

// Seeded Monte Carlo experiments: left-hand statistics of the KSZ
// inequalities against their constant-free right-hand sides.
//
// Trial t of size index s in experiment e draws from the stream
// derive_key(seed, e, s, t), so a report depends only on its spec.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ksz/subgaussian.hpp"

namespace ksz {

/// K x N array a_i(j), row-major (row i holds the vector a_i).
class CoefficientMatrix {
 public:
  CoefficientMatrix(std::size_t K, std::size_t N, std::vector<cplx> entries);
  static CoefficientMatrix zeros(std::size_t K, std::size_t N);

  std::size_t K() const { return K_; }
  std::size_t N() const { return N_; }
  std::span<const cplx> entries() const { return a_; }
  cplx operator()(std::size_t i, std::size_t j) const { return a_[i * N_ + j]; }
  std::vector<cplx> column(std::size_t j) const;

 private:
  std::size_t K_, N_;
  std::vector<cplx> a_;
};

struct MatrixStatistic {
  /// Orlicz norm of the sample sup_j |sum_i gamma_i a_i(j)|.
  double lhs = 0.0;
  /// sup_j s_norm(column j, r).
  double rhs = 0.0;
  /// The raw sample, one value per trial.
  std::vector<double> sample;
};

/// Requires trials >= 100 and r >= 2.
MatrixStatistic ksz_matrix_statistic(const CoefficientMatrix& m, const GeneratorSpec& family, double r,
                                     std::size_t trials, std::uint64_t seed);

/// N = 2^K columns, a_i(j) = (-1)^(bit i of j); every sign pattern is a column.
CoefficientMatrix sign_pattern_witness(int K);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Two standard errors of the slope.
  double half_width = 0.0;
};

/// Least squares on (log x, log y). At least 3 points with distinct x.
SlopeFit fit_slope(std::span<const std::pair<double, double>> points);

enum class ExperimentId {
  E1_MatrixKSZ,
  E2_SalemZygmund1D,
  E3_CubeQuadratic,
  E4_SpectralBilinear,
  E5_Dirichlet,
  E6_InterpIdentification
};
std::string_view to_string(ExperimentId id);
ExperimentId experiment_from_string(std::string_view name);

struct ExperimentSpec {
  ExperimentId id = ExperimentId::E1_MatrixKSZ;
  GeneratorSpec family;
  double r = 2.0;
  std::vector<std::uint64_t> sizes;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
};

/// Throws InvalidArgument unless trials >= 1 and sizes are nonempty and
/// strictly increasing; throws BudgetExceeded on a per-experiment size cap.
void validate(const ExperimentSpec& spec);

struct ReportRow {
  std::uint64_t size = 0;
  /// x coordinate of the slope fits (N = 2^K for E1, the size otherwise).
  double driver = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  /// Standard error of `mean`.
  double stderr_ = 0.0;
  /// Mean of the per-trial statistic (E6: of the per-vector ratio).
  double mean = 0.0;
  std::optional<double> min_ratio, max_ratio;
};

struct Report {
  ExperimentSpec spec;
  std::vector<ReportRow> rows;
  /// Slope of log lhs against log driver.
  SlopeFit slope;
  /// Slope of log mean against log driver.
  SlopeFit mean_slope;
  /// Slope of log ratio against log driver.
  SlopeFit ratio_slope;
  /// Fixed cap on lhs / rhs for the upper-bound experiments (E1, E2, E5).
  std::optional<double> ratio_cap;
  std::string lhs_statistic;
  std::string rhs_formula;
};

Report run_experiment(const ExperimentSpec& spec);

/// The six experiments at acceptance settings (E6 once for r = 3 and once for r = 4).
std::vector<ExperimentSpec> acceptance_suite(std::uint64_t seed = 42);

/// File stem used by the suite runner, e.g. "E6_InterpIdentification_r3".
std::string report_name(const ExperimentSpec& spec);

struct BandCheck {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

/// Acceptance bands that apply to a report.
std::vector<BandCheck> check_bands(const Report& report);

}  // namespace ksz
