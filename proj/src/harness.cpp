#include "ksz/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ksz/dirichlet.hpp"
#include "ksz/error.hpp"
#include "ksz/interp.hpp"
#include "ksz/kernels.hpp"
#include "ksz/norms.hpp"
#include "ksz/polys.hpp"
#include "ksz/rng.hpp"

namespace ksz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kRatioCap = std::exp(2.0);

struct Moments {
  double mean = 0.0;
  double stderr_ = 0.0;
};

Moments moments(std::span<const double> v) {
  Moments m;
  const auto n = static_cast<double>(v.size());
  m.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  }
  return m;
}

std::uint64_t trial_stream(ExperimentId id, std::size_t size_index, std::size_t trial) {
  return derive_key({static_cast<std::uint64_t>(id) + 1, size_index, trial});
}

std::vector<cplx> ones(std::size_t n) { return std::vector<cplx>(n, cplx{1.0}); }

void require_real_family(const ExperimentSpec& spec) {
  require(!spec.family.is_complex(),
          std::string(to_string(spec.id)) + ": needs a real coefficient family");
}

ReportRow make_row(std::uint64_t size, double driver, std::span<const double> sample, double lhs, double rhs) {
  ReportRow row;
  row.size = size;
  row.driver = driver;
  row.lhs = lhs;
  row.rhs = rhs;
  row.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
  const auto m = moments(sample);
  row.mean = m.mean;
  row.stderr_ = m.stderr_;
  return row;
}

}  // namespace

CoefficientMatrix::CoefficientMatrix(std::size_t K, std::size_t N, std::vector<cplx> entries)
    : K_(K), N_(N), a_(std::move(entries)) {
  require(K >= 1 && N >= 1, "CoefficientMatrix: K and N must be positive");
  require(a_.size() == K * N, "CoefficientMatrix: expected K * N entries");
  for (const auto& v : a_)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), "CoefficientMatrix: entries must be finite");
}

CoefficientMatrix CoefficientMatrix::zeros(std::size_t K, std::size_t N) {
  return CoefficientMatrix(K, N, std::vector<cplx>(K * N));
}

std::vector<cplx> CoefficientMatrix::column(std::size_t j) const {
  require(j < N_, "CoefficientMatrix::column: index out of range");
  std::vector<cplx> c(K_);
  for (std::size_t i = 0; i < K_; ++i) c[i] = a_[i * N_ + j];
  return c;
}

MatrixStatistic ksz_matrix_statistic(const CoefficientMatrix& m, const GeneratorSpec& family, double r,
                                     std::size_t trials, std::uint64_t seed) {
  require(r >= 2.0, "ksz_matrix_statistic: r must be >= 2");
  require(trials >= 100, "ksz_matrix_statistic: need at least 100 trials");
  MatrixStatistic out;
  for (std::size_t j = 0; j < m.N(); ++j) out.rhs = std::max(out.rhs, s_norm(m.column(j), r));
  out.sample = kernels::map_indices(trials, [&](std::size_t t) {
    CounterRng rng(seed, t);
    std::vector<cplx> gamma(m.K());
    fill_draws(family.kind, rng, gamma);
    return kernels::serial::column_sup(m.entries(), m.K(), m.N(), gamma).value;
  });
  out.lhs = orlicz_empirical_norm(EmpiricalSample(out.sample), r);
  return out;
}

CoefficientMatrix sign_pattern_witness(int K) {
  require(K >= 1, "sign_pattern_witness: K must be positive");
  if (K > 20) throw BudgetExceeded("sign_pattern_witness: K = " + std::to_string(K) + " exceeds 20 (N = 2^K)");
  const std::size_t N = std::size_t{1} << K;
  std::vector<cplx> a(static_cast<std::size_t>(K) * N);
  for (std::size_t i = 0; i < static_cast<std::size_t>(K); ++i)
    for (std::size_t j = 0; j < N; ++j) a[i * N + j] = ((j >> i) & 1u) ? -1.0 : 1.0;
  return CoefficientMatrix(static_cast<std::size_t>(K), N, std::move(a));
}

SlopeFit fit_slope(std::span<const std::pair<double, double>> points) {
  require(points.size() >= 3, "fit_slope: need at least 3 points");
  const auto n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    require(x > 0.0 && y > 0.0 && std::isfinite(x) && std::isfinite(y), "fit_slope: coordinates must be positive");
    mx += std::log(x);
    my += std::log(y);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (std::log(x) - mx) * (std::log(x) - mx);
    sxy += (std::log(x) - mx) * (std::log(y) - my);
  }
  require(sxx > 0.0, "fit_slope: x values must be distinct");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (const auto& [x, y] : points) {
    const double res = std::log(y) - (fit.intercept + fit.slope * std::log(x));
    rss += res * res;
  }
  fit.half_width = 2.0 * std::sqrt(rss / (n - 2.0) / sxx);
  return fit;
}

std::string_view to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::E1_MatrixKSZ: return "E1_MatrixKSZ";
    case ExperimentId::E2_SalemZygmund1D: return "E2_SalemZygmund1D";
    case ExperimentId::E3_CubeQuadratic: return "E3_CubeQuadratic";
    case ExperimentId::E4_SpectralBilinear: return "E4_SpectralBilinear";
    case ExperimentId::E5_Dirichlet: return "E5_Dirichlet";
    case ExperimentId::E6_InterpIdentification: return "E6_InterpIdentification";
  }
  return "?";
}

ExperimentId experiment_from_string(std::string_view name) {
  for (auto id : {ExperimentId::E1_MatrixKSZ, ExperimentId::E2_SalemZygmund1D, ExperimentId::E3_CubeQuadratic,
                  ExperimentId::E4_SpectralBilinear, ExperimentId::E5_Dirichlet,
                  ExperimentId::E6_InterpIdentification})
    if (to_string(id) == name) return id;
  throw InvalidArgument("unknown experiment id '" + std::string(name) + "'");
}

void validate(const ExperimentSpec& spec) {
  const std::string name(to_string(spec.id));
  require(spec.trials >= 1, name + ": trials must be >= 1");
  require(!spec.sizes.empty(), name + ": sizes must be nonempty");
  for (std::size_t i = 1; i < spec.sizes.size(); ++i)
    require(spec.sizes[i] > spec.sizes[i - 1], name + ": sizes must be strictly increasing");
  require(spec.r >= 2.0 && std::isfinite(spec.r), name + ": r must be finite and >= 2");
  std::uint64_t lo = 1, cap = 0;
  switch (spec.id) {
    case ExperimentId::E1_MatrixKSZ: cap = 20; break;
    case ExperimentId::E2_SalemZygmund1D: cap = 4096; break;
    case ExperimentId::E3_CubeQuadratic: lo = 2, cap = 16; break;
    case ExperimentId::E4_SpectralBilinear: cap = 256; break;
    case ExperimentId::E5_Dirichlet: lo = 2, cap = 10'000; break;
    case ExperimentId::E6_InterpIdentification: cap = 100'000; break;
  }
  require(spec.sizes.front() >= lo, name + ": smallest size must be >= " + std::to_string(lo));
  if (spec.sizes.back() > cap)
    throw BudgetExceeded(name + ": size " + std::to_string(spec.sizes.back()) + " exceeds the cap of " +
                         std::to_string(cap));
  if (spec.id == ExperimentId::E1_MatrixKSZ) require(spec.trials >= 100, name + ": needs at least 100 trials");
  if (spec.id == ExperimentId::E3_CubeQuadratic) require_real_family(spec);
}

namespace {

void run_e1(const ExperimentSpec& spec, Report& rep) {
  rep.lhs_statistic = "Orlicz norm of sup_j |sum_i gamma_i a_i(j)| on the sign-pattern witness";
  rep.rhs_formula = "sup_j s_norm(a(j), r) * (1 + log N)^(1/r), N = 2^K";
  rep.ratio_cap = kRatioCap;
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    const int K = static_cast<int>(spec.sizes[s]);
    const auto witness = sign_pattern_witness(K);
    const auto stat = ksz_matrix_statistic(witness, spec.family, spec.r, spec.trials, derive_key({spec.seed, 1, s}));
    const double N = std::ldexp(1.0, K);
    RhsParams params;
    params.N = N;
    params.r = spec.r;
    const double rhs = stat.rhs * ksz_rhs_bound(Theorem::Matrix, params);
    rep.rows.push_back(make_row(spec.sizes[s], N, stat.sample, stat.lhs, rhs));
  }
}

void run_e2(const ExperimentSpec& spec, Report& rep) {
  rep.lhs_statistic = "Orlicz norm of the Bernstein-grid sup of sum_{k<=m} gamma_k z^k";
  rep.rhs_formula = "(1 + log m)^(1/r) * s_norm(1_{m+1}, r)";
  rep.ratio_cap = kRatioCap;
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    const std::size_t m = spec.sizes[s];
    const auto sample = kernels::map_indices(spec.trials, [&](std::size_t t) {
      CounterRng rng(spec.seed, trial_stream(spec.id, s, t));
      std::vector<cplx> g(m + 1);
      fill_draws(spec.family.kind, rng, g);
      SparsePoly p(1, Flavor::Trig);
      for (std::size_t k = 0; k <= m; ++k) p.add_term({static_cast<int>(k)}, g[k]);
      return sup_torus(p, 1).lower;
    });
    RhsParams params;
    params.n = 1;
    params.m = static_cast<double>(m);
    params.r = spec.r;
    const double rhs = ksz_rhs_bound(Theorem::KSZone, params) * s_norm(ones(m + 1), spec.r);
    const double lhs = orlicz_empirical_norm(EmpiricalSample(sample), spec.r);
    rep.rows.push_back(make_row(m, static_cast<double>(m), sample, lhs, rhs));
  }
}

void run_e3(const ExperimentSpec& spec, Report& rep) {
  rep.lhs_statistic = "Orlicz norm of max over {-1,1}^n of |sum_{i<j} gamma_ij x_i x_j| (vertex enumeration)";
  rep.rhs_formula = "(n (1 + log 2))^(1/2) * n (m = 2, p = infinity)";
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    const std::size_t n = spec.sizes[s];
    const auto sample = kernels::map_indices(spec.trials, [&](std::size_t t) {
      CounterRng rng(spec.seed, trial_stream(spec.id, s, t));
      std::vector<double> g(n * (n - 1) / 2);
      fill_real_draws(spec.family.kind, rng, g);
      kernels::MultilinearTerms q{n, {}, {}};
      std::size_t c = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          q.vars.push_back({i, j});
          q.coeffs.push_back(g[c++]);
        }
      return kernels::serial::vertex_max(q).value;
    });
    RhsParams params;
    params.n = static_cast<double>(n);
    params.m = 2;
    params.p = std::vector<double>{kInf};
    const double rhs = ksz_rhs_bound(Theorem::Analog, params);
    const double lhs = orlicz_empirical_norm(EmpiricalSample(sample), spec.r);
    rep.rows.push_back(make_row(n, static_cast<double>(n), sample, lhs, rhs));
  }
}

void run_e4(const ExperimentSpec& spec, Report& rep) {
  rep.lhs_statistic = "Orlicz norm of the largest singular value of an n x n random matrix";
  rep.rhs_formula = "n^(1/2) (m = 2, p = (2, 2))";
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    const std::size_t n = spec.sizes[s];
    const auto sample = kernels::map_indices(spec.trials, [&](std::size_t t) {
      CounterRng rng(spec.seed, trial_stream(spec.id, s, t));
      if (!spec.family.is_complex()) {
        std::vector<double> a(n * n);
        fill_real_draws(spec.family.kind, rng, a);
        return spectral_norm(a, n, n);
      }
      std::vector<cplx> a(n * n);
      fill_draws(spec.family.kind, rng, a);
      const std::vector<double> p{2.0, 2.0};
      return sup_multilinear(MultilinearForm({n, n}, a), p, SupMethod::Spectral).lower;
    });
    RhsParams params;
    params.n = static_cast<double>(n);
    params.p = std::vector<double>{2.0, 2.0};
    const double rhs = ksz_rhs_bound(Theorem::Gurgel, params);
    const double lhs = orlicz_empirical_norm(EmpiricalSample(sample), spec.r);
    rep.rows.push_back(make_row(n, static_cast<double>(n), sample, lhs, rhs));
  }
}

void run_e5(const ExperimentSpec& spec, Report& rep) {
  rep.lhs_statistic = "Orlicz norm of the Kronecker-flow sup of sum_{n<=N} gamma_n n^(-it), t <= 1e4";
  rep.rhs_formula = "(1 + Pi(A) (1 + 20 log Omega(A)))^(1/r) * s_norm(1_N, r), A = {1..N}";
  rep.ratio_cap = kRatioCap;
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    const std::size_t N = spec.sizes[s];
    std::vector<std::uint64_t> support(N);
    std::iota(support.begin(), support.end(), std::uint64_t{1});
    std::vector<cplx> coeffs(spec.trials * N);
    for (std::size_t t = 0; t < spec.trials; ++t) {
      CounterRng rng(spec.seed, trial_stream(spec.id, s, t));
      fill_draws(spec.family.kind, rng, std::span<cplx>(coeffs).subspan(t * N, N));
    }
    const auto sample = kronecker_sup_flow_batch(support, coeffs, spec.trials);
    const double rhs = dirichlet_rhs_bound(support, spec.r) * s_norm(ones(N), spec.r);
    const double lhs = orlicz_empirical_norm(EmpiricalSample(sample), spec.r);
    rep.rows.push_back(make_row(N, static_cast<double>(N), sample, lhs, rhs));
  }
}

void run_e6(const ExperimentSpec& spec, Report& rep) {
  const double theta = 2.0 / spec.r;
  const double rc = conjugate_exponent(spec.r);
  rep.lhs_statistic = "mean K-method norm of x in (l1, l2) with psi(s,t) = s^(1-2/r) t^(2/r)";
  rep.rhs_formula = "mean weak-l_{r'} norm of x";
  const auto psi = QFunction::power(theta);
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    const std::size_t n = spec.sizes[s];
    std::vector<double> kmethod(spec.trials), weak(spec.trials);
    const auto ratios = kernels::map_indices(spec.trials, [&](std::size_t t) {
      CounterRng rng(spec.seed, trial_stream(spec.id, s, t));
      std::vector<cplx> x(n);
      fill_draws(spec.family.kind, rng, x);
      kmethod[t] = k_method_norm(x, psi);
      weak[t] = weak_norm(x, rc);
      return kmethod[t] / weak[t];
    });
    const double lhs = moments(kmethod).mean;
    const double rhs = moments(weak).mean;
    auto row = make_row(n, static_cast<double>(n), ratios, lhs, rhs);
    const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
    row.min_ratio = *mn;
    row.max_ratio = *mx;
    rep.rows.push_back(row);
  }
}

SlopeFit fit_column(const std::vector<ReportRow>& rows, double ReportRow::*field) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : rows) pts.emplace_back(row.driver, row.*field);
  return fit_slope(pts);
}

}  // namespace

Report run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  Report rep;
  rep.spec = spec;
  switch (spec.id) {
    case ExperimentId::E1_MatrixKSZ: run_e1(spec, rep); break;
    case ExperimentId::E2_SalemZygmund1D: run_e2(spec, rep); break;
    case ExperimentId::E3_CubeQuadratic: run_e3(spec, rep); break;
    case ExperimentId::E4_SpectralBilinear: run_e4(spec, rep); break;
    case ExperimentId::E5_Dirichlet: run_e5(spec, rep); break;
    case ExperimentId::E6_InterpIdentification: run_e6(spec, rep); break;
  }
  if (rep.rows.size() >= 3) {
    const bool positive = std::all_of(rep.rows.begin(), rep.rows.end(),
                                      [](const ReportRow& r) { return r.lhs > 0.0 && r.mean > 0.0 && r.ratio > 0.0; });
    if (positive) {
      rep.slope = fit_column(rep.rows, &ReportRow::lhs);
      rep.mean_slope = fit_column(rep.rows, &ReportRow::mean);
      rep.ratio_slope = fit_column(rep.rows, &ReportRow::ratio);
    }
  }
  return rep;
}

std::vector<ExperimentSpec> acceptance_suite(std::uint64_t seed) {
  const auto rademacher = GeneratorSpec::of(FamilyKind::RademacherReal);
  std::vector<ExperimentSpec> suite;
  suite.push_back({ExperimentId::E1_MatrixKSZ, rademacher, 2.0, {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, 100, seed});
  suite.push_back({ExperimentId::E2_SalemZygmund1D, rademacher, 2.0, {16, 32, 64, 128, 256, 512, 1024}, 1000, seed});
  suite.push_back({ExperimentId::E3_CubeQuadratic, rademacher, 2.0, {4, 6, 8, 10, 12, 14, 16}, 100, seed});
  suite.push_back({ExperimentId::E4_SpectralBilinear, rademacher, 2.0, {16, 32, 64, 128, 256}, 200, seed});
  suite.push_back({ExperimentId::E5_Dirichlet, rademacher, 2.0, {16, 32, 64, 128}, 100, seed});
  const auto gaussian = GeneratorSpec::of(FamilyKind::GaussianReal);
  suite.push_back({ExperimentId::E6_InterpIdentification, gaussian, 3.0, {16, 64, 512}, 1000, seed});
  suite.push_back({ExperimentId::E6_InterpIdentification, gaussian, 4.0, {16, 64, 512}, 1000, seed});
  return suite;
}

std::string report_name(const ExperimentSpec& spec) {
  std::string name(to_string(spec.id));
  if (spec.id == ExperimentId::E6_InterpIdentification) {
    const double r = spec.r;
    name += "_r" + (r == std::floor(r) ? std::to_string(static_cast<long long>(r)) : std::to_string(r));
  }
  return name;
}

std::vector<BandCheck> check_bands(const Report& report) {
  std::vector<BandCheck> out;
  auto band = [&](std::string name, double value, double lo, double hi) {
    out.push_back({std::move(name), value, lo, hi, value >= lo && value <= hi});
  };
  auto max_ratio = [&] {
    double m = 0.0;
    for (const auto& row : report.rows) m = std::max(m, row.ratio);
    return m;
  };
  const bool fitted = report.rows.size() >= 3;
  switch (report.spec.id) {
    case ExperimentId::E1_MatrixKSZ: {
      double worst = kInf;
      for (const auto& row : report.rows) {
        const double K = static_cast<double>(row.size);
        worst = std::min(worst, row.lhs / (std::sqrt(K) * std::sqrt(1.0 + std::log(row.driver))));
      }
      band("witness ratio lhs/(sqrt(K) sqrt(1+log N)), min over rows", worst, 0.8, kInf);
      band("lhs/rhs, max over rows", max_ratio(), 0.0, *report.ratio_cap);
      break;
    }
    case ExperimentId::E2_SalemZygmund1D:
      if (fitted) {
        band("slope of log mean sup vs log m", report.mean_slope.slope, 0.45, 0.60);
        band("slope of log ratio vs log m", report.ratio_slope.slope, -0.1, 0.1);
      }
      band("lhs/rhs, max over rows", max_ratio(), 0.0, *report.ratio_cap);
      break;
    case ExperimentId::E3_CubeQuadratic:
      if (fitted) band("slope of log lhs vs log n", report.slope.slope, 1.35, 1.65);
      break;
    case ExperimentId::E4_SpectralBilinear:
      if (fitted) band("slope of log mean spectral norm vs log n", report.mean_slope.slope, 0.45, 0.55);
      break;
    case ExperimentId::E5_Dirichlet:
      if (fitted) band("slope of log ratio vs log N", report.ratio_slope.slope, -0.15, 0.15);
      band("lhs/rhs, max over rows", max_ratio(), 0.0, *report.ratio_cap);
      break;
    case ExperimentId::E6_InterpIdentification: {
      double lo = kInf, hi = 0.0;
      for (const auto& row : report.rows) {
        lo = std::min(lo, row.min_ratio.value_or(row.ratio));
        hi = std::max(hi, row.max_ratio.value_or(row.ratio));
      }
      band("ratio band width max/min", hi / lo, 1.0, 10.0);
      if (fitted) band("slope of log ratio vs log length", report.ratio_slope.slope, -0.1, 0.1);
      break;
    }
  }
  return out;
}

}  // namespace ksz
