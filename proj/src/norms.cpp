#include "ksz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ksz/error.hpp"

namespace ksz {

namespace {

constexpr double kExpCap = 700.0;

void require_finite(std::span<const cplx> x, const char* op) {
  for (const auto& v : x)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            std::string(op) + ": entries must be finite");
}

}  // namespace

std::vector<cplx> as_complex(std::span<const double> x) { return {x.begin(), x.end()}; }

std::vector<double> decreasing_rearrangement(std::span<const cplx> x) {
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [](const cplx& v) { return std::abs(v); });
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double l1_norm(std::span<const cplx> x) {
  double s = 0.0;
  for (const auto& v : x) s += std::abs(v);
  return s;
}

double l2_norm(std::span<const cplx> x) {
  const double m = linf_norm(x);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v / m);
  return m * std::sqrt(s);
}

double linf_norm(std::span<const cplx> x) {
  double m = 0.0;
  for (const auto& v : x) m = std::max(m, std::abs(v));
  return m;
}

double lp_norm(std::span<const cplx> x, double p) {
  require(p >= 1.0 && std::isfinite(p), "lp_norm: p must be finite and >= 1");
  const double m = linf_norm(x);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double conjugate_exponent(double r) {
  require(r > 1.0, "conjugate_exponent: r must exceed 1");
  if (std::isinf(r)) return 1.0;
  return r / (r - 1.0);
}

WeightSequence::WeightSequence(std::vector<double> w) : w_(std::move(w)) {
  require(!w_.empty(), "WeightSequence: weight must be nonempty");
  for (std::size_t k = 0; k < w_.size(); ++k) {
    require(w_[k] > 0.0 && std::isfinite(w_[k]), "WeightSequence: weights must be positive and finite");
    // Relative slack absorbs roundoff from differencing psi.
    require(k == 0 || w_[k] <= w_[k - 1] * (1.0 + 1e-12), "WeightSequence: weights must be nonincreasing");
  }
}

WeightSequence WeightSequence::from_psi(const std::function<double(double)>& psi, std::size_t length) {
  std::vector<double> w(length);
  double prev = 0.0;
  for (std::size_t n = 1; n <= length; ++n) {
    const double cur = psi(static_cast<double>(n));
    w[n - 1] = cur - prev;
    prev = cur;
  }
  return WeightSequence(std::move(w));
}

WeightSequence WeightSequence::power(double q, std::size_t length) {
  require(q > 1.0, "WeightSequence::power: q must exceed 1");
  const double a = 1.0 - 1.0 / q;
  return from_psi([a](double n) { return std::pow(n, a); }, length);
}

double weak_norm(std::span<const cplx> x, double q) {
  require(q > 1.0, "weak_norm: q must exceed 1");
  require_finite(x, "weak_norm");
  const auto xs = decreasing_rearrangement(x);
  double best = 0.0;
  for (std::size_t n = 1; n <= xs.size(); ++n)
    best = std::max(best, std::pow(static_cast<double>(n), 1.0 / q) * xs[n - 1]);
  return best;
}

double marcinkiewicz_norm(std::span<const cplx> x, const WeightSequence& w) {
  require_finite(x, "marcinkiewicz_norm");
  const auto xs = decreasing_rearrangement(x);
  const auto wv = w.values();
  double num = 0.0, den = 0.0, best = 0.0;
  for (std::size_t n = 0; n < wv.size(); ++n) {
    num += n < xs.size() ? xs[n] : 0.0;
    den += wv[n];
    best = std::max(best, num / den);
  }
  return best;
}

double s_norm(std::span<const cplx> x, double r) {
  require(r >= 2.0, "s_norm: r must be >= 2");
  require_finite(x, "s_norm");
  if (r == 2.0) return l2_norm(x);
  if (x.empty()) return 0.0;
  // psi(n) = n^(1 - 1/r') = n^(1/r); partial sums of w equal psi(n) exactly.
  const auto xs = decreasing_rearrangement(x);
  double num = 0.0, best = 0.0;
  for (std::size_t n = 1; n <= xs.size(); ++n) {
    num += xs[n - 1];
    best = std::max(best, num / std::pow(static_cast<double>(n), 1.0 / r));
  }
  return best;
}

double harmonic_number(std::size_t n) {
  require(n >= 1, "harmonic_number: N must be positive");
  // Summing smallest terms first keeps the error near one ulp per term.
  double h = 0.0;
  for (std::size_t j = n; j >= 1; --j) h += 1.0 / static_cast<double>(j);
  return h;
}

double l_hN_norm(std::span<const cplx> xi) {
  require(!xi.empty(), "l_hN_norm: input must be nonempty");
  require_finite(xi, "l_hN_norm");
  const double h = harmonic_number(xi.size());
  const double m = linf_norm(xi);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j < xi.size(); ++j)
    s += std::pow(std::abs(xi[j]) / m, h) / static_cast<double>(j + 1);
  return m * std::pow(s, 1.0 / h);
}

EmpiricalSample::EmpiricalSample(std::vector<double> values) : v_(std::move(values)) {
  require(!v_.empty(), "EmpiricalSample: sample must be nonempty");
  for (double v : v_) {
    require(v >= 0.0 && std::isfinite(v), "EmpiricalSample: values must be finite and nonnegative");
    max_ = std::max(max_, v);
  }
}

namespace {

// mean(exp((v/eps)^r) - 1), +inf once any exponent passes the cap.
double orlicz_modular(std::span<const double> v, double eps, double r) {
  double s = 0.0;
  for (double x : v) {
    if (x == 0.0) continue;
    const double e = r * std::log(x / eps);
    if (e > std::log(kExpCap)) return std::numeric_limits<double>::infinity();
    s += std::expm1(std::exp(e));
  }
  return s / static_cast<double>(v.size());
}

}  // namespace

double orlicz_empirical_norm(const EmpiricalSample& sample, double r) {
  require(r >= 1.0 && std::isfinite(r), "orlicz_empirical_norm: r must be finite and >= 1");
  if (sample.max() == 0.0) return 0.0;
  const auto v = sample.values();
  double lo = std::log(sample.max() / 50.0);
  double hi = std::log(sample.max() * 50.0);
  // Invariant: modular(exp(hi)) <= 1 < modular(exp(lo)).
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (orlicz_modular(v, std::exp(mid), r) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  return std::exp(hi);
}

double pmoment_orlicz_estimate(const EmpiricalSample& sample, double r, double p_max) {
  require(p_max >= 1.0, "pmoment_orlicz_estimate: p_max must be >= 1");
  require(r >= 1.0, "pmoment_orlicz_estimate: r must be >= 1");
  const double m = sample.max();
  if (m == 0.0) return 0.0;
  const auto v = sample.values();
  const auto p_hi = static_cast<long>(std::floor(p_max));
  double best = 0.0;
  for (long p = 1; p <= p_hi; ++p) {
    const double pd = static_cast<double>(p);
    double s = 0.0;
    for (double x : v) s += std::pow(x / m, pd);
    const double moment = m * std::pow(s / static_cast<double>(v.size()), 1.0 / pd);
    best = std::max(best, std::pow(pd, -1.0 / r) * moment);
  }
  return best;
}

namespace {

void check_phi_inverse(const std::function<double(double)>& phi_inverse) {
  const double at0 = phi_inverse(0.0);
  require(std::isfinite(at0) && std::abs(at0) <= 1e-12, "orlicz_seq_norm: phi_inverse(0) must be 0");
  double prev = at0;
  for (int k = -32; k <= 32; ++k) {
    const double t = std::pow(2.0, k);
    const double v = phi_inverse(t);
    require(std::isfinite(v) && v > prev, "orlicz_seq_norm: phi_inverse must be strictly increasing");
    prev = v;
  }
}

// phi(u) = t such that phi_inverse(t) = u.
double invert(const std::function<double(double)>& phi_inverse, double u) {
  if (u <= 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (phi_inverse(hi) < u) {
    hi *= 2.0;
    if (++guard > 2000) return std::numeric_limits<double>::infinity();
  }
  double lo = hi;
  while (lo > 0.0 && phi_inverse(lo) >= u) {
    lo *= 0.5;
    if (++guard > 4000) return lo;
  }
  if (lo == 0.0) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    if (phi_inverse(mid) >= u)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

double orlicz_seq_norm(std::span<const cplx> x, const std::function<double(double)>& phi_inverse) {
  require_finite(x, "orlicz_seq_norm");
  check_phi_inverse(phi_inverse);
  const auto xs = decreasing_rearrangement(x);
  if (xs.empty() || xs.front() == 0.0) return 0.0;

  auto modular = [&](double lambda) {
    double s = 0.0;
    for (double v : xs) {
      if (v == 0.0) break;
      s += invert(phi_inverse, v / lambda);
      if (!std::isfinite(s)) break;
    }
    return s;
  };

  double hi = xs.front();
  int guard = 0;
  while (modular(hi) > 1.0 && ++guard < 2000) hi *= 2.0;
  double lo = hi;
  while (modular(lo) <= 1.0 && ++guard < 4000) lo *= 0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi || hi / lo - 1.0 < 1e-14) break;
    if (modular(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace ksz
