#pragma once

// Chunk bodies shared by the serial and OpenMP kernels. A kernel is a fixed
// decomposition into chunks (independent of the thread count) plus an
// in-order combine, so both variants perform the same arithmetic.

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include "ksz/kernels.hpp"

namespace ksz::kernels::detail {

constexpr std::size_t kGridChunk = 4096;
constexpr std::size_t kFlowChunk = 1024;
constexpr std::size_t kColumnChunk = 1024;

inline std::size_t chunk_count(std::size_t total, std::size_t chunk) { return (total + chunk - 1) / chunk; }

inline ArgMax column_sup_chunk(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                               std::span<const cplx> g, std::size_t j0, std::size_t j1) {
  std::vector<cplx> acc(j1 - j0);
  for (std::size_t i = 0; i < rows; ++i) {
    const cplx gi = g[i];
    const cplx* row = a.data() + i * cols;
    for (std::size_t j = j0; j < j1; ++j) acc[j - j0] += gi * row[j];
  }
  ArgMax best;
  for (std::size_t j = j0; j < j1; ++j) best.offer(std::abs(acc[j - j0]), j);
  return best;
}

inline std::vector<cplx> roots_of_unity(std::size_t points) {
  std::vector<cplx> roots(points);
  for (std::size_t j = 0; j < points; ++j)
    roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(points));
  return roots;
}

inline ArgMax torus_grid_chunk(const TermTable& poly, std::size_t points, const std::vector<cplx>& roots,
                               std::uint64_t f0, std::uint64_t f1) {
  const std::size_t n = poly.n;
  const auto L = static_cast<long long>(points);
  std::vector<long long> digits(n);
  ArgMax best;
  for (std::uint64_t f = f0; f < f1; ++f) {
    std::uint64_t rest = f;
    for (std::size_t k = n; k-- > 0;) {
      digits[k] = static_cast<long long>(rest % points);
      rest /= points;
    }
    cplx sum{};
    for (std::size_t t = 0; t < poly.terms(); ++t) {
      cplx term = poly.coeffs[t];
      const int* e = poly.exps.data() + t * n;
      for (std::size_t k = 0; k < n; ++k) {
        if (e[k] == 0) continue;
        long long idx = (static_cast<long long>(e[k]) * digits[k]) % L;
        if (idx < 0) idx += L;
        term *= roots[static_cast<std::size_t>(idx)];
      }
      sum += term;
    }
    best.offer(std::abs(sum), f);
  }
  return best;
}

inline void flow_phases(std::span<const double> freqs, double t, std::vector<cplx>& out) {
  for (std::size_t j = 0; j < freqs.size(); ++j) out[j] = std::polar(1.0, -t * freqs[j]);
}

inline void flow_values_chunk(std::span<const double> freqs, std::span<const cplx> coeffs, double step,
                              std::size_t k0, std::size_t k1, double* out) {
  std::vector<cplx> ph(freqs.size());
  for (std::size_t k = k0; k < k1; ++k) {
    flow_phases(freqs, static_cast<double>(k) * step, ph);
    cplx s{};
    for (std::size_t j = 0; j < freqs.size(); ++j) s += coeffs[j] * ph[j];
    out[k - k0] = std::abs(s);
  }
}

inline void flow_max_chunk(std::span<const double> freqs, std::span<const cplx> coeffs, std::size_t batch,
                           double step, std::size_t k0, std::size_t k1, std::vector<ArgMax>& best) {
  const std::size_t m = freqs.size();
  std::vector<cplx> ph(m);
  for (std::size_t k = k0; k < k1; ++k) {
    flow_phases(freqs, static_cast<double>(k) * step, ph);
    for (std::size_t b = 0; b < batch; ++b) {
      const cplx* c = coeffs.data() + b * m;
      cplx s{};
      for (std::size_t j = 0; j < m; ++j) s += c[j] * ph[j];
      best[b].offer(std::abs(s), k);
    }
  }
}

// Splits {-1,1}^n into 2^high chunks by the top bits.
inline unsigned vertex_high_bits(std::size_t n) { return n > 6 ? 6u : 0u; }

inline double eval_vertex(const MultilinearTerms& poly, std::uint64_t bits) {
  double s = 0.0;
  for (std::size_t t = 0; t < poly.coeffs.size(); ++t) {
    double v = poly.coeffs[t];
    for (std::size_t k : poly.vars[t])
      if ((bits >> k) & 1u) v = -v;
    s += v;
  }
  return s;
}

inline ArgMax vertex_chunk(const MultilinearTerms& poly, const std::vector<std::vector<std::size_t>>& terms_of,
                           std::uint64_t chunk, unsigned low) {
  const std::uint64_t base = chunk << low;
  std::vector<double> tv(poly.coeffs.size());
  double p = 0.0;
  for (std::size_t t = 0; t < tv.size(); ++t) {
    double v = poly.coeffs[t];
    for (std::size_t k : poly.vars[t])
      if ((base >> k) & 1u) v = -v;
    tv[t] = v;
    p += v;
  }
  ArgMax best;
  best.offer(std::abs(p), base);
  const std::uint64_t steps = std::uint64_t{1} << low;
  for (std::uint64_t s = 1; s < steps; ++s) {
    const auto k = static_cast<std::size_t>(std::countr_zero(s));
    double delta = 0.0;
    for (std::size_t t : terms_of[k]) {
      delta += tv[t];
      tv[t] = -tv[t];
    }
    p -= 2.0 * delta;
    best.offer(std::abs(p), base | (s ^ (s >> 1)));
  }
  // Re-evaluate the winner directly so incremental drift never leaks out.
  best.value = std::abs(eval_vertex(poly, best.index));
  return best;
}

inline std::vector<std::vector<std::size_t>> terms_by_variable(const MultilinearTerms& poly) {
  std::vector<std::vector<std::size_t>> terms_of(poly.n);
  for (std::size_t t = 0; t < poly.vars.size(); ++t)
    for (std::size_t k : poly.vars[t]) terms_of[k].push_back(t);
  return terms_of;
}

inline double eval_bilinear_vertex(std::span<const double> a, std::size_t rows, std::size_t cols,
                                   std::uint64_t bits) {
  double s = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    double w = 0.0;
    for (std::size_t i = 0; i < rows; ++i) w += ((bits >> i) & 1u) ? -a[i * cols + j] : a[i * cols + j];
    s += std::abs(w);
  }
  return s;
}

inline ArgMax bilinear_chunk(std::span<const double> a, std::size_t rows, std::size_t cols, std::uint64_t chunk,
                             unsigned low) {
  const std::uint64_t base = chunk << low;
  std::vector<double> w(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    const double sign = ((base >> i) & 1u) ? -1.0 : 1.0;
    for (std::size_t j = 0; j < cols; ++j) w[j] += sign * a[i * cols + j];
  }
  std::uint64_t bits = base;
  auto l1 = [&] {
    double s = 0.0;
    for (double v : w) s += std::abs(v);
    return s;
  };
  ArgMax best;
  best.offer(l1(), base);
  const std::uint64_t steps = std::uint64_t{1} << low;
  for (std::uint64_t s = 1; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(std::countr_zero(s));
    const double old_sign = ((bits >> i) & 1u) ? -1.0 : 1.0;
    for (std::size_t j = 0; j < cols; ++j) w[j] -= 2.0 * old_sign * a[i * cols + j];
    bits ^= std::uint64_t{1} << i;
    best.offer(l1(), bits);
  }
  best.value = eval_bilinear_vertex(a, rows, cols, best.index);
  return best;
}

}  // namespace ksz::kernels::detail
