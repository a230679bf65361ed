#include <atomic>

#include "kernels_common.hpp"
#include "ksz/error.hpp"

namespace ksz::kernels {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};
}

void set_default_exec(Exec exec) { g_exec.store(exec); }
Exec default_exec() { return g_exec.load(); }

namespace serial {

std::vector<double> map_indices(std::size_t count, const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

ArgMax argmax_indices(std::size_t count, const std::function<double(std::size_t)>& fn) {
  ArgMax best;
  for (std::size_t i = 0; i < count; ++i) best.offer(fn(i), i);
  return best;
}

ArgMax column_sup(std::span<const cplx> a, std::size_t rows, std::size_t cols, std::span<const cplx> g) {
  require(a.size() == rows * cols && g.size() == rows, "column_sup: shape mismatch");
  ArgMax best;
  for (std::size_t c = 0; c < detail::chunk_count(cols, detail::kColumnChunk); ++c) {
    const std::size_t j0 = c * detail::kColumnChunk;
    const std::size_t j1 = std::min(cols, j0 + detail::kColumnChunk);
    best = combine(best, detail::column_sup_chunk(a, rows, cols, g, j0, j1));
  }
  return best;
}

ArgMax torus_grid_max(const TermTable& poly, std::size_t points) {
  const auto roots = detail::roots_of_unity(points);
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < poly.n; ++k) total *= points;
  ArgMax best;
  for (std::uint64_t c = 0; c < detail::chunk_count(total, detail::kGridChunk); ++c) {
    const std::uint64_t f0 = c * detail::kGridChunk;
    const std::uint64_t f1 = std::min<std::uint64_t>(total, f0 + detail::kGridChunk);
    best = combine(best, detail::torus_grid_chunk(poly, points, roots, f0, f1));
  }
  return best;
}

std::vector<double> flow_abs_values(std::span<const double> freqs, std::span<const cplx> coeffs, double step,
                                    std::size_t count) {
  require(freqs.size() == coeffs.size(), "flow_abs_values: shape mismatch");
  std::vector<double> out(count);
  for (std::size_t c = 0; c < detail::chunk_count(count, detail::kFlowChunk); ++c) {
    const std::size_t k0 = c * detail::kFlowChunk;
    const std::size_t k1 = std::min(count, k0 + detail::kFlowChunk);
    detail::flow_values_chunk(freqs, coeffs, step, k0, k1, out.data() + k0);
  }
  return out;
}

std::vector<ArgMax> flow_grid_max(std::span<const double> freqs, std::span<const cplx> coeffs, std::size_t batch,
                                  double step, std::size_t count) {
  require(coeffs.size() == batch * freqs.size(), "flow_grid_max: shape mismatch");
  std::vector<ArgMax> best(batch);
  for (std::size_t c = 0; c < detail::chunk_count(count, detail::kFlowChunk); ++c) {
    const std::size_t k0 = c * detail::kFlowChunk;
    const std::size_t k1 = std::min(count, k0 + detail::kFlowChunk);
    std::vector<ArgMax> local(batch);
    detail::flow_max_chunk(freqs, coeffs, batch, step, k0, k1, local);
    for (std::size_t b = 0; b < batch; ++b) best[b] = combine(best[b], local[b]);
  }
  return best;
}

ArgMax vertex_max(const MultilinearTerms& poly) {
  require(poly.n <= 62, "vertex_max: too many variables");
  const auto terms_of = detail::terms_by_variable(poly);
  const unsigned high = detail::vertex_high_bits(poly.n);
  const auto low = static_cast<unsigned>(poly.n) - high;
  ArgMax best;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << high); ++c)
    best = combine(best, detail::vertex_chunk(poly, terms_of, c, low));
  return best;
}

ArgMax bilinear_vertex_max(std::span<const double> a, std::size_t rows, std::size_t cols) {
  require(a.size() == rows * cols && rows <= 62, "bilinear_vertex_max: bad shape");
  const unsigned high = detail::vertex_high_bits(rows);
  const auto low = static_cast<unsigned>(rows) - high;
  ArgMax best;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << high); ++c)
    best = combine(best, detail::bilinear_chunk(a, rows, cols, c, low));
  return best;
}

}  // namespace serial

#define KSZ_DISPATCH(name, ...) \
  (default_exec() == Exec::Parallel ? omp::name(__VA_ARGS__) : serial::name(__VA_ARGS__))

std::vector<double> map_indices(std::size_t count, const std::function<double(std::size_t)>& fn) {
  return KSZ_DISPATCH(map_indices, count, fn);
}
ArgMax argmax_indices(std::size_t count, const std::function<double(std::size_t)>& fn) {
  return KSZ_DISPATCH(argmax_indices, count, fn);
}
ArgMax column_sup(std::span<const cplx> a, std::size_t rows, std::size_t cols, std::span<const cplx> g) {
  return KSZ_DISPATCH(column_sup, a, rows, cols, g);
}
ArgMax torus_grid_max(const TermTable& poly, std::size_t points) { return KSZ_DISPATCH(torus_grid_max, poly, points); }
std::vector<double> flow_abs_values(std::span<const double> freqs, std::span<const cplx> coeffs, double step,
                                    std::size_t count) {
  return KSZ_DISPATCH(flow_abs_values, freqs, coeffs, step, count);
}
std::vector<ArgMax> flow_grid_max(std::span<const double> freqs, std::span<const cplx> coeffs, std::size_t batch,
                                  double step, std::size_t count) {
  return KSZ_DISPATCH(flow_grid_max, freqs, coeffs, batch, step, count);
}
ArgMax vertex_max(const MultilinearTerms& poly) { return KSZ_DISPATCH(vertex_max, poly); }
ArgMax bilinear_vertex_max(std::span<const double> a, std::size_t rows, std::size_t cols) {
  return KSZ_DISPATCH(bilinear_vertex_max, a, rows, cols);
}

#undef KSZ_DISPATCH

}  // namespace ksz::kernels
