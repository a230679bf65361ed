#include <omp.h>

#include "kernels_common.hpp"
#include "ksz/error.hpp"

namespace ksz::kernels::omp {

namespace {

// Chunk results land in a vector indexed by chunk and are combined in index
// order after the parallel region.
template <class Body>
ArgMax chunked_argmax(std::size_t chunks, Body&& body) {
  std::vector<ArgMax> partial(chunks);
  const auto n = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < n; ++c) partial[static_cast<std::size_t>(c)] = body(static_cast<std::size_t>(c));
  ArgMax best;
  for (const auto& p : partial) best = combine(best, p);
  return best;
}

}  // namespace

std::vector<double> map_indices(std::size_t count, const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  return out;
}

ArgMax argmax_indices(std::size_t count, const std::function<double(std::size_t)>& fn) {
  const auto values = map_indices(count, fn);
  ArgMax best;
  for (std::size_t i = 0; i < count; ++i) best.offer(values[i], i);
  return best;
}

ArgMax column_sup(std::span<const cplx> a, std::size_t rows, std::size_t cols, std::span<const cplx> g) {
  require(a.size() == rows * cols && g.size() == rows, "column_sup: shape mismatch");
  return chunked_argmax(detail::chunk_count(cols, detail::kColumnChunk), [&](std::size_t c) {
    const std::size_t j0 = c * detail::kColumnChunk;
    const std::size_t j1 = std::min(cols, j0 + detail::kColumnChunk);
    return detail::column_sup_chunk(a, rows, cols, g, j0, j1);
  });
}

ArgMax torus_grid_max(const TermTable& poly, std::size_t points) {
  const auto roots = detail::roots_of_unity(points);
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < poly.n; ++k) total *= points;
  return chunked_argmax(detail::chunk_count(total, detail::kGridChunk), [&](std::size_t c) {
    const std::uint64_t f0 = c * detail::kGridChunk;
    const std::uint64_t f1 = std::min<std::uint64_t>(total, f0 + detail::kGridChunk);
    return detail::torus_grid_chunk(poly, points, roots, f0, f1);
  });
}

std::vector<double> flow_abs_values(std::span<const double> freqs, std::span<const cplx> coeffs, double step,
                                    std::size_t count) {
  require(freqs.size() == coeffs.size(), "flow_abs_values: shape mismatch");
  std::vector<double> out(count);
  const auto chunks = static_cast<std::int64_t>(detail::chunk_count(count, detail::kFlowChunk));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::size_t k0 = static_cast<std::size_t>(c) * detail::kFlowChunk;
    const std::size_t k1 = std::min(count, k0 + detail::kFlowChunk);
    detail::flow_values_chunk(freqs, coeffs, step, k0, k1, out.data() + k0);
  }
  return out;
}

std::vector<ArgMax> flow_grid_max(std::span<const double> freqs, std::span<const cplx> coeffs, std::size_t batch,
                                  double step, std::size_t count) {
  require(coeffs.size() == batch * freqs.size(), "flow_grid_max: shape mismatch");
  const std::size_t chunks = detail::chunk_count(count, detail::kFlowChunk);
  std::vector<std::vector<ArgMax>> partial(chunks, std::vector<ArgMax>(batch));
  const auto n = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < n; ++c) {
    const std::size_t k0 = static_cast<std::size_t>(c) * detail::kFlowChunk;
    const std::size_t k1 = std::min(count, k0 + detail::kFlowChunk);
    detail::flow_max_chunk(freqs, coeffs, batch, step, k0, k1, partial[static_cast<std::size_t>(c)]);
  }
  std::vector<ArgMax> best(batch);
  for (const auto& p : partial)
    for (std::size_t b = 0; b < batch; ++b) best[b] = combine(best[b], p[b]);
  return best;
}

ArgMax vertex_max(const MultilinearTerms& poly) {
  require(poly.n <= 62, "vertex_max: too many variables");
  const auto terms_of = detail::terms_by_variable(poly);
  const unsigned high = detail::vertex_high_bits(poly.n);
  const auto low = static_cast<unsigned>(poly.n) - high;
  return chunked_argmax(std::size_t{1} << high,
                        [&](std::size_t c) { return detail::vertex_chunk(poly, terms_of, c, low); });
}

ArgMax bilinear_vertex_max(std::span<const double> a, std::size_t rows, std::size_t cols) {
  require(a.size() == rows * cols && rows <= 62, "bilinear_vertex_max: bad shape");
  const unsigned high = detail::vertex_high_bits(rows);
  const auto low = static_cast<unsigned>(rows) - high;
  return chunked_argmax(std::size_t{1} << high,
                        [&](std::size_t c) { return detail::bilinear_chunk(a, rows, cols, c, low); });
}

}  // namespace ksz::kernels::omp
