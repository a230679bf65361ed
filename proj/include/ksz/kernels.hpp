#pragma once

// Data-parallel inner loops.
//
// Each kernel exists twice with identical signatures: ksz::kernels::serial is
// the plain reference loop and ksz::kernels::omp the OpenMP version. Both
// reduce with the same total order (larger value wins, ties go to the lower
// index), so their results are bit-identical for any thread count. Library
// code calls the dispatching wrappers at the bottom, which follow the
// process-wide execution policy.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace ksz {
using cplx = std::complex<double>;
}

namespace ksz::kernels {

struct ArgMax {
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t index = 0;

  void offer(double v, std::uint64_t i) {
    if (v > value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
};

inline ArgMax combine(ArgMax a, const ArgMax& b) {
  a.offer(b.value, b.index);
  return a;
}

/// Sparse trigonometric polynomial flattened for grid evaluation:
/// term t has exponents exps[t*n .. t*n + n) and coefficient coeffs[t].
struct TermTable {
  std::size_t n = 0;
  std::vector<int> exps;
  std::vector<cplx> coeffs;
  std::size_t terms() const { return coeffs.size(); }
};

/// Real polynomial whose every variable has degree <= 1 in every term:
/// term t is coeffs[t] * prod_{k in vars[t]} x_k.
struct MultilinearTerms {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> vars;
  std::vector<double> coeffs;
};

enum class Exec { Serial, Parallel };
void set_default_exec(Exec exec);
Exec default_exec();

namespace serial {

/// fn(i) for i in [0, count), results in index order.
std::vector<double> map_indices(std::size_t count, const std::function<double(std::size_t)>& fn);

/// max_i fn(i) with the first maximizer.
ArgMax argmax_indices(std::size_t count, const std::function<double(std::size_t)>& fn);

/// max_j |sum_i g_i a(i, j)| for a rows x cols row-major matrix.
ArgMax column_sup(std::span<const cplx> a, std::size_t rows, std::size_t cols, std::span<const cplx> g);

/// max |P| over the uniform torus grid with `points` nodes per axis. The
/// index is the flat grid index, axis 0 slowest.
ArgMax torus_grid_max(const TermTable& poly, std::size_t points);

/// |sum_j c_j exp(-i t freq_j)| at t = k * step for k in [0, count).
std::vector<double> flow_abs_values(std::span<const double> freqs, std::span<const cplx> coeffs,
                                    double step, std::size_t count);

/// The same scan for `batch` coefficient rows (batch x freqs, row-major).
/// One ArgMax per row; index = k.
std::vector<ArgMax> flow_grid_max(std::span<const double> freqs, std::span<const cplx> coeffs,
                                  std::size_t batch, double step, std::size_t count);

/// max |P(x)| over x in {-1, 1}^n. Index bit k set means x_k = -1.
ArgMax vertex_max(const MultilinearTerms& poly);

/// max over x in {-1, 1}^rows of ||A^T x||_1 for a real rows x cols matrix.
ArgMax bilinear_vertex_max(std::span<const double> a, std::size_t rows, std::size_t cols);

}  // namespace serial

namespace omp {

std::vector<double> map_indices(std::size_t count, const std::function<double(std::size_t)>& fn);
ArgMax argmax_indices(std::size_t count, const std::function<double(std::size_t)>& fn);
ArgMax column_sup(std::span<const cplx> a, std::size_t rows, std::size_t cols, std::span<const cplx> g);
ArgMax torus_grid_max(const TermTable& poly, std::size_t points);
std::vector<double> flow_abs_values(std::span<const double> freqs, std::span<const cplx> coeffs,
                                    double step, std::size_t count);
std::vector<ArgMax> flow_grid_max(std::span<const double> freqs, std::span<const cplx> coeffs,
                                  std::size_t batch, double step, std::size_t count);
ArgMax vertex_max(const MultilinearTerms& poly);
ArgMax bilinear_vertex_max(std::span<const double> a, std::size_t rows, std::size_t cols);
}  // namespace omp

// Dispatch on default_exec().
std::vector<double> map_indices(std::size_t count, const std::function<double(std::size_t)>& fn);
ArgMax argmax_indices(std::size_t count, const std::function<double(std::size_t)>& fn);
ArgMax column_sup(std::span<const cplx> a, std::size_t rows, std::size_t cols, std::span<const cplx> g);
ArgMax torus_grid_max(const TermTable& poly, std::size_t points);
std::vector<double> flow_abs_values(std::span<const double> freqs, std::span<const cplx> coeffs,
                                    double step, std::size_t count);
std::vector<ArgMax> flow_grid_max(std::span<const double> freqs, std::span<const cplx> coeffs,
                                  std::size_t batch, double step, std::size_t count);
ArgMax vertex_max(const MultilinearTerms& poly);
ArgMax bilinear_vertex_max(std::span<const double> a, std::size_t rows, std::size_t cols);

}  // namespace ksz::kernels
