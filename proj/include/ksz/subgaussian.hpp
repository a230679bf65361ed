#pragma once

// Subgaussian random families.
//
// Four built-in families, all with subgaussian constant 1:
//   RademacherReal    uniform on {-1, +1}
//   SteinhausComplex  uniform on the unit circle
//   GaussianReal      N(0, 1)
//   GaussianComplex   (g1 + i g2) / sqrt(2), g1, g2 independent N(0, 1);
//                     unit total variance, each part has variance 1/2.
//
// Draws are keyed by (seed, stream): draw k of a batch depends only on
// (seed, stream, k), so batches reproduce bit-identically under any
// thread schedule. Parallel consumers must use distinct streams.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ksz/rng.hpp"

namespace ksz {

using cplx = std::complex<double>;

enum class FamilyKind { RademacherReal, SteinhausComplex, GaussianReal, GaussianComplex };

struct GeneratorSpec {
  FamilyKind kind = FamilyKind::RademacherReal;
  double sg = 1.0;
  std::optional<double> bound = 1.0;

  static GeneratorSpec of(FamilyKind kind);
  bool is_complex() const {
    return kind == FamilyKind::SteinhausComplex || kind == FamilyKind::GaussianComplex;
  }
};

std::string_view to_string(FamilyKind kind);
FamilyKind family_from_string(std::string_view name);

struct DrawBatch {
  std::vector<cplx> values;
  GeneratorSpec spec;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// `count` i.i.d. draws; throws InvalidArgument when count == 0.
DrawBatch draw_batch(const GeneratorSpec& spec, std::size_t count, std::uint64_t seed,
                     std::uint64_t stream);

/// Draws `out.size()` values from an existing generator. Used by Monte Carlo
/// loops that already own a per-trial stream.
void fill_draws(FamilyKind kind, CounterRng& rng, std::span<cplx> out);
/// Real-valued draws; only valid for the real families.
void fill_real_draws(FamilyKind kind, CounterRng& rng, std::span<double> out);

/// sqrt(2) * ||sgs||_2: subgaussian constant bound of a sum.
double sg_sum_bound(std::span<const double> sgs);

/// Tail bound P(|f| > t): 2 exp(-t^2 / 2sg^2) for real families,
/// 4 exp(-t^2 / 4sg^2) for complex ones, clamped to [0, 1].
double tail_bound(const GeneratorSpec& spec, double sg, double t);

}  // namespace ksz
