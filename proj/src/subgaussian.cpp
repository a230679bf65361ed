#include "ksz/subgaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ksz/error.hpp"

namespace ksz {

GeneratorSpec GeneratorSpec::of(FamilyKind kind) {
  GeneratorSpec spec;
  spec.kind = kind;
  spec.sg = 1.0;
  if (kind == FamilyKind::RademacherReal || kind == FamilyKind::SteinhausComplex)
    spec.bound = 1.0;
  else
    spec.bound.reset();
  return spec;
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::RademacherReal: return "RademacherReal";
    case FamilyKind::SteinhausComplex: return "SteinhausComplex";
    case FamilyKind::GaussianReal: return "GaussianReal";
    case FamilyKind::GaussianComplex: return "GaussianComplex";
  }
  return "?";
}

FamilyKind family_from_string(std::string_view name) {
  for (auto k : {FamilyKind::RademacherReal, FamilyKind::SteinhausComplex, FamilyKind::GaussianReal,
                 FamilyKind::GaussianComplex})
    if (to_string(k) == name) return k;
  throw InvalidArgument("unknown family kind '" + std::string(name) + "'");
}

namespace {

// Fixed counter budget per draw keeps draw k independent of the kind of
// earlier draws in the same stream.
constexpr std::uint64_t kWordsPerDraw = 2;

cplx draw_at(FamilyKind kind, const CounterRng& rng, std::uint64_t base) {
  const std::uint64_t w0 = rng.at(base);
  const std::uint64_t w1 = rng.at(base + 1);
  switch (kind) {
    case FamilyKind::RademacherReal:
      return (w0 >> 63) ? cplx(1.0, 0.0) : cplx(-1.0, 0.0);
    case FamilyKind::SteinhausComplex: {
      const double phase = 2.0 * std::numbers::pi * CounterRng::to_unit(w0);
      return std::polar(1.0, phase);
    }
    case FamilyKind::GaussianReal:
    case FamilyKind::GaussianComplex: {
      const double u1 = 1.0 - CounterRng::to_unit(w0);
      const double u2 = CounterRng::to_unit(w1);
      const double radius = std::sqrt(-2.0 * std::log(u1));
      const double angle = 2.0 * std::numbers::pi * u2;
      if (kind == FamilyKind::GaussianReal) return {radius * std::cos(angle), 0.0};
      return {radius * std::cos(angle) / std::numbers::sqrt2, radius * std::sin(angle) / std::numbers::sqrt2};
    }
  }
  return {};
}

}  // namespace

void fill_draws(FamilyKind kind, CounterRng& rng, std::span<cplx> out) {
  std::uint64_t pos = rng.position();
  for (auto& v : out) {
    v = draw_at(kind, rng, pos);
    pos += kWordsPerDraw;
  }
  rng.seek(pos);
}

void fill_real_draws(FamilyKind kind, CounterRng& rng, std::span<double> out) {
  require(kind == FamilyKind::RademacherReal || kind == FamilyKind::GaussianReal,
          "fill_real_draws: complex family requested");
  std::uint64_t pos = rng.position();
  for (auto& v : out) {
    v = draw_at(kind, rng, pos).real();
    pos += kWordsPerDraw;
  }
  rng.seek(pos);
}

DrawBatch draw_batch(const GeneratorSpec& spec, std::size_t count, std::uint64_t seed,
                     std::uint64_t stream) {
  require(count >= 1, "draw_batch: count must be positive");
  DrawBatch batch{std::vector<cplx>(count), spec, seed, stream};
  CounterRng rng(seed, stream);
  fill_draws(spec.kind, rng, batch.values);
  return batch;
}

double sg_sum_bound(std::span<const double> sgs) {
  double sum_sq = 0.0;
  for (double s : sgs) {
    require(s >= 0.0 && std::isfinite(s), "sg_sum_bound: entries must be finite and nonnegative");
    sum_sq += s * s;
  }
  return std::numbers::sqrt2 * std::sqrt(sum_sq);
}

double tail_bound(const GeneratorSpec& spec, double sg, double t) {
  require(t >= 0.0, "tail_bound: t must be nonnegative");
  require(sg >= 0.0, "tail_bound: sg must be nonnegative");
  if (t == 0.0) return 1.0;
  if (sg == 0.0) return 0.0;
  const double value = spec.is_complex() ? 4.0 * std::exp(-t * t / (4.0 * sg * sg))
                                         : 2.0 * std::exp(-t * t / (2.0 * sg * sg));
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace ksz
