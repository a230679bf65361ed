#include "ksz/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "ksz/error.hpp"

namespace ksz {

namespace {

// The planner is not thread safe; execution of an existing plan on fresh
// arrays is. Plans are created once per length and never destroyed.
std::mutex g_plan_mutex;
std::map<std::size_t, fftw_plan> g_plans;

fftw_plan plan_for(std::size_t L) {
  std::lock_guard lock(g_plan_mutex);
  auto it = g_plans.find(L);
  if (it != g_plans.end()) return it->second;
  auto* in = fftw_alloc_complex(L);
  auto* out = fftw_alloc_complex(L);
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(L), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
  require(plan != nullptr, "fft: planner failed");
  g_plans.emplace(L, plan);
  return plan;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

}  // namespace

std::vector<cplx> roots_of_unity_values(std::span<const int> exps, std::span<const cplx> coeffs, std::size_t L) {
  require(L >= 1, "fft: empty grid");
  require(exps.size() == coeffs.size(), "fft: exponent/coefficient length mismatch");
  const fftw_plan plan = plan_for(L);
  std::unique_ptr<fftw_complex[], FftwFree> in(fftw_alloc_complex(L));
  std::unique_ptr<fftw_complex[], FftwFree> out(fftw_alloc_complex(L));
  std::memset(in.get(), 0, sizeof(fftw_complex) * L);
  const auto l = static_cast<long long>(L);
  for (std::size_t t = 0; t < exps.size(); ++t) {
    long long e = exps[t] % l;
    if (e < 0) e += l;
    in[e][0] += coeffs[t].real();
    in[e][1] += coeffs[t].imag();
  }
  fftw_execute_dft(plan, in.get(), out.get());
  std::vector<cplx> values(L);
  for (std::size_t j = 0; j < L; ++j) values[j] = {out[j][0], out[j][1]};
  return values;
}

}  // namespace ksz
