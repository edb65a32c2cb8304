#include "fft_engine.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace boxembed::detail {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex g_planner_mutex;
std::map<int, PlanPair>& plan_cache() {
  static std::map<int, PlanPair> cache;
  return cache;
}

// FFTW planning is not thread-safe; execution via fftw_execute_dft is.
const PlanPair& plans_for(int m) {
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  fftw_complex* a = fftw_alloc_complex(std::size_t(m) * m);
  fftw_complex* b = fftw_alloc_complex(std::size_t(m) * m);
  PlanPair p;
  p.fwd = fftw_plan_dft_2d(m, m, a, b, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_2d(m, m, a, b, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(a);
  fftw_free(b);
  return cache.emplace(m, p).first->second;
}

}  // namespace

void fft2(int m, const std::complex<double>* in, std::complex<double>* out, bool forward) {
  const PlanPair& p = plans_for(m);
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in));
  auto* dst = reinterpret_cast<fftw_complex*>(out);
  fftw_execute_dft(forward ? p.fwd : p.bwd, src, dst);
}

}  // namespace boxembed::detail
