#include "bornflea/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace bornflea::fft {
namespace {

std::mutex g_plan_mu;
std::map<std::pair<std::size_t, int>, fftw_plan> g_plans;

fftw_plan plan_for(std::size_t n, int sign) {
  std::lock_guard<std::mutex> lock(g_plan_mu);
  const auto key = std::make_pair(n, sign);
  auto it = g_plans.find(key);
  if (it != g_plans.end()) return it->second;
  // FFTW_ESTIMATE keeps planning deterministic; FFTW_UNALIGNED lets the
  // cached plan execute on arbitrary caller buffers.
  fftw_complex* tmp = fftw_alloc_complex(n);
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), tmp, tmp,
                                 sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(tmp);
  g_plans.emplace(key, p);
  return p;
}

}  // namespace

void transform(std::complex<double>* data, std::size_t n, int sign) {
  fftw_plan p = plan_for(n, sign);
  fftw_complex* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
}

}  // namespace bornflea::fft
