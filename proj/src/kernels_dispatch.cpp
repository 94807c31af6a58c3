#include "bornflea/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace bornflea::kernels {
namespace {

const Ops* pick() {
  if (const char* env = std::getenv("BORNFLEA_KERNELS");
      env != nullptr && std::string_view(env) == "scalar")
    return &scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return &avx2_ops();
#endif
  return &scalar_ops();
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

const Ops& active() {
  const Ops* p = g_active.load(std::memory_order_acquire);
  if (p == nullptr) {
    p = pick();
    g_active.store(p, std::memory_order_release);
  }
  return *p;
}

void force_scalar(bool on) {
  g_active.store(on ? &scalar_ops() : pick(), std::memory_order_release);
}

std::string_view selected_isa() { return active().name; }

}  // namespace bornflea::kernels
