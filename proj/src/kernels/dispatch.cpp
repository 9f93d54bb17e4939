#include <atomic>
#include <cstdlib>
#include <cstring>

#include "qlandau/kernels/kernels.hpp"

namespace qlandau::kernels {

#if defined(QLANDAU_HAVE_AVX2)
const KernelTable* avx2_table_impl() noexcept;
#endif

const KernelTable* avx2_table() noexcept {
#if defined(QLANDAU_HAVE_AVX2)
  return avx2_table_impl();
#else
  return nullptr;
#endif
}

bool avx2_available() noexcept {
#if defined(QLANDAU_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

namespace {

const KernelTable* initial_table() noexcept {
  const char* env = std::getenv("QW_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_table();
  if (avx2_available()) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(Backend backend) noexcept {
  if (backend == Backend::scalar) {
    current().store(&scalar_table(), std::memory_order_release);
    return true;
  }
  if (!avx2_available()) return false;
  current().store(avx2_table(), std::memory_order_release);
  return true;
}

Backend selected() noexcept { return &active() == &scalar_table() ? Backend::scalar : Backend::avx2; }

}  // namespace qlandau::kernels
