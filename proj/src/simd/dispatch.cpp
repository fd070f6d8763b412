#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "helm/simd/kernels.hpp"

namespace helm::simd {
namespace {

Backend detect() {
  if (const char* env = std::getenv("HELM_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Backend::scalar;
    if (want == "avx2" && avx2_supported()) return Backend::avx2;
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

bool avx2_supported() {
#if defined(HELM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (backend == Backend::avx2 && !avx2_supported()) {
    throw std::invalid_argument("AVX2/FMA kernels are not available on this CPU or build");
  }
  current().store(backend, std::memory_order_relaxed);
}

std::string_view backend_name(Backend backend) { return backend == Backend::avx2 ? "avx2" : "scalar"; }

const KernelTable& kernels() {
#if defined(HELM_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2_kernels();
#endif
  return scalar_kernels();
}

}  // namespace helm::simd
