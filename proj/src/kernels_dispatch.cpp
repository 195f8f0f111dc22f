#include "fk/kernels.hpp"

namespace fk {

SweepFn select_sweep() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return sweep_avx2;
#elif defined(__aarch64__)
  return sweep_neon;
#endif
  return sweep_scalar;
}

const char* sweep_kernel_name() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return "avx2";
#elif defined(__aarch64__)
  return "neon";
#endif
  return "scalar";
}

}  // namespace fk
