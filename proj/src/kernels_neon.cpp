#if defined(__aarch64__)

#include <arm_neon.h>

#include <cstddef>

#include "fk/kernels.hpp"

namespace fk {

void sweep_neon(const double* in, double* out, int n, double c) {
  const float64x2_t vc = vdupq_n_f64(c);
  for (int y = 1; y < n - 1; ++y) {
    const double* row = in + (size_t)y * n;
    const double* up = row - n;
    const double* dn = row + n;
    double* o = out + (size_t)y * n;
    int x = 1;
    for (; x + 2 <= n - 1; x += 2) {
      const float64x2_t l = vld1q_f64(row + x - 1);
      const float64x2_t r = vld1q_f64(row + x + 1);
      const float64x2_t u = vld1q_f64(up + x);
      const float64x2_t d = vld1q_f64(dn + x);
      const float64x2_t s = vaddq_f64(vaddq_f64(l, r), vaddq_f64(u, d));
      vst1q_f64(o + x, vmulq_f64(vc, s));
    }
    for (; x < n - 1; ++x)
      o[x] = c * ((row[x - 1] + row[x + 1]) + (up[x] + dn[x]));
  }
}

}  // namespace fk

#endif
