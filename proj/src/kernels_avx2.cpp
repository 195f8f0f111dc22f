#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>

#include "fk/kernels.hpp"

namespace fk {

// Same association as the scalar kernel, (l+r)+(u+d) then one multiply, so the
// two agree bit for bit (this file is built with contraction off, no FMA).
void sweep_avx2(const double* in, double* out, int n, double c) {
  const __m256d vc = _mm256_set1_pd(c);
  for (int y = 1; y < n - 1; ++y) {
    const double* row = in + (size_t)y * n;
    const double* up = row - n;
    const double* dn = row + n;
    double* o = out + (size_t)y * n;
    int x = 1;
    for (; x + 4 <= n - 1; x += 4) {
      const __m256d l = _mm256_loadu_pd(row + x - 1);
      const __m256d r = _mm256_loadu_pd(row + x + 1);
      const __m256d u = _mm256_loadu_pd(up + x);
      const __m256d d = _mm256_loadu_pd(dn + x);
      const __m256d s = _mm256_add_pd(_mm256_add_pd(l, r), _mm256_add_pd(u, d));
      _mm256_storeu_pd(o + x, _mm256_mul_pd(vc, s));
    }
    for (; x < n - 1; ++x)
      o[x] = c * ((row[x - 1] + row[x + 1]) + (up[x] + dn[x]));
  }
}

}  // namespace fk

#endif
