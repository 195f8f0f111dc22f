#pragma once

// Jacobi sweep kernels for massive-walk solvers on an n-by-n row-major grid.
// out[x,y] = c*((in[x-1,y]+in[x+1,y]) + (in[x,y-1]+in[x,y+1])) at interior
// cells; the outermost ring is never written, it holds the Dirichlet zero.
// All variants keep the same association so results are bit-identical.

namespace fk {

using SweepFn = void (*)(const double* in, double* out, int n, double c);

void sweep_scalar(const double* in, double* out, int n, double c);
#if defined(__x86_64__) || defined(_M_X64)
void sweep_avx2(const double* in, double* out, int n, double c);
#endif
#if defined(__aarch64__)
void sweep_neon(const double* in, double* out, int n, double c);
#endif

SweepFn select_sweep();
const char* sweep_kernel_name();

}  // namespace fk
