// Array kernels for the hot inner loops: compensated sums, dot products,
// weighted exponential sums and resolvent-power transforms.  Scalar
// reference implementations always exist; an AVX2+FMA variant is selected
// once at startup when the CPU supports it.  Both variants are equivalence
// tested against each other.
#pragma once

#include <cstddef>

namespace specgeo::kernels {

struct Ops {
    // sum of x[0..n)
    double (*sum)(const double* x, std::size_t n);
    // sum of x[i]*y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // sum of w[i] * exp(-t*(a[i]+shift))
    double (*weighted_exp_sum)(const double* w, const double* a, std::size_t n,
                               double t, double shift);
    // out[i] = (1+x[i])^(-p), integer p >= 1
    void (*inv_one_plus_pow)(const double* x, double* out, std::size_t n, int p);
    const char* name;
};

const Ops& scalar_ops();
const Ops* avx2_ops();       // nullptr when not compiled in or CPU lacks AVX2
const Ops& active_ops();     // runtime-dispatched choice

inline double sum(const double* x, std::size_t n) { return active_ops().sum(x, n); }
inline double dot(const double* x, const double* y, std::size_t n) { return active_ops().dot(x, y, n); }
inline double weighted_exp_sum(const double* w, const double* a, std::size_t n, double t, double shift) {
    return active_ops().weighted_exp_sum(w, a, n, t, shift);
}
inline void inv_one_plus_pow(const double* x, double* out, std::size_t n, int p) {
    active_ops().inv_one_plus_pow(x, out, n, p);
}

} // namespace specgeo::kernels
