// AVX2+FMA kernel variants.  This translation unit is compiled with
// -mavx2 -mfma; the dispatcher only hands these out after a runtime CPUID
// check, so the rest of the library stays runnable on any x86-64.
//
// exp() uses the Cephes rational approximation (the same coefficients as
// the classic expl.c): n = round(x*log2e), r = x - n*ln2, then
// e^r = 1 + 2r P(r^2) / (Q(r^2) - r P(r^2)), scaled by 2^n through the
// exponent bits.  Accuracy is ~1 ulp over the reduced interval.
#include "specgeo/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#include <cstdint>

namespace specgeo::kernels {
namespace {

inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1    = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2    = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
    const __m256d max_x = _mm256_set1_pd(709.08);
    const __m256d min_x = _mm256_set1_pd(-708.39);

    __m256d under = _mm256_cmp_pd(x, min_x, _CMP_LT_OQ);
    __m256d over  = _mm256_cmp_pd(x, max_x, _CMP_GT_OQ);
    __m256d xc = _mm256_min_pd(_mm256_max_pd(x, min_x), max_x);

    __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, c1, xc);
    r = _mm256_fnmadd_pd(n, c2, r);
    __m256d rr = _mm256_mul_pd(r, r);

    __m256d p = _mm256_fmadd_pd(p0, rr, p1);
    p = _mm256_fmadd_pd(p, rr, p2);
    p = _mm256_mul_pd(p, r);
    __m256d q = _mm256_fmadd_pd(q0, rr, q1);
    q = _mm256_fmadd_pd(q, rr, q2);
    q = _mm256_fmadd_pd(q, rr, q3);
    __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

    // scale by 2^n via the exponent field
    __m128i n32 = _mm256_cvtpd_epi32(n);
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));

    e = _mm256_andnot_pd(under, e);
    e = _mm256_blendv_pd(e, _mm256_set1_pd(__builtin_huge_val()), over);
    return e;
}

// four independent Kahan accumulators, folded scalar at the end
struct Acc4 {
    __m256d s = _mm256_setzero_pd();
    __m256d c = _mm256_setzero_pd();
    inline void add(__m256d v) {
        __m256d y = _mm256_sub_pd(v, c);
        __m256d t = _mm256_add_pd(s, y);
        c = _mm256_sub_pd(_mm256_sub_pd(t, s), y);
        s = t;
    }
    double fold() const {
        alignas(32) double sv[4], cv[4];
        _mm256_store_pd(sv, s);
        _mm256_store_pd(cv, c);
        double r = 0.0, comp = 0.0;
        for (int i = 0; i < 4; ++i) {
            double y = (sv[i] - cv[i]) - comp;
            double t = r + y;
            comp = (t - r) - y;
            r = t;
        }
        return r;
    }
};

double sum_avx2(const double* x, std::size_t n) {
    Acc4 acc;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc.add(_mm256_loadu_pd(x + i));
    double s = acc.fold(), c = 0.0;
    for (; i < n; ++i) {
        double y = x[i] - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    Acc4 acc;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc.add(_mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    double s = acc.fold(), c = 0.0;
    for (; i < n; ++i) {
        double v = x[i] * y[i];
        double u = v - c;
        double t = s + u;
        c = (t - s) - u;
        s = t;
    }
    return s;
}

double wexp_avx2(const double* w, const double* a, std::size_t n, double t, double shift) {
    const __m256d vt = _mm256_set1_pd(-t);
    const __m256d vs = _mm256_set1_pd(shift);
    Acc4 acc;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d arg = _mm256_mul_pd(vt, _mm256_add_pd(_mm256_loadu_pd(a + i), vs));
        acc.add(_mm256_mul_pd(_mm256_loadu_pd(w + i), exp_pd(arg)));
    }
    double s = acc.fold(), c = 0.0;
    for (; i < n; ++i) {
        double v = w[i] * __builtin_exp(-t * (a[i] + shift));
        double u = v - c;
        double tt = s + u;
        c = (tt - s) - u;
        s = tt;
    }
    return s;
}

void invpow_avx2(const double* x, double* out, std::size_t n, int p) {
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_div_pd(one, _mm256_add_pd(one, _mm256_loadu_pd(x + i)));
        __m256d v = r;
        for (int k = 1; k < p; ++k) v = _mm256_mul_pd(v, r);
        _mm256_storeu_pd(out + i, v);
    }
    for (; i < n; ++i) {
        double r = 1.0 / (1.0 + x[i]);
        double v = r;
        for (int k = 1; k < p; ++k) v *= r;
        out[i] = v;
    }
}

} // namespace

const Ops* avx2_ops() {
    static const Ops ops{sum_avx2, dot_avx2, wexp_avx2, invpow_avx2, "avx2"};
    static const bool ok =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? &ops : nullptr;
}

} // namespace specgeo::kernels

#else

namespace specgeo::kernels {
const Ops* avx2_ops() { return nullptr; }
} // namespace specgeo::kernels

#endif
