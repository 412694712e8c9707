// Reference kernels.  Sums are Kahan-compensated so that million-term heat
// traces keep ~1e-15 relative accuracy regardless of array length.
#include "specgeo/kernels.hpp"

#include <cmath>

namespace specgeo::kernels {

namespace {

double sum_scalar(const double* x, std::size_t n) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double y = x[i] - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = x[i] * y[i];
        double u = v - c;
        double t = s + u;
        c = (t - s) - u;
        s = t;
    }
    return s;
}

double wexp_scalar(const double* w, const double* a, std::size_t n, double t, double shift) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = w[i] * std::exp(-t * (a[i] + shift));
        double u = v - c;
        double tt = s + u;
        c = (tt - s) - u;
        s = tt;
    }
    return s;
}

void invpow_scalar(const double* x, double* out, std::size_t n, int p) {
    for (std::size_t i = 0; i < n; ++i) {
        double r = 1.0 / (1.0 + x[i]);
        double v = r;
        for (int k = 1; k < p; ++k) v *= r;
        out[i] = v;
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{sum_scalar, dot_scalar, wexp_scalar, invpow_scalar, "scalar"};
    return ops;
}

const Ops& active_ops() {
    static const Ops* chosen = [] {
        const Ops* v = avx2_ops();
        return v ? v : &scalar_ops();
    }();
    return *chosen;
}

} // namespace specgeo::kernels
