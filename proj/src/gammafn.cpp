#include "specgeo/gammafn.hpp"

#include <cmath>
#include <numbers>

namespace specgeo {

namespace {
// Lanczos coefficients, g = 7
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};
constexpr double kPi = std::numbers::pi;
} // namespace

cplx log_gamma(cplx z) {
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + cplx(i, 0.0));
    cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx gamma_c(cplx z) {
    if (z.imag() == 0.0 && z.real() > 0.0) return std::tgamma(z.real());
    return std::exp(log_gamma(z));
}

cplx rec_gamma(cplx z) {
    // poles of Gamma at 0, -1, -2, ...
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        return 0.0;
    return std::exp(-log_gamma(z));
}

double digamma(double x) {
    // shift to x >= 10, then the asymptotic series
    double r = 0.0;
    while (x < 10.0) {
        r -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    double s = std::log(x) - 0.5 * inv;
    // Bernoulli tail: 1/12 x^2 - 1/120 x^4 + 1/252 x^6 - 1/240 x^8 + 1/132 x^10
    s -= inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 / 132))));
    return r + s;
}

} // namespace specgeo
