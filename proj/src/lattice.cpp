#include "specgeo/lattice.hpp"

#include "specgeo/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace specgeo::lattice {

namespace {

std::int64_t isqrt_floor(std::int64_t v) {
    if (v < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

} // namespace

std::int64_t ShellSpectrum::total_states() const {
    std::int64_t c = 0;
    for (const auto& s : shells) c += s.count;
    return c * spinor_rank;
}

ShellSpectrum enumerate_shells(int n, std::int64_t max_norm_sq, bool dirac) {
    if (n < 1 || n > 4) throw std::invalid_argument("enumerate_shells: dimension must be in 1..4");
    if (max_norm_sq < 0) throw std::invalid_argument("enumerate_shells: max_norm_sq >= 0");

    std::vector<std::int64_t> counts(static_cast<std::size_t>(max_norm_sq) + 1, 0);
    const std::int64_t r1 = isqrt_floor(max_norm_sq);

    // pruned box scan; ~volume-of-ball iterations
    if (n == 1) {
        for (std::int64_t k = -r1; k <= r1; ++k) ++counts[k * k];
    } else if (n == 2) {
        for (std::int64_t a = -r1; a <= r1; ++a) {
            std::int64_t ra = isqrt_floor(max_norm_sq - a * a);
            for (std::int64_t b = -ra; b <= ra; ++b) ++counts[a * a + b * b];
        }
    } else if (n == 3) {
        for (std::int64_t a = -r1; a <= r1; ++a) {
            std::int64_t ba = max_norm_sq - a * a;
            std::int64_t ra = isqrt_floor(ba);
            for (std::int64_t b = -ra; b <= ra; ++b) {
                std::int64_t bb = ba - b * b;
                std::int64_t rb = isqrt_floor(bb);
                for (std::int64_t c = -rb; c <= rb; ++c) ++counts[a * a + b * b + c * c];
            }
        }
    } else {
        for (std::int64_t a = -r1; a <= r1; ++a) {
            std::int64_t ba = max_norm_sq - a * a;
            std::int64_t ra = isqrt_floor(ba);
            for (std::int64_t b = -ra; b <= ra; ++b) {
                std::int64_t bb = ba - b * b;
                std::int64_t rb = isqrt_floor(bb);
                for (std::int64_t c = -rb; c <= rb; ++c) {
                    std::int64_t bc = bb - c * c;
                    std::int64_t rc = isqrt_floor(bc);
                    std::int64_t base = a * a + b * b + c * c;
                    for (std::int64_t d = -rc; d <= rc; ++d) ++counts[base + d * d];
                }
            }
        }
    }

    ShellSpectrum spec;
    spec.dimension = n;
    spec.spinor_rank = dirac ? (1 << (n / 2)) : 1;
    for (std::int64_t q = 0; q <= max_norm_sq; ++q)
        if (counts[q] > 0) spec.shells.push_back({q, counts[q]});
    return spec;
}

std::int64_t counting_function(const ShellSpectrum& spec, double lambda) {
    if (lambda < 0) throw std::invalid_argument("counting_function: lambda >= 0");
    const double lam2 = lambda * lambda;
    if (lam2 > static_cast<double>(spec.max_norm_sq()))
        throw std::out_of_range("counting_function: lambda beyond enumerated range");
    std::int64_t c = 0;
    for (const auto& s : spec.shells) {
        if (static_cast<double>(s.norm_sq) > lam2) break;
        c += s.count;
    }
    return c * spec.spinor_rank;
}

TraceResult heat_trace(const ShellSpectrum& spec, double t, double shift, double rel_tol) {
    if (t <= 0) throw std::invalid_argument("heat_trace: t > 0 required");
    const std::size_t m = spec.shells.size();
    std::vector<double> w(m), a(m);
    for (std::size_t i = 0; i < m; ++i) {
        w[i] = static_cast<double>(spec.shells[i].count);
        a[i] = static_cast<double>(spec.shells[i].norm_sq);
    }
    double value = spec.spinor_rank * kernels::weighted_exp_sum(w.data(), a.data(), m, t, shift);

    // dropped tail: sum_{q > M} r_d(q) e^{-t q} with the mean shell density
    // r_d(q) ~ V_d (d/2) q^{d/2-1}; for tM >= 2a the incomplete-gamma bound
    // int_M^inf q^{a-1} e^{-tq} dq <= 2 M^{a-1} e^{-tM} / t applies.
    const double M = static_cast<double>(spec.max_norm_sq()) + 1.0;
    const int d = spec.dimension;
    const double vball[5] = {0.0, 2.0, M_PI, 4.0 * M_PI / 3.0, M_PI * M_PI / 2.0};
    const double half_d = 0.5 * d;
    double tail;
    if (t * M >= std::max(2.0 * half_d, 4.0)) {
        const double density = 4.0 * vball[d] * half_d;   // x4 safety over the mean
        tail = density * 2.0 * std::pow(M, half_d - 1.0) * std::exp(-t * (M + shift)) / t;
    } else {
        tail = HUGE_VAL;   // enumeration does not even reach the decay regime
    }
    tail *= spec.spinor_rank;
    if (!(tail <= rel_tol * std::max(value, 1e-300)))
        throw std::runtime_error("heat_trace: truncation tail above tolerance; enumerate more shells");
    return {value, tail};
}

double heat_trace_theta_power(int d, double t, double shift) {
    double s = 1.0;
    double term;
    for (std::int64_t k = 1;; ++k) {
        term = 2.0 * std::exp(-t * static_cast<double>(k) * k);
        if (term < 1e-320) break;
        s += term;
    }
    return std::pow(s, d) * std::exp(-t * shift);
}

} // namespace specgeo::lattice
