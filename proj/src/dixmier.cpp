#include "specgeo/dixmier.hpp"

#include "specgeo/kernels.hpp"
#include "specgeo/zeta.hpp"

#include <boost/math/special_functions/expint.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specgeo::dix {

namespace {
// logarithmic integral li(x) = Ei(log x), the antiderivative of 1/log
double li(double x) { return boost::math::expint(std::log(x)); }
} // namespace

SingularValueStream SingularValueStream::from_spectrum(
    const lattice::ShellSpectrum& spec, const std::function<double(double)>& transform) {
    SingularValueStream sv;
    sv.mu.reserve(static_cast<std::size_t>(spec.total_states()));
    for (const auto& sh : spec.shells) {
        double v = transform(static_cast<double>(sh.norm_sq));
        if (!(v >= 0.0)) throw std::invalid_argument("singular values must be non-negative");
        for (std::int64_t c = 0; c < sh.count * spec.spinor_rank; ++c) sv.mu.push_back(v);
    }
    std::stable_sort(sv.mu.begin(), sv.mu.end(), std::greater<double>());
    return sv;
}

SingularValueStream SingularValueStream::from_values(std::vector<double> values) {
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("singular values must be non-negative");
    std::stable_sort(values.begin(), values.end(), std::greater<double>());
    return SingularValueStream{std::move(values)};
}

double partial_trace(const SingularValueStream& sv, std::size_t N) {
    if (N > sv.mu.size()) throw std::out_of_range("partial_trace: N beyond materialized stream");
    return kernels::sum(sv.mu.data(), N);
}

double partial_trace_interp(const SingularValueStream& sv, double lambda) {
    if (lambda < 0) throw std::out_of_range("partial_trace_interp: lambda >= 0");
    auto N = static_cast<std::size_t>(std::floor(lambda));
    if (N >= sv.mu.size()) throw std::out_of_range("partial_trace_interp: lambda beyond stream");
    return partial_trace(sv, N) + (lambda - N) * sv.mu[N];
}

double cesaro_tau(const SingularValueStream& sv, double lambda) {
    const double e = std::numbers::e;
    if (lambda < e) throw std::invalid_argument("cesaro_tau: lambda >= e");
    if (lambda > static_cast<double>(sv.mu.size()))
        throw std::out_of_range("cesaro_tau: stream shorter than lambda");

    // on [N, N+1]: sigma_rho = (sigma_N - N mu_N) + rho mu_N, so each segment
    // integrates to (sigma_N - N mu_N) [loglog] + mu_N [li - N loglog]
    double acc = 0.0;
    double sigma = 0.0;   // sigma at the segment's left integer
    std::size_t N = 0;
    while (static_cast<double>(N) < lambda) {
        double lo = std::max(static_cast<double>(N), e);
        double hi = std::min(static_cast<double>(N + 1), lambda);
        if (hi > lo) {
            double muN = sv.mu[N];
            double c0 = sigma - static_cast<double>(N) * muN;
            double dll = std::log(std::log(hi)) - std::log(std::log(lo));
            acc += c0 * dll + muN * (li(hi) - li(lo) - static_cast<double>(N) * dll);
        }
        sigma += sv.mu[N];
        ++N;
    }
    return acc / std::log(lambda);
}

DixmierEstimate dixmier_estimate(int d, std::int64_t N_max, double p) {
    if (d != 2 && d != 4) throw std::invalid_argument("dixmier_estimate: d in {2, 4}");
    if (N_max < 100) throw std::invalid_argument("dixmier_estimate: N_max too small");
    if (p < 0) p = 0.5 * d;

    // enumerate at least N_max scalar states: #\{|k|^2 <= R\} ~ V_d R^{d/2}
    const double vball = (d == 2) ? std::numbers::pi : std::numbers::pi * std::numbers::pi / 2.0;
    auto R = static_cast<std::int64_t>(std::pow(1.25 * (N_max + 16) / vball, 2.0 / d)) + 8;
    lattice::ShellSpectrum spec = lattice::enumerate_shells(d, R, false);
    if (spec.total_states() < N_max + 1)
        throw std::runtime_error("dixmier_estimate: shell enumeration came up short");

    SingularValueStream sv;
    {
        // mu = (1 + |k|^2)^{-p}; the resolvent powers in play are integers p
        // for d/2, so the kernel transform covers them; general p falls back
        const bool int_power = std::abs(p - std::round(p)) < 1e-14;
        std::vector<double> norms;
        norms.reserve(static_cast<std::size_t>(spec.total_states()));
        for (const auto& sh : spec.shells)
            for (std::int64_t c = 0; c < sh.count; ++c)
                norms.push_back(static_cast<double>(sh.norm_sq));
        sv.mu.resize(norms.size());
        if (int_power)
            kernels::inv_one_plus_pow(norms.data(), sv.mu.data(), norms.size(),
                                      static_cast<int>(std::llround(p)));
        else
            for (std::size_t i = 0; i < norms.size(); ++i)
                sv.mu[i] = std::pow(1.0 + norms[i], -p);
        // norms ascend, so mu already descends
    }

    DixmierEstimate out;
    std::vector<std::int64_t> ladder;
    for (std::int64_t N = 1000; N <= N_max; N *= 10) ladder.push_back(N);
    if (ladder.empty() || ladder.back() != N_max) ladder.push_back(N_max);

    for (std::int64_t N : ladder) {
        double v = partial_trace(sv, static_cast<std::size_t>(N)) / std::log(static_cast<double>(N));
        out.ladder.emplace_back(N, v);
    }
    out.cesaro_raw = out.ladder.back().second;

    // least squares on v = a + b / log N
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [N, v] : out.ladder) {
        double x = 1.0 / std::log(static_cast<double>(N));
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
    }
    double m = static_cast<double>(out.ladder.size());
    double denom = m * sxx - sx * sx;
    out.cesaro_extrapolated = (denom != 0) ? (sy * sxx - sx * sxy) / denom : out.cesaro_raw;
    out.cesaro_uncertainty = std::abs(out.cesaro_raw - out.cesaro_extrapolated);

    // residue route: sum_n mu_n^s = Z_d(2 p s) + lower order, so a pole at
    // s = 1 exists only for 2p = d, with residue Res Z_d(d) / d
    if (std::abs(2.0 * p - d) < 1e-14) {
        auto mv = zeta::epstein_zeta(d, cplx(static_cast<double>(d), 0.0));
        out.zeta_residue = mv.residue.real() / d;
    } else {
        out.zeta_residue = 0.0;   // trace class for p > d/2
    }
    return out;
}

MeasurabilityReport measurability_check(const SingularValueStream& sv,
                                        const std::vector<std::int64_t>& ladder) {
    if (ladder.size() < 3) throw std::invalid_argument("measurability_check: ladder too short");
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] <= ladder[i - 1])
            throw std::invalid_argument("measurability_check: ladder must increase");

    MeasurabilityReport rep;
    for (std::int64_t N : ladder) {
        double v = partial_trace(sv, static_cast<std::size_t>(N)) / std::log(static_cast<double>(N));
        rep.sequence.emplace_back(N, v);
    }
    std::vector<double> diffs;
    for (std::size_t i = 1; i < rep.sequence.size(); ++i)
        diffs.push_back(rep.sequence[i].second - rep.sequence[i - 1].second);

    const std::size_t tail = diffs.size() / 2;
    double late = 0.0;
    for (std::size_t i = tail; i < diffs.size(); ++i) late = std::max(late, std::abs(diffs[i]));
    rep.cauchy_variation = late;

    // fit v = a + b / log N; a convergent normalized partial-sum sequence is
    // captured by this model to high accuracy, so judge by the residuals
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [N, v] : rep.sequence) {
        double x = 1.0 / std::log(static_cast<double>(N));
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
    }
    const double m = static_cast<double>(rep.sequence.size());
    const double denom = m * sxx - sx * sx;
    const double b = (denom != 0) ? (m * sxy - sx * sy) / denom : 0.0;
    const double a = (sy - b * sx) / m;

    double max_resid = 0.0, spread = 0.0;
    for (auto& [N, v] : rep.sequence) {
        max_resid = std::max(max_resid, std::abs(v - (a + b / std::log(static_cast<double>(N)))));
        spread = std::max(spread, std::abs(v - rep.sequence.back().second));
    }
    int sign_changes = 0;
    for (std::size_t i = 1; i < diffs.size(); ++i)
        if (diffs[i] * diffs[i - 1] < 0) ++sign_changes;

    const double scale = std::abs(a) + spread + 1e-12;
    if (max_resid <= 0.02 * scale) {
        rep.verdict = Trend::Converging;
        rep.limit_estimate = a;
    } else if (sign_changes >= 1) {
        rep.verdict = Trend::Oscillating;
        rep.limit_estimate = rep.sequence.back().second;
    } else {
        rep.verdict = Trend::Diverging;
        rep.limit_estimate = rep.sequence.back().second;
    }
    return rep;
}

const char* trend_name(Trend t) {
    switch (t) {
        case Trend::Converging: return "converging";
        case Trend::Diverging: return "diverging";
        case Trend::Oscillating: return "oscillating";
    }
    return "?";
}

} // namespace specgeo::dix
