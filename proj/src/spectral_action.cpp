#include "specgeo/spectral_action.hpp"

#include "specgeo/zeta.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specgeo::action {

namespace {
constexpr double kPi = std::numbers::pi;
}

CutoffFunction CutoffFunction::sharp() { return {Kind::Sharp, {}}; }
CutoffFunction CutoffFunction::exponential() { return {Kind::Exponential, {}}; }

CutoffFunction CutoffFunction::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw std::invalid_argument("tabulated cutoff: need >= 2 samples");
    double prev_x = -1.0, prev_v = HUGE_VAL;
    for (auto& [x, v] : samples) {
        if (x <= prev_x) throw std::invalid_argument("tabulated cutoff: grid must increase");
        if (v < 0 || v > prev_v + 1e-12)
            throw std::invalid_argument("tabulated cutoff: values must be positive decreasing");
        prev_x = x;
        prev_v = v;
    }
    if (samples.front().first != 0.0)
        throw std::invalid_argument("tabulated cutoff: grid must start at 0");
    return {Kind::Tabulated, std::move(samples)};
}

double CutoffFunction::operator()(double x) const {
    switch (kind) {
        case Kind::Sharp: return x <= 1.0 ? 1.0 : 0.0;
        case Kind::Exponential: return std::exp(-x);
        case Kind::Tabulated: {
            if (x <= table.front().first) return table.front().second;
            if (x >= table.back().first) return 0.0;
            auto it = std::upper_bound(table.begin(), table.end(), x,
                                       [](double v, const auto& p) { return v < p.first; });
            auto lo = std::prev(it);
            double w = (x - lo->first) / (it->first - lo->first);
            return lo->second * (1.0 - w) + it->second * w;
        }
    }
    return 0.0;
}

double CutoffFunction::moment(int k) const {
    if (k < 1) throw std::invalid_argument("moment: k >= 1");
    switch (kind) {
        case Kind::Sharp:
            // (1/Gamma(k/2)) int_0^1 s^{k/2-1} ds = 1 / Gamma(k/2 + 1)
            return 1.0 / std::tgamma(0.5 * k + 1.0);
        case Kind::Exponential:
            return 1.0;   // Gamma(k/2) / Gamma(k/2)
        case Kind::Tabulated: {
            // piecewise-linear f: integrate f(s) s^{k/2-1} in closed form per cell
            double acc = 0.0;
            const double a = 0.5 * k;
            for (std::size_t i = 1; i < table.size(); ++i) {
                double x0 = table[i - 1].first, x1 = table[i].first;
                double f0 = table[i - 1].second, f1 = table[i].second;
                double slope = (f1 - f0) / (x1 - x0);
                double icept = f0 - slope * x0;
                // int (icept + slope s) s^{a-1} ds = icept s^a / a + slope s^{a+1}/(a+1)
                acc += icept * (std::pow(x1, a) - std::pow(x0, a)) / a +
                       slope * (std::pow(x1, a + 1.0) - std::pow(x0, a + 1.0)) / (a + 1.0);
            }
            return acc / std::tgamma(a);
        }
    }
    return 0.0;
}

double CutoffFunction::moment_radial(int k) const {
    return 0.5 * std::tgamma(0.5 * k) * moment(k);
}

double action_direct(const lattice::ShellSpectrum& spec, const CutoffFunction& f,
                     double Lambda) {
    if (Lambda <= 0) throw std::invalid_argument("action_direct: Lambda > 0");
    const double L2 = Lambda * Lambda;
    const double max_q = static_cast<double>(spec.max_norm_sq());

    // the enumerated spectrum must cover f's support / decay at scale Lambda^2
    switch (f.kind) {
        case CutoffFunction::Kind::Sharp:
            if (max_q < L2) throw std::runtime_error("action_direct: spectrum shorter than cutoff support");
            break;
        case CutoffFunction::Kind::Exponential:
            if (max_q / L2 < 35.0)
                throw std::runtime_error("action_direct: exponential tail not covered; enumerate more shells");
            break;
        case CutoffFunction::Kind::Tabulated:
            if (max_q < f.table.back().first * L2)
                throw std::runtime_error("action_direct: spectrum shorter than tabulated support");
            break;
    }

    if (f.kind == CutoffFunction::Kind::Sharp)
        return static_cast<double>(lattice::counting_function(spec, Lambda));
    if (f.kind == CutoffFunction::Kind::Exponential)
        return lattice::heat_trace(spec, 1.0 / L2, 0.0, 1e-10).value;

    double acc = 0.0;
    for (const auto& sh : spec.shells) acc += sh.count * f(static_cast<double>(sh.norm_sq) / L2);
    return acc * spec.spinor_rank;
}

ExpansionCoefficients ExpansionCoefficients::from_heat(const heat::HeatCoefficients& hc, int d,
                                                       double a_d_const) {
    ExpansionCoefficients c;
    c.d = d;
    for (int k = 0; k < d; ++k) c.a[k] = (k % 2 == 0) ? hc.value(k) : 0.0;
    c.a_d_const = a_d_const;
    return c;
}

ExpansionCoefficients ExpansionCoefficients::torus_dirac_from_residues(int d) {
    // zeta_D(s) = 2^m (Z_d(s) + 1): the only pole sits at s = d, so
    // a_k = 1/2 Gamma((d-k)/2) Res_{s=d-k} zeta_D vanishes except at k = 0;
    // the constant term is a_d = dim Ker D + zeta_{D^2}(0) = 2^m + 0
    ExpansionCoefficients c;
    c.d = d;
    const int rank = 1 << (d / 2);
    for (int k = 0; k < d; ++k) c.a[k] = 0.0;
    auto mv = zeta::epstein_zeta(d, cplx(static_cast<double>(d), 0.0));
    c.a[0] = 0.5 * std::tgamma(0.5 * d) * rank * mv.residue.real();
    // dim Ker D = 2^m and zeta_{D^2}(0) = 2^m Z_d(0) over the nonzero spectrum
    c.a_d_const = rank * (1.0 + zeta::epstein_zeta(d, cplx(0.0, 0.0)).finite_part.real());
    return c;
}

std::vector<ExpansionTerm> action_expansion(const ExpansionCoefficients& coeffs,
                                            const CutoffFunction& f, double Lambda) {
    std::vector<ExpansionTerm> terms;
    for (int k = coeffs.d; k >= 1; --k) {
        auto it = coeffs.a.find(coeffs.d - k);
        double adk = (it != coeffs.a.end()) ? it->second : 0.0;
        terms.push_back({k, f.moment(k) * std::pow(Lambda, k) * adk});
    }
    terms.push_back({0, f.at_zero() * coeffs.a_d_const});
    return terms;
}

std::vector<ComparisonRow> expansion_vs_direct(const lattice::ShellSpectrum& spec,
                                               const ExpansionCoefficients& coeffs,
                                               const CutoffFunction& f,
                                               const std::vector<double>& lambda_ladder) {
    std::vector<ComparisonRow> rows;
    for (double L : lambda_ladder) {
        double direct = action_direct(spec, f, L);
        double expansion = 0.0;
        for (const auto& t : action_expansion(coeffs, f, L)) expansion += t.value;
        double gap = std::abs(direct - expansion);
        rows.push_back({L, direct, expansion, gap, gap / (std::abs(direct) + 1e-300)});
    }
    return rows;
}

} // namespace specgeo::action
