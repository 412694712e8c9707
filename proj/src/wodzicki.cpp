#include "specgeo/wodzicki.hpp"

#include "specgeo/dixmier.hpp"
#include "specgeo/parallel.hpp"
#include "specgeo/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace specgeo::wres {

namespace {

constexpr double kPi = std::numbers::pi;

// integral of f over S^{d-1} with product-angle rules at refinement level
// `level` (node counts double per level)
std::complex<double> sphere_integral(
    int d, int level,
    const std::function<std::complex<double>(const std::vector<double>&)>& f) {
    const int n = 16 << level;
    std::complex<double> acc = 0.0;
    if (d == 2) {
        // trapezoid on the circle: spectrally accurate for smooth integrands
        for (int i = 0; i < n; ++i) {
            double a = 2.0 * kPi * i / n;
            acc += f({std::cos(a), std::sin(a)});
        }
        return acc * (2.0 * kPi / n);
    }
    if (d == 3) {
        const auto& gl = quad::gauss_legendre(n);
        return par::parallel_reduce<std::complex<double>>(
            n,
            [&](long i, std::complex<double>& local) {
                double u = gl.x[i];   // cos(theta)
                double su = std::sqrt(1.0 - u * u);
                std::complex<double> ring = 0.0;
                for (int j = 0; j < 2 * n; ++j) {
                    double a = 2.0 * kPi * j / (2 * n);
                    ring += f({su * std::cos(a), su * std::sin(a), u});
                }
                local += gl.w[i] * ring * (2.0 * kPi / (2 * n));
            },
            [](std::complex<double>& t, const std::complex<double>& p) { t += p; });
    }
    if (d == 4) {
        // (chi, theta, phi) with measure sin^2(chi) sin(theta)
        const auto& gl = quad::gauss_legendre(n);
        return par::parallel_reduce<std::complex<double>>(
            n,
            [&](long i, std::complex<double>& local) {
                double chi = 0.5 * kPi * (gl.x[i] + 1.0);
                double wchi = 0.5 * kPi * gl.w[i] * std::sin(chi) * std::sin(chi);
                for (int j = 0; j < n; ++j) {
                    double u = gl.x[j];   // cos(theta)
                    double su = std::sqrt(1.0 - u * u);
                    std::complex<double> ring = 0.0;
                    for (int k = 0; k < 2 * n; ++k) {
                        double a = 2.0 * kPi * k / (2 * n);
                        ring += f({std::sin(chi) * su * std::cos(a),
                                   std::sin(chi) * su * std::sin(a), std::sin(chi) * u,
                                   std::cos(chi)});
                    }
                    local += wchi * gl.w[j] * ring * (2.0 * kPi / (2 * n));
                }
            },
            [](std::complex<double>& t, const std::complex<double>& p) { t += p; });
    }
    throw std::invalid_argument("sphere_integral: d in {2, 3, 4}");
}

} // namespace

SymbolFunction SymbolFunction::laplacian_resolvent(int d) {
    SymbolFunction s;
    s.dimension = d;
    s.fiber_rank = 1;
    s.x_domain_volume = std::pow(2.0 * kPi, d);
    s.evaluate = [](const std::vector<double>&, const std::vector<double>&) {
        // principal symbol of (1+Delta)^{-d/2} restricted to |xi| = 1
        return Eigen::MatrixXcd::Identity(1, 1).eval();
    };
    return s;
}

SymbolFunction SymbolFunction::monomial(int d, const std::vector<int>& p) {
    if (static_cast<int>(p.size()) != d)
        throw std::invalid_argument("SymbolFunction::monomial: p length must equal d");
    SymbolFunction s;
    s.dimension = d;
    s.fiber_rank = 1;
    s.x_domain_volume = std::pow(2.0 * kPi, d);
    s.evaluate = [p](const std::vector<double>&, const std::vector<double>& xi) {
        double v = 1.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (int k = 0; k < p[i]; ++k) v *= xi[i];
        return (v * Eigen::MatrixXcd::Identity(1, 1)).eval();
    };
    return s;
}

std::complex<double> local_density(const SymbolFunction& sym, const std::vector<double>& x,
                                   double rel_tol) {
    if (sym.dimension < 2 || sym.dimension > 4)
        throw std::invalid_argument("local_density: d in {2, 3, 4}");
    auto trace_at = [&](const std::vector<double>& xi) {
        return sym.evaluate(x, xi).trace();
    };
    std::complex<double> prev = sphere_integral(sym.dimension, 0, trace_at);
    for (int level = 1; level <= 4; ++level) {
        std::complex<double> cur = sphere_integral(sym.dimension, level, trace_at);
        if (std::abs(cur - prev) <= rel_tol * (1.0 + std::abs(cur)))
            return cur * std::pow(2.0 * kPi, -sym.dimension);
        prev = cur;
    }
    throw std::runtime_error("local_density: sphere quadrature did not converge");
}

std::complex<double> wres(const SymbolFunction& sym, double rel_tol) {
    // flat constant-coefficient symbols: c_P is x-independent
    std::vector<double> origin(sym.dimension, 0.0);
    return local_density(sym, origin, rel_tol) * sym.x_domain_volume;
}

ConnesCheck connes_trace_check(int d, int rank) {
    if (d != 2 && d != 4) throw std::invalid_argument("connes_trace_check: d in {2, 4}");
    SymbolFunction sym = SymbolFunction::laplacian_resolvent(d);
    if (rank != 1) {
        sym.fiber_rank = rank;
        sym.evaluate = [rank](const std::vector<double>&, const std::vector<double>&) {
            return Eigen::MatrixXcd::Identity(rank, rank).eval();
        };
    }
    ConnesCheck out;
    out.wres_over_d = wres(sym).real() / d;
    auto est = dix::dixmier_estimate(d, 100000);
    out.dixmier = est.zeta_residue * rank;
    return out;
}

double homogeneity_defect(
    const SymbolFunction& sym,
    const std::function<Eigen::MatrixXcd(const std::vector<double>&, const std::vector<double>&)>&
        unnormalized_evaluate,
    int samples, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> origin(sym.dimension, 0.0);
    double worst = 0.0;
    const double scale = std::pow(2.0, -sym.dimension);
    for (int s = 0; s < samples; ++s) {
        std::vector<double> xi(sym.dimension);
        double norm = 0.0;
        for (auto& v : xi) {
            v = gauss(rng);
            norm += v * v;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue;
        std::vector<double> unit = xi, twice = xi;
        for (int i = 0; i < sym.dimension; ++i) {
            unit[i] /= norm;
            twice[i] = 2.0 * unit[i];
        }
        Eigen::MatrixXcd at1 = unnormalized_evaluate(origin, unit);
        Eigen::MatrixXcd at2 = unnormalized_evaluate(origin, twice);
        worst = std::max(worst, (at2 - scale * at1).cwiseAbs().maxCoeff());
    }
    return worst;
}

} // namespace specgeo::wres
