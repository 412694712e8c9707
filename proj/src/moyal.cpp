#include "specgeo/moyal.hpp"

#include "specgeo/parallel.hpp"
#include "specgeo/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specgeo::moyal {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kRoot2 = std::numbers::sqrt2;
} // namespace

// ---------------------------------------------------------------------------
// PolyGauss

cplx PolyGauss::operator()(double x1, double x2) const {
    cplx poly = 0.0;
    for (const auto& [ij, v] : coef)
        poly += v * std::pow(x1, ij.first) * std::pow(x2, ij.second);
    return poly * std::exp(-gauss_c * (x1 * x1 + x2 * x2));
}

PolyGauss PolyGauss::times_poly(int i, int j, cplx s) const {
    PolyGauss out;
    out.gauss_c = gauss_c;
    for (const auto& [ij, v] : coef) out.coef[{ij.first + i, ij.second + j}] += s * v;
    return out;
}

PolyGauss PolyGauss::d1() const {
    PolyGauss out;
    out.gauss_c = gauss_c;
    for (const auto& [ij, v] : coef) {
        if (ij.first > 0) out.coef[{ij.first - 1, ij.second}] += v * static_cast<double>(ij.first);
        out.coef[{ij.first + 1, ij.second}] += -2.0 * gauss_c * v;
    }
    return out;
}

PolyGauss PolyGauss::d2() const {
    PolyGauss out;
    out.gauss_c = gauss_c;
    for (const auto& [ij, v] : coef) {
        if (ij.second > 0) out.coef[{ij.first, ij.second - 1}] += v * static_cast<double>(ij.second);
        out.coef[{ij.first, ij.second + 1}] += -2.0 * gauss_c * v;
    }
    return out;
}

PolyGauss PolyGauss::scaled(cplx s) const {
    PolyGauss out = *this;
    for (auto& [ij, v] : out.coef) v *= s;
    return out;
}

PolyGauss PolyGauss::plus(const PolyGauss& other) const {
    if (std::abs(gauss_c - other.gauss_c) > 1e-14)
        throw std::invalid_argument("PolyGauss::plus: Gaussian widths differ");
    PolyGauss out = *this;
    for (const auto& [ij, v] : other.coef) out.coef[ij] += v;
    return out;
}

namespace {
// int_R x^n e^{-c x^2} dx
double gauss_moment_1d(int n, double c) {
    if (n % 2 == 1) return 0.0;
    // (n-1)!! / (2c)^{n/2} * sqrt(pi/c)
    double v = std::sqrt(kPi / c);
    for (int k = 1; k < n; k += 2) v *= k / (2.0 * c);
    return v;
}
} // namespace

cplx PolyGauss::integral() const {
    cplx acc = 0.0;
    for (const auto& [ij, v] : coef)
        acc += v * gauss_moment_1d(ij.first, gauss_c) * gauss_moment_1d(ij.second, gauss_c);
    return acc;
}

PolyGauss PolyGauss::multiply(const PolyGauss& other) const {
    PolyGauss out;
    out.gauss_c = gauss_c + other.gauss_c;
    for (const auto& [ij, v] : coef)
        for (const auto& [kl, w] : other.coef)
            out.coef[{ij.first + kl.first, ij.second + kl.second}] += v * w;
    return out;
}

PolyGauss PolyGauss::fourier() const {
    // term x1^i x2^j e^{-c|x|^2}  ->  (i d/dtau1)^i (i d/dtau2)^j (pi/c) e^{-|tau|^2/(4c)}
    PolyGauss base;
    base.gauss_c = 1.0 / (4.0 * gauss_c);
    base.coef[{0, 0}] = kPi / gauss_c;
    PolyGauss out;
    out.gauss_c = base.gauss_c;
    for (const auto& [ij, v] : coef) {
        PolyGauss term = base;
        for (int k = 0; k < ij.first; ++k) term = term.d1().scaled(cplx(0.0, 1.0));
        for (int k = 0; k < ij.second; ++k) term = term.d2().scaled(cplx(0.0, 1.0));
        out = out.plus(term.scaled(v));
    }
    return out;
}

int PolyGauss::degree() const {
    int d = 0;
    for (const auto& [ij, v] : coef) d = std::max(d, ij.first + ij.second);
    return d;
}

// ---------------------------------------------------------------------------
// oscillator basis via the exact star-by-linear rules

OscillatorBasis::OscillatorBasis(double theta, int max_index)
    : theta_(theta), max_(max_index) {
    if (theta <= 0) throw std::invalid_argument("OscillatorBasis: theta > 0");
    if (max_index < 0 || max_index > 24)
        throw std::invalid_argument("OscillatorBasis: max_index in 0..24");
    table_.resize((max_ + 1) * (max_ + 1));

    PolyGauss f00;
    f00.gauss_c = 1.0 / theta;
    f00.coef[{0, 0}] = 2.0;
    table_[0] = f00;

    auto dplus = [](const PolyGauss& F) {   // (d1 + i d2)/sqrt(2)
        return F.d1().plus(F.d2().scaled(cplx(0.0, 1.0))).scaled(1.0 / kRoot2);
    };
    auto dminus = [](const PolyGauss& F) {   // (d1 - i d2)/sqrt(2)
        return F.d1().plus(F.d2().scaled(cplx(0.0, -1.0))).scaled(1.0 / kRoot2);
    };
    auto a_poly = [](const PolyGauss& F) {   // multiply by a = (x1 + i x2)/sqrt(2)
        return F.times_poly(1, 0, 1.0 / kRoot2).plus(F.times_poly(0, 1, cplx(0.0, 1.0 / kRoot2)));
    };
    auto astar_poly = [](const PolyGauss& F) {
        return F.times_poly(1, 0, 1.0 / kRoot2).plus(F.times_poly(0, 1, cplx(0.0, -1.0 / kRoot2)));
    };

    // left column: f_{m+1,0} = (theta (m+1))^{-1/2} a^* star f_{m0}
    for (int m = 1; m <= max_; ++m) {
        const PolyGauss& prev = table_[(m - 1) * (max_ + 1)];
        PolyGauss astar_star = astar_poly(prev).plus(dminus(prev).scaled(-0.5 * theta));
        table_[m * (max_ + 1)] = astar_star.scaled(1.0 / std::sqrt(theta * m));
    }
    // rows: f_{m,n+1} = (theta (n+1))^{-1/2} f_{mn} star a
    for (int m = 0; m <= max_; ++m)
        for (int n = 1; n <= max_; ++n) {
            const PolyGauss& prev = table_[m * (max_ + 1) + (n - 1)];
            PolyGauss star_a = a_poly(prev).plus(dplus(prev).scaled(-0.5 * theta));
            table_[m * (max_ + 1) + n] = star_a.scaled(1.0 / std::sqrt(theta * n));
        }
}

const PolyGauss& OscillatorBasis::f(int m, int n) const {
    if (m < 0 || n < 0 || m > max_ || n > max_)
        throw std::out_of_range("OscillatorBasis: index out of range");
    return table_[m * (max_ + 1) + n];
}

// ---------------------------------------------------------------------------
// pointwise star product oracle

cplx star_pointwise(const PolyGauss& f, const PolyGauss& g, double theta, double x1, double x2,
                    int nodes) {
    // two equivalent single-FT forms of the twisted product:
    //   (f*g)(x) = (2 pi)^{-2} int fhat(t) g(x + (theta/2) S t) e^{i x.t} dt
    //            = (2 pi)^{-2} int ghat(t) f(x - (theta/2) S t) e^{i x.t} dt
    // a purely polynomial factor (gauss_c == 0) has no function-space FT, so
    // transform the other one
    const bool use_f_hat = f.gauss_c > 0.0;
    if (!use_f_hat && g.gauss_c <= 0.0)
        throw std::invalid_argument("star_pointwise: need one Gaussian-decay factor");
    const PolyGauss hat = use_f_hat ? f.fourier() : g.fourier();
    const PolyGauss& plain = use_f_hat ? g : f;
    const double shift_sign = use_f_hat ? +0.5 * theta : -0.5 * theta;

    // the FT factor carries e^{-|t|^2/(4c)}, the shifted plain factor carries
    // e^{-c_p (theta/2)^2 |t|^2} centered at t_bar = -+(c_p theta/2 alpha)(x2, -x1)
    const double alpha = hat.gauss_c + plain.gauss_c * 0.25 * theta * theta;
    const double tb1 = (use_f_hat ? 1.0 : -1.0) * plain.gauss_c * theta * x2 / (2.0 * alpha);
    const double tb2 = (use_f_hat ? -1.0 : 1.0) * plain.gauss_c * theta * x1 / (2.0 * alpha);

    const auto& gh = quad::gauss_hermite(nodes);
    const double sigma = 1.0 / std::sqrt(alpha);
    cplx acc = 0.0;
    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < nodes; ++j) {
            double t1 = tb1 + sigma * gh.x[i];
            double t2 = tb2 + sigma * gh.x[j];
            double u2 = gh.x[i] * gh.x[i] + gh.x[j] * gh.x[j];
            cplx hv = hat(t1, t2);
            // S t = (t2, -t1)
            cplx pv = plain(x1 + shift_sign * t2, x2 - shift_sign * t1);
            cplx phase = std::exp(cplx(0.0, x1 * t1 + x2 * t2));
            acc += gh.w[i] * gh.w[j] * hv * pv * phase * std::exp(u2);
        }
    return acc * sigma * sigma / (4.0 * kPi * kPi);
}

// ---------------------------------------------------------------------------
// coefficient matrices

MoyalMatrix MoyalMatrix::zero(int N, double theta, int cutoff) {
    if (N != 1 && N != 2) throw std::invalid_argument("MoyalMatrix: N in {1, 2}");
    if (theta <= 0) throw std::invalid_argument("MoyalMatrix: theta > 0");
    if (cutoff < 1) throw std::invalid_argument("MoyalMatrix: cutoff >= 1");
    MoyalMatrix m;
    m.N = N;
    m.theta = theta;
    m.cutoff = cutoff;
    int dim = 1;
    for (int i = 0; i < N; ++i) dim *= (cutoff + 1);
    m.c = Eigen::MatrixXcd::Zero(dim, dim);
    return m;
}

MoyalMatrix MoyalMatrix::basis_element(int N, double theta, int cutoff, int m_flat, int n_flat) {
    MoyalMatrix m = zero(N, theta, cutoff);
    m.c(m_flat, n_flat) = 1.0;
    return m;
}

MoyalMatrix MoyalMatrix::adjoint() const {
    MoyalMatrix out = *this;
    out.c = c.adjoint().eval();
    return out;
}

double MoyalMatrix::l2_norm() const {
    return std::pow(2.0 * kPi * theta, 0.5 * N) * c.norm();
}

cplx MoyalMatrix::integral() const {
    return std::pow(2.0 * kPi * theta, N) * c.trace();
}

bool MoyalMatrix::compatible(const MoyalMatrix& other) const {
    return N == other.N && theta == other.theta && cutoff == other.cutoff;
}

namespace {
double boundary_fraction(const MoyalMatrix& m) {
    // mass on coefficients with any oscillator index at the cutoff
    const int K = m.cutoff;
    auto touches = [&](int flat) {
        for (int i = 0; i < m.N; ++i) {
            if (flat % (K + 1) == K) return true;
            flat /= (K + 1);
        }
        return false;
    };
    double total = m.c.squaredNorm(), boundary = 0.0;
    if (total == 0.0) return 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int s = 0; s < m.dim(); ++s)
            if (touches(r) || touches(s)) boundary += std::norm(m.c(r, s));
    return boundary / total;
}
} // namespace

StarResult star(const MoyalMatrix& f, const MoyalMatrix& g) {
    if (!f.compatible(g)) throw std::invalid_argument("star: mismatched matrices");
    StarResult out{f, 0.0};
    out.product.c = (f.c * g.c).eval();
    out.boundary_mass = std::max(boundary_fraction(f), boundary_fraction(g));
    return out;
}

cplx moyal_trace_pairing(const MoyalMatrix& f, const MoyalMatrix& g) {
    if (!f.compatible(g)) throw std::invalid_argument("moyal_trace_pairing: mismatched matrices");
    return std::pow(2.0, f.N) * (f.c * g.c).trace();
}

NormBound left_mult_norm_bound(const MoyalMatrix& f) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f.c);
    return {svd.singularValues()(0), f.c.norm()};
}

HsCheck hs_product_norm(const MoyalMatrix& f, const std::function<double(double)>& g_radial,
                        double, int nodes) {
    if (f.N != 1) throw std::invalid_argument("hs_product_norm: N = 1 only");
    const double theta = f.theta;
    OscillatorBasis basis(theta, f.cutoff);

    // collapse the coefficient combination into one polynomial-Gaussian
    PolyGauss fsum;
    fsum.gauss_c = 1.0 / theta;
    for (int m = 0; m <= f.cutoff; ++m)
        for (int n = 0; n <= f.cutoff; ++n)
            if (f.c(m, n) != cplx(0.0)) fsum = fsum.plus(basis.f(m, n).scaled(f.c(m, n)));

    // ||g||_2^2 = 2 pi int g(r)^2 r dr and the xi-support radius
    double Xi = 1.0;
    while (Xi < 14.0 && std::abs(g_radial(Xi)) > 1e-10) Xi += 0.5;
    double g_l2_sq = 2.0 * kPi *
                     quad::integrate([&](double r) { return g_radial(r) * g_radial(r) * r; },
                                     0.0, Xi, 24, 16);

    const double Lx = std::sqrt(theta) * 5.0 + 0.5 * theta * Xi;
    const double Lw = 9.0;
    const int nx = 2 * nodes, nw = 2 * nodes, nxi = 3 * nodes;

    const auto& gl = quad::gauss_legendre(nx);
    const auto& glw = quad::gauss_legendre(nw);
    const auto& glxi = quad::gauss_legendre(nxi);

    std::vector<double> xg(nx), xwt(nx), wg(nw), wwt(nw), xig(nxi), xiwt(nxi);
    for (int i = 0; i < nx; ++i) {
        xg[i] = Lx * gl.x[i];
        xwt[i] = Lx * gl.w[i];
    }
    for (int i = 0; i < nw; ++i) {
        wg[i] = Lw * glw.x[i];
        wwt[i] = Lw * glw.w[i];
    }
    for (int i = 0; i < nxi; ++i) {
        xig[i] = Xi * glxi.x[i];
        xiwt[i] = Xi * glxi.w[i];
    }
    std::vector<double> gtab(nxi * nxi);
    for (int a = 0; a < nxi; ++a)
        for (int b = 0; b < nxi; ++b)
            gtab[a * nxi + b] = g_radial(std::hypot(xig[a], xig[b]));
    std::vector<cplx> phase_w(nxi * nw);
    for (int a = 0; a < nxi; ++a)
        for (int jw = 0; jw < nw; ++jw)
            phase_w[a * nw + jw] = std::exp(cplx(0.0, xig[a] * wg[jw]));

    // lhs^2 = int |Ktilde(x, w)|^2 dx dw with
    // Ktilde = (2 pi)^{-2} int f(x - theta/2 S xi) g(|xi|) e^{i xi . w} d xi
    double lhs_sq = par::parallel_reduce<double>(
        nx,
        [&](long ix, double& local_total) {
            std::vector<cplx> A(nxi * nxi), B(nxi * nw);
            for (int jx = 0; jx < nx; ++jx) {
                double x1 = xg[ix], x2 = xg[jx];
                for (int a = 0; a < nxi; ++a)
                    for (int b = 0; b < nxi; ++b) {
                        // S xi = (xi2, -xi1)
                        A[a * nxi + b] = xiwt[a] * xiwt[b] * gtab[a * nxi + b] *
                                         fsum(x1 - 0.5 * theta * xig[b],
                                              x2 + 0.5 * theta * xig[a]);
                    }
                for (int a = 0; a < nxi; ++a)
                    for (int jw = 0; jw < nw; ++jw) {
                        cplx s = 0.0;
                        for (int b = 0; b < nxi; ++b)
                            s += A[a * nxi + b] * phase_w[b * nw + jw];
                        B[a * nw + jw] = s;
                    }
                double local = 0.0;
                for (int iw = 0; iw < nw; ++iw)
                    for (int jw = 0; jw < nw; ++jw) {
                        cplx k = 0.0;
                        for (int a = 0; a < nxi; ++a)
                            k += B[a * nw + jw] * phase_w[a * nw + iw];
                        local += wwt[iw] * wwt[jw] * std::norm(k);
                    }
                local_total += xwt[ix] * xwt[jx] * local;
            }
        },
        [](double& t, const double& p) { t += p; }, static_cast<int>(nx));
    lhs_sq /= std::pow(2.0 * kPi, 4);

    HsCheck out;
    out.lhs = std::sqrt(lhs_sq);
    out.rhs = (1.0 / (2.0 * kPi)) * f.l2_norm() * std::sqrt(g_l2_sq);
    return out;
}

DixmierMoyal moyal_dixmier(const MoyalMatrix& f, double epsilon) {
    if (epsilon <= 0) throw std::invalid_argument("moyal_dixmier: epsilon > 0");
    const int N = f.N;
    const double integral_f = f.integral().real();

    // (s-1) Tr[L_f (-Delta + eps^2)^{-Ns}] 2^N with the closed-form momentum
    // integral; evaluated near s = 1 and extrapolated to the limit
    auto h = [&](double s) {
        double mom = std::pow(kPi, N) * std::tgamma(N * (s - 1.0)) /
                     (std::tgamma(N * s) * std::pow(epsilon, 2.0 * N * (s - 1.0)));
        return (s - 1.0) * std::pow(2.0, N) * std::pow(2.0 * kPi, -2.0 * N) * integral_f * mom;
    };
    // Neville extrapolation of the three-point ladder to s = 1
    double s0 = 1.01, s1 = 1.005, s2 = 1.0025;
    double h0 = h(s0), h1 = h(s1), h2 = h(s2);
    double p01 = h1 + (h1 - h0) * (1.0 - s1) / (s1 - s0);
    double p12 = h2 + (h2 - h1) * (1.0 - s2) / (s2 - s1);
    double p012 = p12 + (p12 - p01) * (1.0 - s2) / (s2 - s0);

    DixmierMoyal out;
    out.limit_estimate = p012;
    out.paper_value = integral_f / (std::tgamma(N + 1.0) * std::pow(2.0 * kPi, N));
    return out;
}

} // namespace specgeo::moyal
