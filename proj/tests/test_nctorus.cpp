// Weyl algebra identities, derivations and field strength against symbolic
// expansion, gauge covariance, and the module's central check: the constant
// action term from the closed-form integrals against the independent
// curvature construction, over golden-ratio deformation blocks.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specgeo/nctorus.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace specgeo;
using nct::LatticeKey;
using nct::TorusElement;

namespace {

constexpr double kPi = std::numbers::pi;
const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

Eigen::Matrix4d golden_theta(int n) {
    Eigen::Matrix4d th = Eigen::Matrix4d::Zero();
    th(0, 1) = 2.0 * kPi * kPhi;
    th(1, 0) = -2.0 * kPi * kPhi;
    if (n == 4) {
        th(2, 3) = 2.0 * kPi * kPhi;
        th(3, 2) = -2.0 * kPi * kPhi;
    }
    return th;
}

TorusElement random_element(int n, const Eigen::Matrix4d& th, std::mt19937& rng, int modes,
                            int box) {
    std::uniform_int_distribution<int> coord(-box, box);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    TorusElement a;
    a.n = n;
    a.theta = th;
    for (int m = 0; m < modes; ++m) {
        LatticeKey k{0, 0, 0, 0};
        for (int i = 0; i < n; ++i) k[i] = coord(rng);
        a.coeffs[k] += nct::cplx(amp(rng), amp(rng));
    }
    return a;
}

// anti-hermitian component: A = B - B^*
TorusElement random_antihermitian(int n, const Eigen::Matrix4d& th, std::mt19937& rng,
                                  int modes, int box) {
    TorusElement b = random_element(n, th, rng, modes, box);
    return nct::add(b, b.adjoint(), -1.0);
}

nct::OneForm random_one_form(int n, const Eigen::Matrix4d& th, std::mt19937& rng, int modes,
                             int box) {
    nct::OneForm A;
    A.n = n;
    A.theta = th;
    for (int alpha = 0; alpha < n; ++alpha)
        A.components.push_back(random_antihermitian(n, th, rng, modes, box));
    A.validate();
    return A;
}

double max_coeff_diff(const TorusElement& a, const TorusElement& b) {
    TorusElement d = nct::add(a, b, -1.0);
    double worst = 0.0;
    for (const auto& [k, v] : d.coeffs) worst = std::max(worst, std::abs(v));
    return worst;
}

} // namespace

TEST_CASE("Weyl relations: unitarity, commutator, commutative limit") {
    auto th = golden_theta(2);
    LatticeKey k{2, -1, 0, 0}, l{1, 3, 0, 0};

    // U_k U_{-k} = U_0
    auto u = TorusElement::weyl(2, th, k);
    auto prod = nct::weyl_mul(u, u.adjoint());
    CHECK(max_coeff_diff(prod, TorusElement::unit(2, th)) <= 1e-15);

    // [U_k, U_l] = -2i sin(k.Theta l / 2) U_{k+l}
    auto ul = TorusElement::weyl(2, th, l);
    auto comm = nct::add(nct::weyl_mul(u, ul), nct::weyl_mul(ul, u), -1.0);
    double pairing = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) pairing += k[i] * th(i, j) * l[j];
    TorusElement want;
    want.n = 2;
    want.theta = th;
    want.coeffs[{3, 2, 0, 0}] = nct::cplx(0.0, -2.0 * std::sin(0.5 * pairing));
    CHECK(max_coeff_diff(comm, want) <= 1e-14);

    // Theta = 0: plain convolution, exact commutativity
    Eigen::Matrix4d zero = Eigen::Matrix4d::Zero();
    std::mt19937 rng(5);
    auto a = random_element(2, zero, rng, 5, 2);
    auto b = random_element(2, zero, rng, 5, 2);
    CHECK(max_coeff_diff(nct::weyl_mul(a, b), nct::weyl_mul(b, a)) <= 1e-15);
}

TEST_CASE("associativity of the phase cocycle on random triples") {
    std::mt19937 rng(11);
    auto th = golden_theta(4);
    for (int rep = 0; rep < 25; ++rep) {
        auto a = random_element(4, th, rng, 4, 2);
        auto b = random_element(4, th, rng, 4, 2);
        auto c = random_element(4, th, rng, 4, 2);
        auto lhs = nct::weyl_mul(nct::weyl_mul(a, b), c);
        auto rhs = nct::weyl_mul(a, nct::weyl_mul(b, c));
        CHECK(max_coeff_diff(lhs, rhs) <= 1e-13);
    }
}

TEST_CASE("trace property tau(ab) = tau(ba) exactly") {
    std::mt19937 rng(21);
    auto th = golden_theta(4);
    for (int rep = 0; rep < 25; ++rep) {
        auto a = random_element(4, th, rng, 5, 2);
        auto b = random_element(4, th, rng, 5, 2);
        auto t1 = nct::weyl_mul(a, b).trace();
        auto t2 = nct::weyl_mul(b, a).trace();
        CHECK(std::abs(t1 - t2) <= 1e-14 * (1.0 + std::abs(t1)));
    }
}

TEST_CASE("derivations: eigenvalue rule and Leibniz") {
    auto th = golden_theta(2);
    auto u0 = TorusElement::unit(2, th);
    auto d = nct::derivation(1, u0);
    CHECK(d.trace() == nct::cplx(0.0));

    auto u20 = TorusElement::weyl(2, th, {2, 0, 0, 0});
    auto d1 = nct::derivation(1, u20);
    CHECK(d1.coeffs.at({2, 0, 0, 0}) == nct::cplx(0.0, 2.0));

    std::mt19937 rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = random_element(2, th, rng, 4, 3);
        auto b = random_element(2, th, rng, 4, 3);
        for (int mu = 1; mu <= 2; ++mu) {
            auto lhs = nct::derivation(mu, nct::weyl_mul(a, b));
            auto rhs = nct::add(nct::weyl_mul(nct::derivation(mu, a), b),
                                nct::weyl_mul(a, nct::derivation(mu, b)));
            CHECK(max_coeff_diff(lhs, rhs) <= 1e-13);
        }
    }
    CHECK_THROWS_AS(nct::derivation(3, u0), std::out_of_range);
}

TEST_CASE("field strength: single mode, pure gauge, commutative curl") {
    auto th = golden_theta(2);

    // single mode A_1 = i U_l, A_2 = 0 (anti-hermitian needs the conjugate mode)
    LatticeKey l{1, 2, 0, 0};
    nct::OneForm A;
    A.n = 2;
    A.theta = th;
    TorusElement a1;
    a1.n = 2;
    a1.theta = th;
    a1.coeffs[l] = nct::cplx(0.0, 1.0);
    a1.coeffs[{-1, -2, 0, 0}] = nct::cplx(0.0, 1.0);   // (a*)_k = conj(a_{-k}) = -a_k
    A.components = {a1, TorusElement{2, th, {}}};
    A.validate();
    auto F = nct::field_strength(A);
    // F_12 = -delta_2 A_1 (A_2 = 0, [A_1, A_1] absent): coefficient -i l_2 a_{1,l}
    CHECK(F[0][1].coeffs.at(l) == nct::cplx(2.0, 0.0));   // -i * 2 * i = 2
    CHECK(max_coeff_diff(F[0][1], nct::scale(F[1][0], -1.0)) <= 1e-15);

    // pure gauge: A_alpha = U_k delta_alpha(U_k^*) = -i k_alpha U_0 gives F = 0
    nct::OneForm gauge;
    gauge.n = 2;
    gauge.theta = th;
    for (int alpha = 0; alpha < 2; ++alpha) {
        TorusElement c;
        c.n = 2;
        c.theta = th;
        c.coeffs[{0, 0, 0, 0}] = nct::cplx(0.0, -static_cast<double>(alpha + 1));
        gauge.components.push_back(c);
    }
    auto Fg = nct::field_strength(gauge);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            CHECK(max_coeff_diff(Fg[a][b], TorusElement{2, th, {}}) <= 1e-15);

    // Theta = 0 with linear components: F reduces to the curl
    Eigen::Matrix4d zero = Eigen::Matrix4d::Zero();
    std::mt19937 rng(41);
    nct::OneForm C = random_one_form(2, zero, rng, 3, 2);
    auto Fc = nct::field_strength(C);
    auto curl = nct::add(nct::derivation(1, C.components[1]),
                         nct::derivation(2, C.components[0]), -1.0);
    CHECK(max_coeff_diff(Fc[0][1], curl) <= 1e-13);
}

TEST_CASE("yang-mills density is real and gauge invariant; pure gauge gives zero") {
    std::mt19937 rng(51);
    auto th = golden_theta(4);
    std::uniform_int_distribution<int> coord(-2, 2);
    for (int rep = 0; rep < 50; ++rep) {
        auto A = random_one_form(4, th, rng, 3, 2);
        double ym = nct::yang_mills_density(A);
        CHECK(std::isfinite(ym));
        LatticeKey k{coord(rng), coord(rng), coord(rng), coord(rng)};
        auto Ag = nct::gauge_transform(A, k);
        double ymg = nct::yang_mills_density(Ag);
        CHECK(std::abs(ym - ymg) <= 1e-10 * (1.0 + std::abs(ym)));
    }

    nct::OneForm zero;
    zero.n = 4;
    zero.theta = th;
    for (int i = 0; i < 4; ++i) zero.components.push_back(TorusElement{4, th, {}});
    CHECK(nct::yang_mills_density(zero) == 0.0);
}

TEST_CASE("closed-form integrals: zero one-form and reality") {
    auto th = golden_theta(4);
    nct::OneForm zero;
    zero.n = 4;
    zero.theta = th;
    for (int i = 0; i < 4; ++i) zero.components.push_back(TorusElement{4, th, {}});
    auto P = nct::nc_integral_powers(zero);
    CHECK(P.I2 == 0.0);
    CHECK(P.I3 == 0.0);
    CHECK(P.I4 == 0.0);
    CHECK(nct::zeta_DA_zero(zero) == 0.0);
}

TEST_CASE("two-path identity over 200 random one-forms (n = 4)") {
    std::mt19937 rng(20260810);
    auto th = golden_theta(4);
    for (int rep = 0; rep < 200; ++rep) {
        auto A = random_one_form(4, th, rng, 3, 2);
        double lhs = nct::zeta_DA_zero(A);
        double ym = nct::yang_mills_density(A);
        double c = 4.0 * kPi * kPi / 3.0;
        CHECK(std::abs(lhs + c * ym) <= 1e-10 * (1.0 + std::abs(ym)));
    }
}

TEST_CASE("n = 2: the constant term vanishes identically") {
    std::mt19937 rng(61);
    auto th = golden_theta(2);
    for (int rep = 0; rep < 10; ++rep) {
        auto A = random_one_form(2, th, rng, 4, 2);
        CHECK(nct::zeta_DA_zero(A) == 0.0);
    }
}

TEST_CASE("spectral action terms") {
    auto th2 = golden_theta(2);
    std::mt19937 rng(71);
    auto A2 = random_one_form(2, th2, rng, 3, 2);
    auto f = action::CutoffFunction::exponential();

    auto terms2 = nct::spectral_action_nc(2, A2, f, 7.0);
    REQUIRE(terms2.size() == 3);
    CHECK(terms2[0].power == 2);
    // top coefficient: ncint |D|^{-2} = 2^{m+1} pi / Gamma(1) = 4 pi
    CHECK(nct::nc_integral_top(2) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(terms2[0].value ==
          doctest::Approx(f.moment_radial(2) * 49.0 * 4.0 * kPi).epsilon(1e-12));
    CHECK(terms2[1].value == 0.0);   // odd power
    CHECK(terms2[2].value == 0.0);   // constant term at n = 2

    auto th4 = golden_theta(4);
    auto A4 = random_one_form(4, th4, rng, 3, 2);
    auto terms4 = nct::spectral_action_nc(4, A4, f, 5.0);
    REQUIRE(terms4.size() == 5);
    CHECK(nct::nc_integral_top(4) == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-14));
    CHECK(terms4[0].value ==
          doctest::Approx(f.moment_radial(4) * 625.0 * 8.0 * kPi * kPi).epsilon(1e-12));
    for (int k = 1; k <= 3; ++k) CHECK(terms4[k].value == 0.0);
    // constant term equals f(0) times the closed-form zeta value
    CHECK(terms4[4].value ==
          doctest::Approx(1.0 * nct::zeta_DA_zero(A4)).epsilon(1e-12));
    // ... which is -c times the Yang-Mills density
    double c = 4.0 * kPi * kPi / 3.0;
    CHECK(terms4[4].value ==
          doctest::Approx(-c * nct::yang_mills_density(A4)).epsilon(1e-9));
}

TEST_CASE("series estimator for the quadratic integral (sanity probe)") {
    std::mt19937 rng(81);
    auto th = golden_theta(4);
    auto A = random_one_form(4, th, rng, 2, 1);
    double closed = nct::nc_integral_powers(A).I2;
    double est = nct::i2_series_estimate(A, 20);
    CHECK(std::abs(est - closed) <= 1e-2 * (1.0 + std::abs(closed)));
    MESSAGE("I2 closed ", closed, " series ", est);
}

TEST_CASE("Dirac spectrum is Theta-independent with kernel 2^m") {
    auto s2 = nct::dirac_spectrum_nc(2, 16);
    CHECK(s2.spinor_rank == 2);
    CHECK(lattice::counting_function(s2, 0.0) == 2);
    auto s4 = nct::dirac_spectrum_nc(4, 16);
    CHECK(s4.spinor_rank == 4);
    CHECK(lattice::counting_function(s4, 0.0) == 4);
    auto commutative = lattice::enumerate_shells(4, 16, true);
    REQUIRE(s4.shells.size() == commutative.shells.size());
    for (std::size_t i = 0; i < s4.shells.size(); ++i) {
        CHECK(s4.shells[i].norm_sq == commutative.shells[i].norm_sq);
        CHECK(s4.shells[i].count == commutative.shells[i].count);
    }
}

TEST_CASE("gamma algebra: Clifford relations and trace invariance") {
    for (int d : {2, 4}) {
        auto g = nct::GammaAlgebra::make(d);
        CHECK(g.clifford_defect() <= 1e-14);
        const int dim = 1 << (d / 2);
        // tr(g^a g^b) = 2^{m} delta^{ab}; invariance under unitary conjugation
        std::mt19937 rng(91);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXcd rnd(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) rnd(i, j) = nct::cplx(gauss(rng), gauss(rng));
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(rnd);
        Eigen::MatrixXcd U = qr.householderQ();
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                auto t0 = (g.gamma[a] * g.gamma[b]).trace();
                auto t1 = (U * g.gamma[a] * U.adjoint() * U * g.gamma[b] * U.adjoint()).trace();
                CHECK(std::abs(t0 - t1) <= 1e-12);
                CHECK(std::abs(t0 - (a == b ? static_cast<double>(dim) : 0.0)) <= 1e-13);
            }
    }
}

TEST_CASE("noncommutative integrals are real (imaginary parts below 1e-12)") {
    std::mt19937 rng(101);
    auto th = golden_theta(4);
    for (int rep = 0; rep < 20; ++rep) {
        auto A = random_one_form(4, th, rng, 3, 2);
        // reality is enforced inside the closed forms by taking .real(); verify
        // the dropped imaginary parts really are negligible via the trace form
        auto F = nct::field_strength(A);
        nct::cplx acc = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) acc += nct::weyl_mul(F[a][b], F[a][b]).trace();
        CHECK(std::abs(acc.imag()) <= 1e-12 * (1.0 + std::abs(acc.real())));
    }
}
