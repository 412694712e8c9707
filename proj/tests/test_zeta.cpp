// Zeta engine against independent oracles: Euler-Maclaurin Riemann zeta,
// truncated direct lattice sums with tail control, sphere quadrature for the
// monomial residues, and the frozen closed-form pole data.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "specgeo/zeta.hpp"

#include <cmath>
#include <functional>
#include <numbers>

using namespace specgeo;
using zeta::PolyExponent;

namespace {

constexpr double kPi = std::numbers::pi;

// direct lattice sum with an integral tail estimate; good to ~tail accuracy
double epstein_direct(int n, double s, int radius, double* tail_bound) {
    double acc = 0.0;
    std::vector<int> k(n, -radius);
    while (true) {
        double q = 0.0;
        for (int v : k) q += static_cast<double>(v) * v;
        if (q > 0.0 && q <= static_cast<double>(radius) * radius)
            acc += std::pow(q, -0.5 * s);
        int i = 0;
        while (i < n && ++k[i] > radius) k[i++] = -radius;
        if (i == n) break;
    }
    const double vol_sphere = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
    *tail_bound = vol_sphere * std::pow(radius, n - s) / (s - n) * 1.5;
    return acc;
}

} // namespace

TEST_CASE("Z_1 equals twice the Riemann zeta (Euler-Maclaurin oracle)") {
    for (double s : {3.0, 4.0, 6.0}) {
        auto mv = zeta::epstein_zeta(1, cplx(s, 0.0));
        CHECK(std::abs(mv.finite_part.real() - 2.0 * oracles::zeta_em(s)) <= 1e-12);
    }
}

TEST_CASE("Epstein special values and pole") {
    for (int n = 1; n <= 4; ++n) {
        auto z0 = zeta::epstein_zeta(n, cplx(0.0, 0.0));
        CHECK(z0.pole_order == 0);
        CHECK(std::abs(z0.finite_part.real() + 1.0) <= 1e-10);
        CHECK(std::abs(z0.finite_part.imag()) <= 1e-12);

        auto zp = zeta::epstein_zeta(n, cplx(static_cast<double>(n), 0.0));
        CHECK(zp.pole_order == 1);
        double want = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
        CHECK(std::abs(zp.residue.real() - want) <= 1e-10);
    }
    CHECK_THROWS_AS(zeta::epstein_zeta(5, cplx(1.0, 0.0)), std::invalid_argument);
}

TEST_CASE("Z_2(4) against the direct lattice sum and the Catalan closed form") {
    double tail = 0.0;
    double direct = epstein_direct(2, 4.0, 900, &tail);
    auto mv = zeta::epstein_zeta(2, cplx(4.0, 0.0));
    CHECK(std::abs(mv.finite_part.real() - direct) <= tail + 1e-10);
    // 4 zeta(2) beta(2), beta(2) the Catalan constant
    const double catalan = 0.91596559417721901505;
    CHECK(mv.finite_part.real() ==
          doctest::Approx(4.0 * (kPi * kPi / 6.0) * catalan).epsilon(1e-12));
}

TEST_CASE("functional equation on a grid of points") {
    for (int n = 1; n <= 4; ++n) {
        int checked = 0;
        for (int i = 0; i < 20; ++i) {
            cplx s(0.30 * i - 2.2, (i % 3) * 0.8 - 0.8);
            cplx ns = cplx(static_cast<double>(n), 0.0) - s;
            if (std::abs(s) < 0.2 || std::abs(s - cplx(n, 0)) < 0.2) continue;
            auto a = zeta::epstein_zeta(n, s);
            auto b = zeta::epstein_zeta(n, ns);
            if (a.pole_order || b.pole_order) continue;
            cplx lhs = std::pow(kPi, -0.5 * s) * gamma_c(0.5 * s) * a.finite_part;
            cplx rhs = std::pow(kPi, -0.5 * ns) * gamma_c(0.5 * ns) * b.finite_part;
            CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
            ++checked;
        }
        CHECK(checked >= 15);
    }
}

TEST_CASE("odd exponents vanish identically") {
    auto mv = zeta::poly_zeta(2, PolyExponent{{1, 1}}, cplx(3.7, 0.4));
    CHECK(mv.finite_part == cplx(0.0));
    CHECK(mv.pole_order == 0);
    auto mv2 = zeta::poly_zeta(3, PolyExponent{{2, 1, 0}}, cplx(5.0, 0.0));
    CHECK(mv2.finite_part == cplx(0.0));
}

TEST_CASE("monomial residues match the closed form and sphere quadrature") {
    for (int n = 2; n <= 4; ++n) {
        std::vector<std::vector<int>> exps;
        std::vector<int> cur;
        oracles::even_exponents(n, 4, cur, exps);
        for (const auto& p : exps) {
            PolyExponent pe{p};
            int s0 = n + pe.degree();
            auto mv = zeta::poly_zeta(n, pe, cplx(static_cast<double>(s0), 0.0));
            REQUIRE(mv.pole_order == 1);
            double closed = zeta::sphere_monomial_integral(n, pe);
            CHECK(std::abs(mv.residue.real() - closed) <= 1e-8);
            CHECK(std::abs(mv.residue.real() - oracles::sphere_quad(n, p)) <= 1e-7);
        }
    }
}

TEST_CASE("frozen monomial pole values") {
    auto r20 = zeta::poly_zeta(2, PolyExponent{{2, 0}}, cplx(4.0, 0.0));
    CHECK(r20.residue.real() == doctest::Approx(kPi).epsilon(1e-12));
    auto r2200 = zeta::poly_zeta(4, PolyExponent{{2, 2, 0, 0}}, cplx(8.0, 0.0));
    CHECK(r2200.residue.real() == doctest::Approx(kPi * kPi / 12.0).epsilon(1e-12));
    auto r1100_4 = zeta::poly_zeta(4, PolyExponent{{2, 0, 0, 0}}, cplx(6.0, 0.0));
    CHECK(r1100_4.residue.real() == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("sphere monomial closed forms") {
    CHECK(zeta::sphere_monomial_integral(2, PolyExponent{{0, 0}}) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(zeta::sphere_monomial_integral(2, PolyExponent{{2, 0}}) ==
          doctest::Approx(kPi).epsilon(1e-14));
    CHECK(zeta::sphere_monomial_integral(3, PolyExponent{{2, 0, 0}}) ==
          doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(zeta::sphere_monomial_integral(3, PolyExponent{{1, 0, 0}}) == 0.0);
}

TEST_CASE("monomial symmetry and the k1^2 reduction identity") {
    // permutation invariance
    auto a = zeta::poly_zeta(3, PolyExponent{{2, 0, 0}}, cplx(7.0, 0.0));
    auto b = zeta::poly_zeta(3, PolyExponent{{0, 2, 0}}, cplx(7.0, 0.0));
    CHECK(std::abs(a.finite_part - b.finite_part) <= 1e-12 * (1.0 + std::abs(a.finite_part)));

    // zeta_{(2,0)}(s) = 1/2 Z_2(s-2) for Re s > 4
    for (double s : {5.0, 6.0, 8.5}) {
        auto lhs = zeta::poly_zeta(2, PolyExponent{{2, 0}}, cplx(s, 0.0));
        auto rhs = zeta::epstein_zeta(2, cplx(s - 2.0, 0.0));
        CHECK(std::abs(lhs.finite_part - 0.5 * rhs.finite_part) <= 1e-10);
    }
}

TEST_CASE("twisted zeta: closed-form points and holomorphy proxy") {
    auto half = zeta::twisted_zeta_1d(0.5, cplx(2.0, 0.0));
    CHECK(half.pole_order == 0);
    CHECK(half.finite_part.real() == doctest::Approx(-kPi * kPi / 6.0).epsilon(1e-12));

    auto third = zeta::twisted_zeta_1d(1.0 / 3.0, cplx(2.0, 0.0));
    CHECK(third.finite_part.real() == doctest::Approx(-kPi * kPi / 9.0).epsilon(1e-12));

    // direct accelerated sum oracle at s = 3 (absolutely convergent)
    double direct = 0.0;
    for (int k = 1; k < 4000000; ++k) direct += 2.0 * std::cos(2.0 * kPi * k * 0.2) / std::pow(k, 3);
    auto v = zeta::twisted_zeta_1d(0.2, cplx(3.0, 0.0));
    CHECK(v.finite_part.real() == doctest::Approx(direct).epsilon(1e-9));

    // no pole anywhere near s = 1, and finite at s = 0
    auto near1 = zeta::twisted_zeta_1d(0.2, cplx(1.0, 0.0));
    CHECK(near1.pole_order == 0);
    CHECK(std::isfinite(near1.finite_part.real()));
    auto at0 = zeta::twisted_zeta_1d(0.2, cplx(0.0, 0.0));
    CHECK(at0.pole_order == 0);
    CHECK(at0.finite_part.real() == doctest::Approx(-1.0).epsilon(1e-10));

    // integer a delegates to the Epstein pole report
    auto delegated = zeta::twisted_zeta_1d(1.0, cplx(1.0, 0.0));
    CHECK(delegated.pole_order == 1);
}

TEST_CASE("tensor-product residue identity") {
    auto [l11, r11] = zeta::product_residue_check(1, 1);
    CHECK(l11 == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(std::abs(l11 - r11) <= 1e-10);
    auto [l22, r22] = zeta::product_residue_check(2, 2);
    CHECK(l22 == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-12));
    CHECK(std::abs(l22 - r22) <= 1e-10);
    auto [l13, r13] = zeta::product_residue_check(1, 3);
    CHECK(l13 == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-12));
    CHECK(std::abs(l13 - r13) <= 1e-10);
}
