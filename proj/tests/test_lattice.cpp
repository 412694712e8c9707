// Shell enumeration against an independent brute-force counter, Weyl-law
// behavior of the counting function, and the heat-trace identities.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specgeo/lattice.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

using namespace specgeo;

namespace {

// dumb recursive enumeration, deliberately unlike the pruned scan
std::map<std::int64_t, std::int64_t> brute_force_shells(int n, std::int64_t max_q) {
    std::map<std::int64_t, std::int64_t> counts;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(max_q))) + 2;
    std::vector<std::int64_t> k(n, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
            std::int64_t q = 0;
            for (auto v : k) q += v * v;
            if (q <= max_q) ++counts[q];
            return;
        }
        for (std::int64_t v = -r; v <= r; ++v) {
            k[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    return counts;
}

} // namespace

TEST_CASE("spec'd shell examples") {
    auto s1 = lattice::enumerate_shells(1, 4);
    REQUIRE(s1.shells.size() == 3);
    CHECK(s1.shells[0].norm_sq == 0);
    CHECK(s1.shells[0].count == 1);
    CHECK(s1.shells[1].norm_sq == 1);
    CHECK(s1.shells[1].count == 2);
    CHECK(s1.shells[2].norm_sq == 4);
    CHECK(s1.shells[2].count == 2);

    auto s2 = lattice::enumerate_shells(2, 2);
    REQUIRE(s2.shells.size() == 3);
    CHECK(s2.shells[1].count == 4);
    CHECK(s2.shells[2].count == 4);

    auto s4 = lattice::enumerate_shells(4, 1);
    REQUIRE(s4.shells.size() == 2);
    CHECK(s4.shells[1].count == 8);

    CHECK_THROWS_AS(lattice::enumerate_shells(0, 4), std::invalid_argument);
}

TEST_CASE("shell counts equal brute force for n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        std::int64_t max_q = (n <= 2) ? 400 : 60;
        auto spec = lattice::enumerate_shells(n, max_q);
        auto brute = brute_force_shells(n, max_q);
        REQUIRE(spec.shells.size() == brute.size());
        for (const auto& sh : spec.shells) {
            REQUIRE(brute.count(sh.norm_sq) == 1);
            CHECK(brute[sh.norm_sq] == sh.count);
        }
        // invariants: start at zero shell, strictly increasing
        CHECK(spec.shells.front().norm_sq == 0);
        CHECK(spec.shells.front().count == 1);
        for (std::size_t i = 1; i < spec.shells.size(); ++i)
            CHECK(spec.shells[i].norm_sq > spec.shells[i - 1].norm_sq);
    }
}

TEST_CASE("counting function: kernel, small lambda, Weyl regime") {
    auto dirac2 = lattice::enumerate_shells(2, 40000, true);
    CHECK(dirac2.spinor_rank == 2);
    CHECK(lattice::counting_function(dirac2, 0.0) == 2);      // kernel only
    CHECK(lattice::counting_function(dirac2, 1.0) == 10);     // 2 (1 + 4)
    double ratio = static_cast<double>(lattice::counting_function(dirac2, 200.0)) / 4.0e4;
    CHECK(ratio > 0.98 * 2.0 * std::numbers::pi);
    CHECK(ratio < 1.02 * 2.0 * std::numbers::pi);
    CHECK_THROWS_AS(lattice::counting_function(dirac2, 1000.0), std::out_of_range);
}

TEST_CASE("heat trace values and invariants") {
    // d=1 theta value
    auto s1 = lattice::enumerate_shells(1, 100);
    double theta1 = lattice::heat_trace(s1, 1.0).value;
    double direct = 1.0;
    for (int k = 1; k < 20; ++k) direct += 2.0 * std::exp(-1.0 * k * k);
    CHECK(theta1 == doctest::Approx(direct).epsilon(1e-14));
    CHECK(theta1 == doctest::Approx(1.77264).epsilon(1e-5));

    // d=2: t * trace -> pi
    auto s2 = lattice::enumerate_shells(2, 5000);
    CHECK(0.01 * lattice::heat_trace(s2, 0.01).value ==
          doctest::Approx(std::numbers::pi).epsilon(1e-10));

    // large t: only the zero mode survives
    CHECK(lattice::heat_trace(s2, 50.0).value == doctest::Approx(1.0).epsilon(1e-12));

    // exact shift identity
    double a = lattice::heat_trace(s2, 0.05, 2.5).value;
    double b = std::exp(-0.05 * 2.5) * lattice::heat_trace(s2, 0.05).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-14));

    // theta-power cross-check for d up to 4
    for (int d = 1; d <= 4; ++d) {
        auto sp = lattice::enumerate_shells(d, d <= 2 ? 3000 : 900);
        double t = d <= 2 ? 0.02 : 0.06;
        CHECK(lattice::heat_trace(sp, t).value ==
              doctest::Approx(lattice::heat_trace_theta_power(d, t)).epsilon(1e-12));
    }

    // |t^{d/2} trace - pi^{d/2}| <= 1e-8 at t = 0.02 for d <= 4
    for (int d = 1; d <= 4; ++d) {
        auto sp = lattice::enumerate_shells(d, d <= 2 ? 3000 : 2200);
        double t = 0.02;
        double v = std::pow(t, 0.5 * d) * lattice::heat_trace(sp, t).value;
        CHECK(std::abs(v - std::pow(std::numbers::pi, 0.5 * d)) <= 1e-8);
    }

    // tail-bound error fires when truncation is insufficient
    auto tiny = lattice::enumerate_shells(2, 25);
    CHECK_THROWS_AS(lattice::heat_trace(tiny, 0.01), std::runtime_error);
}

TEST_CASE("dirac spinor rank follows 2^floor(d/2)") {
    CHECK(lattice::enumerate_shells(1, 4, true).spinor_rank == 1);
    CHECK(lattice::enumerate_shells(2, 4, true).spinor_rank == 2);
    CHECK(lattice::enumerate_shells(3, 4, true).spinor_rank == 2);
    CHECK(lattice::enumerate_shells(4, 4, true).spinor_rank == 4);
}
