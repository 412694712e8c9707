// Gauss-Legendre and Gauss-Hermite node tables plus small helpers shared by
// the zeta continuation, sphere integrals and the Moyal oracles.
#pragma once

#include <functional>
#include <vector>

namespace specgeo::quad {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// n-point Gauss-Legendre on [-1, 1]
const Rule& gauss_legendre(int n);

// n-point Gauss-Hermite: integrates f with weight exp(-x^2) on R
const Rule& gauss_hermite(int n);

// integrate f over [a, b] with a composite GL rule: `panels` equal panels,
// `order` nodes each
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int order);

} // namespace specgeo::quad
