// Wodzicki residue from the order-(-d) homogeneous principal symbol:
// local density c_P(x) = (2 pi)^{-d} int_{S^{d-1}} tr sigma_{-d}(x, xi) dxi
// by product-angle quadrature with dyadic refinement, and
// WRes P = int c_P(x) dx over the x-domain.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

namespace specgeo::wres {

struct SymbolFunction {
    int dimension = 2;      // d in {2, 3, 4}
    int fiber_rank = 1;
    // evaluate(x, xi) with |xi| = 1; callers extend homogeneously of degree -d
    std::function<Eigen::MatrixXcd(const std::vector<double>& x,
                                   const std::vector<double>& xi)>
        evaluate;
    double x_domain_volume = 0.0;   // (2 pi)^d for the torus

    // built-in families
    static SymbolFunction laplacian_resolvent(int d);          // sigma of (1+Delta)^{-d/2}
    static SymbolFunction monomial(int d, const std::vector<int>& p);   // xi^p |xi|^{-d-|p|}
};

// (2 pi)^{-d} int_{S^{d-1}} tr sigma(x, xi) dxi, refined until two dyadic
// levels agree to rel_tol
std::complex<double> local_density(const SymbolFunction& sym, const std::vector<double>& x,
                                   double rel_tol = 1e-9);

// int c_P(x) dx; constant-in-x symbols integrate exactly as c_P * volume
std::complex<double> wres(const SymbolFunction& sym, double rel_tol = 1e-9);

struct ConnesCheck {
    double dixmier;        // zeta-residue Dixmier estimate of (1+Delta)^{-d/2}
    double wres_over_d;    // WRes / d of the matching symbol
};

ConnesCheck connes_trace_check(int d, int rank = 1);

// homogeneity spot-check helper: max |sigma(x, 2 xi) - 2^{-d} sigma(x, xi)|
// over random unit xi (caller contract enforcement)
double homogeneity_defect(const SymbolFunction& sym,
                          const std::function<Eigen::MatrixXcd(const std::vector<double>&,
                                                               const std::vector<double>&)>&
                              unnormalized_evaluate,
                          int samples, unsigned seed);

} // namespace specgeo::wres
