// Lattice zeta functions over Z^n with the identity quadratic form:
// Epstein Z_n(s), homogeneous-monomial zetas zeta_p(s) = sum' k^p |k|^{-s},
// and the one-dimensional twisted series sum' e^{2 pi i k a} |k|^{-s}.
//
// Continuation is done by the incomplete theta (Mellin) split: the weighted
// theta sum has its small-t Gaussian-moment part subtracted and integrated
// in closed form, which carries the unique simple pole; the remainders are
// entire and integrate with exponentially convergent quadrature.
#pragma once

#include "specgeo/gammafn.hpp"

#include <utility>
#include <vector>

namespace specgeo::zeta {

struct MeroValue {
    cplx at_point{};         // where the function was evaluated
    cplx finite_part{};      // value (pole_order 0) or regularized value at a pole
    int pole_order = 0;      // 0 or 1; everything in scope has simple poles
    cplx residue{};          // meaningful iff pole_order == 1
};

struct PolyExponent {
    std::vector<int> p;
    int degree() const;
    bool any_odd() const;
};

// Z_n(s) = sum'_{k in Z^n} |k|^{-s}; simple pole at s = n
MeroValue epstein_zeta(int n, cplx s);

// sum'_{k in Z^n} k^p |k|^{-s}; identically zero when some p_i is odd,
// otherwise a unique simple pole at s = n + |p|_1
MeroValue poly_zeta(int n, const PolyExponent& p, cplx s);

// closed-form residue of Z_n at s = n: 2 pi^{n/2} / Gamma(n/2)
double epstein_residue(int n);

// int_{S^{n-1}} u^p dS, closed form; zero when some p_i is odd
double sphere_monomial_integral(int n, const PolyExponent& p);

// f_a(s) = sum'_{k in Z} e^{2 pi i k a} |k|^{-s}; entire for a not integer,
// delegates to Z_1 otherwise
MeroValue twisted_zeta_1d(double a, cplx s);

// residue of Z_{d1+d2} at d1+d2 versus the product formula
// (1/2) Gamma(d1/2) Gamma(d2/2) / Gamma((d1+d2)/2) * Res Z_{d1} * Res Z_{d2}
std::pair<double, double> product_residue_check(int d1, int d2);

} // namespace specgeo::zeta
