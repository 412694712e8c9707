// The noncommutative torus with finitely supported Fourier coefficients:
// Weyl elements U_k U_q = e^{-(i/2) k.Theta q} U_{k+q}, derivations
// delta_mu U_k = i k_mu U_k, gauge one-forms, field strength, and the
// closed-form noncommutative integrals behind the spectral-action expansion.
#pragma once

#include "specgeo/lattice.hpp"
#include "specgeo/spectral_action.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <map>
#include <vector>

namespace specgeo::nct {

using cplx = std::complex<double>;
using LatticeKey = std::array<int, 4>;   // coordinates beyond n stay zero

struct TorusElement {
    int n = 2;
    Eigen::Matrix4d theta = Eigen::Matrix4d::Zero();   // top-left n x n block used
    std::map<LatticeKey, cplx> coeffs;

    static TorusElement unit(int n, const Eigen::Matrix4d& theta);
    static TorusElement weyl(int n, const Eigen::Matrix4d& theta, const LatticeKey& k,
                             cplx amplitude = 1.0);

    TorusElement adjoint() const;            // (a*)_k = conj(a_{-k})
    cplx trace() const;                      // tau(a) = a_0
    void prune(double tol = 0.0);            // drop negligible coefficients
    bool same_algebra(const TorusElement& other) const;
};

TorusElement weyl_mul(const TorusElement& a, const TorusElement& b);
TorusElement add(const TorusElement& a, const TorusElement& b, cplx sb = 1.0);
TorusElement scale(const TorusElement& a, cplx s);
TorusElement derivation(int mu, const TorusElement& a);   // mu in 1..n

struct OneForm {
    int n = 2;
    Eigen::Matrix4d theta = Eigen::Matrix4d::Zero();
    std::vector<TorusElement> components;   // A_alpha, anti-hermitian

    void validate(double tol = 1e-12) const;
};

// gauge transform by the unitary U_k: A_alpha -> U_k A_alpha U_k^* + U_k delta_alpha(U_k^*)
OneForm gauge_transform(const OneForm& A, const LatticeKey& k);

// F_{a b} = delta_a A_b - delta_b A_a + [A_a, A_b]
std::vector<std::vector<TorusElement>> field_strength(const OneForm& A);

// tau( sum_{a b} F_{a b} F_{a b} ); real up to roundoff
double yang_mills_density(const OneForm& A);

struct NcIntegralPowers {
    double I2, I3, I4;        // ncint (A D D^{-2})^q for q = 2, 3, 4
    bool diophantine_ok;      // caveat flag wired through by the caller
};

// closed-form evaluation by finite summation over the supports (n = 4)
NcIntegralPowers nc_integral_powers(const OneForm& A, bool diophantine_ok = true);

// zeta_{D_A}(0): n = 2 gives exactly 0; n = 4 gives 2 (I2/2 - I3/3 + I4/4)
double zeta_DA_zero(const OneForm& A);

// truncated-sum estimator of I2 from the defining spectral series, pole-fitted
// on Re s in [1, 3]; a sanity probe with ~1e-2 accuracy
double i2_series_estimate(const OneForm& A, int radius = 20);

// full action expansion of Tr f(D_A/Lambda): top term
// moment_radial(n) Lambda^n ncint|D|^{-n} with ncint|D|^{-n} = 2^{m+1} pi^{n/2}/Gamma(n/2),
// middle and odd terms zero, constant term f(0) zeta_{D_A}(0)
std::vector<action::ExpansionTerm> spectral_action_nc(int n, const OneForm& A,
                                                      const action::CutoffFunction& f,
                                                      double Lambda);

double nc_integral_top(int n);   // ncint |D|^{-n}

// the Dirac spectrum is Theta-independent: the commutative torus one
lattice::ShellSpectrum dirac_spectrum_nc(int n, std::int64_t max_norm_sq);

struct GammaAlgebra {
    int d;
    std::vector<Eigen::MatrixXcd> gamma;   // hermitian, {g^mu, g^nu} = 2 delta
    Eigen::MatrixXcd chirality;

    static GammaAlgebra make(int d);       // d in {2, 4}
    double clifford_defect() const;        // max violation of the relations
};

} // namespace specgeo::nct
