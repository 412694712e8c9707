// Small-time heat-trace coefficients for Laplace-type operators
// P = -(g^{mu nu} d_mu d_nu + A^mu d_mu + B) with constant coefficients on a
// flat torus: the normal form (omega, E), the closed-form a_0/a_2/a_4, a
// least-squares extraction of coefficients from sampled traces, and the
// constant-conformal-factor variational identity.
#pragma once

#include <Eigen/Dense>

#include <vector>

namespace specgeo::heat {

struct LaplaceTypeData {
    int dimension = 2;
    Eigen::MatrixXd metric_inverse;            // g^{mu nu}, SPD, constant
    std::vector<Eigen::MatrixXcd> first_order; // A^mu, one r x r block per mu
    Eigen::MatrixXcd endomorphism;             // B
    int fiber_rank = 1;
    double coordinate_volume = 0.0;            // volume of the x-domain, (2 pi)^d for T^d

    static LaplaceTypeData scalar_torus(int d, double mass_sq);
    double riemannian_volume() const;          // coordinate_volume / sqrt(det g^{-1})^{-1}
    void validate() const;
};

struct NormalForm {
    std::vector<Eigen::MatrixXcd> omega;   // omega_nu = 1/2 g_{nu mu} A^mu
    Eigen::MatrixXcd endo;                 // E = B - g^{nu mu} omega_nu omega_mu
};

NormalForm normal_form(const LaplaceTypeData& data);

struct HeatCoefficients {
    double a0 = 0.0;
    double a2 = 0.0;
    double a4 = 0.0;
    double value(int k) const;   // odd k are identically zero
};

// flat constant-coefficient evaluation of the universal coefficient formulas;
// every curvature invariant vanishes here, only the E-terms survive:
//   a0 = (4pi)^{-d/2} f tr(1) Vol
//   a2 = (4pi)^{-d/2}/6 f Vol tr(6 E)
//   a4 = (4pi)^{-d/2}/360 f Vol tr(180 E^2)
HeatCoefficients seeley_dewitt(const LaplaceTypeData& data, double smear = 1.0);

struct FitResult {
    HeatCoefficients coeffs;
    double condition = 0.0;
    bool ill_conditioned = false;   // condition above 1e12
};

// least-squares fit trace(t) ~ sum_{k even <= k_max} a_k t^{(k-d)/2}
FitResult fit_heat_coefficients(const std::vector<std::pair<double, double>>& samples,
                                int d, int k_max);

struct VariationCheck {
    double lhs;   // d/d eps a_k(1, e^{-2 eps c} P) at eps = 0, finite differences
    double rhs;   // (d - k) c a_k(1, P)
};

VariationCheck conformal_variation_check(const LaplaceTypeData& data, double c, int k);

// d/d eps a_k(1, P - eps h) at 0 versus a_{k-2}(h, P), constant h
VariationCheck endomorphism_variation_check(const LaplaceTypeData& data, double h, int k);

} // namespace specgeo::heat
