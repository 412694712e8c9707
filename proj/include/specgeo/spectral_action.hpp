// Tr f(D^2 / Lambda^2) evaluated directly from a shell spectrum, the moment
// functionals f_k of the cutoff, and the finite asymptotic expansion
// sum_k f_k Lambda^k a_{d-k} + f(0) a_d with coefficients supplied either as
// heat coefficients or through zeta residues.
#pragma once

#include "specgeo/heat.hpp"
#include "specgeo/lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace specgeo::action {

struct CutoffFunction {
    enum class Kind { Sharp, Exponential, Tabulated };
    Kind kind = Kind::Sharp;
    // Tabulated: positive decreasing samples of f on [0, grid.back()],
    // piecewise linear, zero beyond the last node
    std::vector<std::pair<double, double>> table;

    static CutoffFunction sharp();
    static CutoffFunction exponential();
    static CutoffFunction tabulated(std::vector<std::pair<double, double>> samples);

    double operator()(double x) const;
    double at_zero() const { return (*this)(0.0); }

    // f_k = (1/Gamma(k/2)) int_0^inf f(s) s^{k/2-1} ds
    double moment(int k) const;
    // moment on the |D| scale: int_0^inf f(x^2) x^{k-1} dx = Gamma(k/2) f_k / 2
    double moment_radial(int k) const;
};

// sum over the spectrum of f(lambda^2 / Lambda^2) with multiplicities
double action_direct(const lattice::ShellSpectrum& spec, const CutoffFunction& f,
                     double Lambda);

struct ExpansionTerm {
    int power;      // of Lambda
    double value;   // f_k Lambda^k a_{d-k}, or f(0) a_d for power 0
};

struct ExpansionCoefficients {
    int d = 2;
    std::map<int, double> a;   // a_k for k = 0, 2, ..., d-1 range as available
    double a_d_const = 0.0;    // a_d = dim Ker D + zeta_{D^2}(0)

    static ExpansionCoefficients from_heat(const heat::HeatCoefficients& hc, int d,
                                           double a_d_const);
    // torus Dirac triple via residues: a_k = 1/2 Gamma((d-k)/2) * ncint |D|^{-d+k},
    // a_d = dim Ker D + zeta_{D^2}(0)
    static ExpansionCoefficients torus_dirac_from_residues(int d);
};

std::vector<ExpansionTerm> action_expansion(const ExpansionCoefficients& coeffs,
                                            const CutoffFunction& f, double Lambda);

struct ComparisonRow {
    double Lambda;
    double direct;
    double expansion;
    double abs_gap;
    double rel_gap;
};

std::vector<ComparisonRow> expansion_vs_direct(const lattice::ShellSpectrum& spec,
                                               const ExpansionCoefficients& coeffs,
                                               const CutoffFunction& f,
                                               const std::vector<double>& lambda_ladder);

} // namespace specgeo::action
