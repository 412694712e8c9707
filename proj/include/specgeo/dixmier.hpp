// Singular-value partial sums sigma_N, the Cesaro means tau_lambda, two
// Dixmier-trace estimators for (1+Laplacian)^{-p} on flat tori, and a
// measurability diagnostic on the normalized partial-sum sequence.
#pragma once

#include "specgeo/lattice.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace specgeo::dix {

struct SingularValueStream {
    std::vector<double> mu;   // non-increasing

    static SingularValueStream from_spectrum(const lattice::ShellSpectrum& spec,
                                             const std::function<double(double)>& transform);
    static SingularValueStream from_values(std::vector<double> values);   // sorts descending
    std::size_t size() const { return mu.size(); }
};

// sigma_N = sum_{n < N} mu_n
double partial_trace(const SingularValueStream& sv, std::size_t N);

// sigma_lambda by affine interpolation between consecutive integers
double partial_trace_interp(const SingularValueStream& sv, double lambda);

// tau_lambda = (1/log lambda) int_e^lambda sigma_rho / log rho  drho/rho,
// integrated exactly over the piecewise-affine sigma
double cesaro_tau(const SingularValueStream& sv, double lambda);

struct DixmierEstimate {
    double cesaro_raw;            // (1/log N) sigma_N at N_max
    double cesaro_extrapolated;   // a from the a + b/log N fit over the ladder
    double cesaro_uncertainty;    // |raw - extrapolated|
    double zeta_residue;          // residue route, exact pole arithmetic
    std::vector<std::pair<std::int64_t, double>> ladder;   // (N, sigma_N/log N)
};

// operator (1 + Laplacian)^{-p} on T^d, scalar; p defaults to d/2 where the
// Dixmier trace is pi^{d/2} / Gamma(d/2 + 1), and vanishes for p > d/2
DixmierEstimate dixmier_estimate(int d, std::int64_t N_max, double p = -1.0);

enum class Trend { Converging, Diverging, Oscillating };

struct MeasurabilityReport {
    std::vector<std::pair<std::int64_t, double>> sequence;   // (N, sigma_N / log N)
    double cauchy_variation;                                 // max late-gap
    Trend verdict;
    double limit_estimate;                                   // meaningful when converging
};

MeasurabilityReport measurability_check(const SingularValueStream& sv,
                                        const std::vector<std::int64_t>& ladder);

const char* trend_name(Trend t);

} // namespace specgeo::dix
