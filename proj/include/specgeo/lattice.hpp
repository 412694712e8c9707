// Z^n lattice shells and the spectra they induce on the flat torus
// T^n = R^n / 2 pi Z^n: the Laplacian has eigenvalue |k|^2 on e_k and the
// Dirac operator has |D| eigenvalue |k| with spinor multiplicity 2^floor(n/2).
#pragma once

#include <cstdint>
#include <vector>

namespace specgeo::lattice {

struct Shell {
    std::int64_t norm_sq;
    std::int64_t count;
};

struct ShellSpectrum {
    int dimension = 0;
    int spinor_rank = 1;
    std::vector<Shell> shells;   // strictly increasing norm_sq, starts at 0

    std::int64_t max_norm_sq() const { return shells.empty() ? -1 : shells.back().norm_sq; }
    std::int64_t total_states() const;   // spinor_rank * sum of counts
};

// all shells with norm_sq <= max_norm_sq; dirac toggles the spinor rank
ShellSpectrum enumerate_shells(int n, std::int64_t max_norm_sq, bool dirac = false);

// spinor_rank * #( |k| <= lambda ), kernel included
std::int64_t counting_function(const ShellSpectrum& spec, double lambda);

struct TraceResult {
    double value;
    double tail_bound;   // absolute bound on the dropped tail
};

// spinor_rank * sum over shells of count * exp(-t (norm_sq + shift));
// throws when the truncation tail exceeds rel_tol * value
TraceResult heat_trace(const ShellSpectrum& spec, double t, double shift = 0.0,
                       double rel_tol = 1e-12);

// independent route for the standard Z^d spectrum: the d-th power of the
// one-dimensional theta sum; used as a cross-check oracle
double heat_trace_theta_power(int d, double t, double shift = 0.0);

} // namespace specgeo::lattice
