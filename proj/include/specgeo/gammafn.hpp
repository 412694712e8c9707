// Complex gamma machinery: Lanczos log-gamma, reciprocal gamma and real
// digamma.  Everything downstream (zeta continuations, residue formulas,
// moment normalizations) routes through these.
#pragma once

#include <complex>

namespace specgeo {

using cplx = std::complex<double>;

// log Gamma(z), principal branch; Lanczos g=7, n=9
cplx log_gamma(cplx z);

cplx gamma_c(cplx z);

// 1/Gamma(z); entire, zero at the poles of Gamma
cplx rec_gamma(cplx z);

// digamma for real x > 0
double digamma(double x);

} // namespace specgeo
