// Continued fractions and badly-approximable diagnostics.  Expansions run
// in exact rational arithmetic (GMP) so that best-approximation errors
// |q x - p| stay meaningful far beyond double precision; doubles enter only
// through their exact binary value.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace specgeo::dioph {

struct Convergent {
    mpz_class p;
    mpz_class q;
};

struct ContinuedFraction {
    mpq_class value;
    std::vector<mpz_class> partial_quotients;   // a0 may be any integer
    std::vector<Convergent> convergents;
    bool exact_termination = false;             // rational input fully expanded
    bool precision_limited = false;             // denominators passed 2^52 for a
                                                // value that came in as a double
};

// depth <= 60; exact for rationals (terminates early)
ContinuedFraction cf_expand(const mpq_class& x, int depth);
ContinuedFraction cf_expand(double x, int depth);

// Smallest delta consistent with the convergent data of |q x - p| >= c q^{-delta}:
// the log-log regression slope of 1/|q_k x - p_k| against q_k over the
// usable convergents.  Throws for inputs whose expansion is too short
// (plainly rational values).
double approx_exponent(const mpq_class& x, int depth);
double approx_exponent(double x, int depth);

enum class Verdict { Yes, NoEvidence, Rational };

struct MatrixBadlyApproximable {
    Verdict verdict;
    std::optional<std::vector<long>> witness;   // u with t(Theta/2pi)(u) badly approximable
    double worst_exponent = 0.0;                // exponent estimate behind the verdict
};

// Searches u in Z^n, |u|_inf <= depth, such that every irrational component of
// t(Theta/2pi) u has approximation exponent <= 1 + tol.  Integer components are
// neutral; a non-integer rational component disqualifies the witness.  The
// test is applied to Theta/2pi throughout.
MatrixBadlyApproximable matrix_badly_approximable(const std::vector<std::vector<double>>& theta,
                                                  int depth, double tol = 0.1);

} // namespace specgeo::dioph
