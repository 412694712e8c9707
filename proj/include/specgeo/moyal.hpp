// Moyal star product in the oscillator matrix basis {f_mn}: truncated
// coefficient matrices multiply, the L^2 and operator-norm identities hold at
// the level of those matrices, and the Dixmier trace of L_f (-Delta+eps^2)^{-N}
// reduces to a closed-form limit in s.
//
// PolyGauss is the exact function calculus behind the oracles and the
// Hilbert-Schmidt kernel quadrature: complex polynomials times a centered
// Gaussian on R^2, closed under products, derivatives and Fourier transform.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <vector>

namespace specgeo::moyal {

using cplx = std::complex<double>;

// sum_{ij} c_{ij} x1^i x2^j exp(-c |x|^2) on R^2
struct PolyGauss {
    double gauss_c = 1.0;
    std::map<std::pair<int, int>, cplx> coef;

    cplx operator()(double x1, double x2) const;
    PolyGauss times_poly(int i, int j, cplx s) const;    // multiply by s x1^i x2^j
    PolyGauss d1() const;                                // d/dx1
    PolyGauss d2() const;                                // d/dx2
    PolyGauss scaled(cplx s) const;
    PolyGauss plus(const PolyGauss& other) const;        // requires equal gauss_c
    cplx integral() const;                               // int over R^2
    PolyGauss multiply(const PolyGauss& other) const;    // pointwise product
    PolyGauss fourier() const;                           // int f(x) e^{-i tau.x} dx
    int degree() const;
};

// oscillator basis f_mn at N = 1 built from the exact star-by-linear rules
// a  * f = a f + (theta/2) (d1 + i d2)/sqrt(2) f     (left)
// f * a  = a f - (theta/2) (d1 + i d2)/sqrt(2) f
// a^* * f = a^* f - (theta/2) (d1 - i d2)/sqrt(2) f
// f * a^* = a^* f + (theta/2) (d1 - i d2)/sqrt(2) f
// seeded by f_00 = 2 exp(-|x|^2/theta)
class OscillatorBasis {
public:
    explicit OscillatorBasis(double theta, int max_index);
    const PolyGauss& f(int m, int n) const;
    double theta() const { return theta_; }
    int max_index() const { return max_; }

private:
    double theta_;
    int max_;
    std::vector<PolyGauss> table_;   // (max+1)^2 entries
};

// pointwise Moyal product through the Fourier representation
//   (f * g)(x) = (2 pi)^{-2} int fhat(tau) g(x + (theta/2) S tau) e^{i x.tau} dtau
// with S = [[0,1],[-1,0]]; Gauss-Hermite in tau.  This is the quadrature
// oracle: it never touches the coefficient-matrix path.
cplx star_pointwise(const PolyGauss& f, const PolyGauss& g, double theta, double x1, double x2,
                    int nodes = 48);

struct MoyalMatrix {
    int N = 1;             // plane is R^{2N}
    double theta = 1.0;
    int cutoff = 8;        // indices run over {0..cutoff}^N
    Eigen::MatrixXcd c;    // (cutoff+1)^N square, f = sum c_{mn} f_mn

    static MoyalMatrix zero(int N, double theta, int cutoff);
    static MoyalMatrix basis_element(int N, double theta, int cutoff, int m_flat, int n_flat);
    int dim() const { return static_cast<int>(c.rows()); }
    MoyalMatrix adjoint() const;
    double l2_norm() const;                   // ||f||_2 = (2 pi theta)^{N/2} ||c||_F
    cplx integral() const;                    // int f = (2 pi theta)^N tr c
    bool compatible(const MoyalMatrix& other) const;
};

struct StarResult {
    MoyalMatrix product;
    double boundary_mass;   // relative weight of cutoff-boundary coefficients
};

StarResult star(const MoyalMatrix& f, const MoyalMatrix& g);

// <f, g> = (pi theta)^{-N} int f * g = 2^N tr(c_f c_g)
cplx moyal_trace_pairing(const MoyalMatrix& f, const MoyalMatrix& g);

struct NormBound {
    double op_norm_estimate;   // largest singular value of the coefficient matrix
    double bound;              // (2 pi theta)^{-N/2} ||f||_2 = Frobenius norm of c
};

NormBound left_mult_norm_bound(const MoyalMatrix& f);

struct HsCheck {
    double lhs;   // Hilbert-Schmidt norm by 4-d kernel quadrature
    double rhs;   // (2 pi)^{-N} ||f||_2 ||g||_2
};

// N = 1 only; g is a radial function of |xi| with Gaussian-type decay
HsCheck hs_product_norm(const MoyalMatrix& f, const std::function<double(double)>& g_radial,
                        double g_l2_norm, int nodes = 24);

struct DixmierMoyal {
    double limit_estimate;   // lim_{s->1} (s-1) Tr[L_f (-Delta+eps^2)^{-Ns}] * 2^N
    double paper_value;      // int f / (N! (2 pi)^N)
};

DixmierMoyal moyal_dixmier(const MoyalMatrix& f, double epsilon);

} // namespace specgeo::moyal
