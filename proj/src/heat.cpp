#include "specgeo/heat.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specgeo::heat {

namespace {
constexpr double kPi = std::numbers::pi;

LaplaceTypeData scaled(const LaplaceTypeData& data, double lambda) {
    // P -> lambda P: scales g^{mu nu}, A^mu and B together
    LaplaceTypeData out = data;
    out.metric_inverse *= lambda;
    for (auto& A : out.first_order) A *= lambda;
    out.endomorphism *= lambda;
    return out;
}
} // namespace

LaplaceTypeData LaplaceTypeData::scalar_torus(int d, double mass_sq) {
    LaplaceTypeData data;
    data.dimension = d;
    data.metric_inverse = Eigen::MatrixXd::Identity(d, d);
    data.first_order.assign(d, Eigen::MatrixXcd::Zero(1, 1));
    data.endomorphism = -mass_sq * Eigen::MatrixXcd::Identity(1, 1);
    data.fiber_rank = 1;
    data.coordinate_volume = std::pow(2.0 * kPi, d);
    return data;
}

void LaplaceTypeData::validate() const {
    const int d = dimension;
    if (d < 1 || d > 4) throw std::invalid_argument("LaplaceTypeData: dimension in 1..4");
    if (metric_inverse.rows() != d || metric_inverse.cols() != d)
        throw std::invalid_argument("LaplaceTypeData: metric_inverse must be d x d");
    if (!metric_inverse.isApprox(metric_inverse.transpose(), 1e-12))
        throw std::invalid_argument("LaplaceTypeData: metric_inverse must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(metric_inverse);
    if (es.eigenvalues().minCoeff() <= 0)
        throw std::invalid_argument("LaplaceTypeData: metric_inverse must be positive definite");
    if (static_cast<int>(first_order.size()) != d)
        throw std::invalid_argument("LaplaceTypeData: need one A^mu per coordinate");
    for (const auto& A : first_order)
        if (A.rows() != fiber_rank || A.cols() != fiber_rank)
            throw std::invalid_argument("LaplaceTypeData: A^mu must be fiber_rank square");
    if (endomorphism.rows() != fiber_rank || endomorphism.cols() != fiber_rank)
        throw std::invalid_argument("LaplaceTypeData: B must be fiber_rank square");
    if (coordinate_volume <= 0)
        throw std::invalid_argument("LaplaceTypeData: coordinate_volume > 0");
}

double LaplaceTypeData::riemannian_volume() const {
    // dvol = sqrt(det g_{mu nu}) dx = det(g^{mu nu})^{-1/2} dx
    return coordinate_volume / std::sqrt(metric_inverse.determinant());
}

NormalForm normal_form(const LaplaceTypeData& data) {
    data.validate();
    const int d = data.dimension;
    Eigen::MatrixXd g_lower = data.metric_inverse.inverse();
    NormalForm nf;
    nf.omega.assign(d, Eigen::MatrixXcd::Zero(data.fiber_rank, data.fiber_rank));
    for (int nu = 0; nu < d; ++nu)
        for (int mu = 0; mu < d; ++mu)
            nf.omega[nu] += 0.5 * g_lower(nu, mu) * data.first_order[mu];
    nf.endo = data.endomorphism;
    for (int nu = 0; nu < d; ++nu)
        for (int mu = 0; mu < d; ++mu)
            nf.endo -= data.metric_inverse(nu, mu) * nf.omega[nu] * nf.omega[mu];
    return nf;
}

double HeatCoefficients::value(int k) const {
    switch (k) {
        case 0: return a0;
        case 2: return a2;
        case 4: return a4;
        default:
            if (k % 2 == 1) return 0.0;
            throw std::out_of_range("HeatCoefficients: only a0, a2, a4 are produced");
    }
}

HeatCoefficients seeley_dewitt(const LaplaceTypeData& data, double smear) {
    NormalForm nf = normal_form(data);
    const int d = data.dimension;
    const double vol = data.riemannian_volume();
    const double pref = std::pow(4.0 * kPi, -0.5 * d) * smear * vol;
    HeatCoefficients hc;
    hc.a0 = pref * data.fiber_rank;
    // flat case: of the universal a2 and a4 invariants only tr(6E)/6 and
    // tr(180 E^2)/360 survive
    hc.a2 = pref / 6.0 * (6.0 * nf.endo.trace()).real();
    hc.a4 = pref / 360.0 * (180.0 * (nf.endo * nf.endo).trace()).real();
    return hc;
}

FitResult fit_heat_coefficients(const std::vector<std::pair<double, double>>& samples,
                                int d, int k_max) {
    if (k_max % 2 != 0 || k_max < 0) throw std::invalid_argument("fit: k_max even and >= 0");
    const int ncoef = k_max / 2 + 1;
    if (static_cast<int>(samples.size()) < ncoef + 1)
        throw std::invalid_argument("fit: need at least k_max/2 + 2 samples");

    Eigen::MatrixXd M(samples.size(), ncoef);
    Eigen::VectorXd y(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double t = samples[i].first;
        if (t <= 0) throw std::invalid_argument("fit: sample times must be positive");
        for (int j = 0; j < ncoef; ++j) M(i, j) = std::pow(t, 0.5 * (2 * j - d));
        y(i) = samples[i].second;
    }
    // equilibrate the columns: the raw powers span many decades and would
    // drown the conditioning diagnostic in pure scaling
    Eigen::VectorXd scale(ncoef);
    for (int j = 0; j < ncoef; ++j) {
        scale(j) = M.col(j).norm();
        if (scale(j) == 0.0) scale(j) = 1.0;
        M.col(j) /= scale(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    FitResult out;
    out.condition = svd.singularValues()(0) / svd.singularValues()(ncoef - 1);
    out.ill_conditioned = out.condition > 1e12;
    Eigen::VectorXd c = svd.solve(y);
    out.coeffs.a0 = c(0) / scale(0);
    out.coeffs.a2 = ncoef > 1 ? c(1) / scale(1) : 0.0;
    out.coeffs.a4 = ncoef > 2 ? c(2) / scale(2) : 0.0;
    return out;
}

VariationCheck conformal_variation_check(const LaplaceTypeData& data, double c, int k) {
    // central differences with Richardson in eps; the scaling is analytic so
    // accuracy is limited only by roundoff
    auto ak = [&](double eps) {
        return seeley_dewitt(scaled(data, std::exp(-2.0 * eps * c))).value(k);
    };
    const double h = 1e-4;
    double d1 = (ak(h) - ak(-h)) / (2.0 * h);
    double d2 = (ak(0.5 * h) - ak(-0.5 * h)) / h;
    VariationCheck out;
    out.lhs = (4.0 * d2 - d1) / 3.0;
    out.rhs = (data.dimension - k) * c * seeley_dewitt(data).value(k);
    return out;
}

VariationCheck endomorphism_variation_check(const LaplaceTypeData& data, double h_const, int k) {
    auto ak = [&](double eps) {
        LaplaceTypeData pert = data;
        // P - eps h shifts B by -eps h (and E by +eps h after the sign in P)
        pert.endomorphism += eps * h_const *
                             Eigen::MatrixXcd::Identity(data.fiber_rank, data.fiber_rank);
        return seeley_dewitt(pert).value(k);
    };
    const double h = 1e-4;
    double d1 = (ak(h) - ak(-h)) / (2.0 * h);
    double d2 = (ak(0.5 * h) - ak(-0.5 * h)) / h;
    VariationCheck out;
    out.lhs = (4.0 * d2 - d1) / 3.0;
    out.rhs = (k >= 2) ? seeley_dewitt(data, h_const).value(k - 2) : 0.0;
    return out;
}

} // namespace specgeo::heat
