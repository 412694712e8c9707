#include "specgeo/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace specgeo::dioph {

namespace {

// log of an mpz magnitude without overflowing doubles
double log_mpz(const mpz_class& z) {
    signed long exp2;
    double m = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::abs(m)) + exp2 * std::numbers::ln2;
}

double log_mpq_abs(const mpq_class& q) {
    return log_mpz(mpz_class(q.get_num())) - log_mpz(mpz_class(q.get_den()));
}

} // namespace

ContinuedFraction cf_expand(const mpq_class& x, int depth) {
    if (depth < 1 || depth > 60) throw std::invalid_argument("cf_expand: depth in 1..60");
    ContinuedFraction cf;
    cf.value = x;
    mpq_class rem = x;
    // seeds: p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0
    mpz_class p_prev = 0, p_cur = 1, q_prev = 1, q_cur = 0;
    for (int k = 0; k <= depth; ++k) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
        cf.partial_quotients.push_back(a);
        mpz_class p_next = a * p_cur + p_prev;
        mpz_class q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
        cf.convergents.push_back({p_cur, q_cur});
        mpq_class frac = rem - mpq_class(a);
        if (frac == 0) {
            cf.exact_termination = true;
            break;
        }
        rem = 1 / frac;
        rem.canonicalize();
    }
    return cf;
}

ContinuedFraction cf_expand(double x, int depth) {
    if (!std::isfinite(x)) throw std::invalid_argument("cf_expand: non-finite value");
    ContinuedFraction cf = cf_expand(mpq_class(x), depth);   // exact binary value of x
    // best-approximation errors go like 1/(q_k q_{k+1}); once that product
    // passes 2^52 the expansion digs below the double's information content
    mpz_class limit = mpz_class(1) << 52;
    for (std::size_t k = 0; k + 1 < cf.convergents.size(); ++k)
        if (cf.convergents[k].q * cf.convergents[k + 1].q > limit) {
            cf.precision_limited = true;
            break;
        }
    return cf;
}

namespace {

double exponent_from_cf(const ContinuedFraction& cf) {
    // collect (log q_k, -log|q_k x - p_k|); the final exact convergent of a
    // rational input has error 0 and is excluded
    std::vector<double> lx, ly;
    const std::size_t total = cf.convergents.size();
    for (std::size_t k = 0; k < total; ++k) {
        const auto& c = cf.convergents[k];
        if (c.q <= 1) continue;
        mpq_class err = c.q * cf.value - c.p;
        if (err == 0) continue;
        lx.push_back(log_mpz(c.q));
        ly.push_back(-log_mpq_abs(err));
    }
    if (lx.size() < 3)
        throw std::domain_error("approx_exponent: undefined for (near-)rational input");
    // anchored worst-case slope on the log-log data: fix the first convergent
    // with q >= 10 as the base point, then take the steepest long-range slope
    // (v_k - v_j)/(u_k - u_j).  The shared intercept -log c cancels, so bounded
    // partial quotients give exactly 1 while Liouville-type jumps survive.
    std::size_t j = 0;
    while (j < lx.size() && lx[j] < std::log(10.0)) ++j;
    if (j >= lx.size()) j = 0;
    double best = -HUGE_VAL;
    for (std::size_t k = j + 1; k < lx.size(); ++k) {
        double du = lx[k] - lx[j];
        if (du < 2.0) continue;   // too close to the anchor to read a slope
        best = std::max(best, (ly[k] - ly[j]) / du);
    }
    if (best == -HUGE_VAL)
        throw std::domain_error("approx_exponent: expansion too short past the anchor");
    return best;
}

} // namespace

double approx_exponent(const mpq_class& x, int depth) {
    return exponent_from_cf(cf_expand(x, depth));
}

double approx_exponent(double x, int depth) {
    ContinuedFraction cf = cf_expand(x, depth);
    // |q x - p| of the intended real is trustworthy only while q^2 stays below
    // the double's resolution; beyond ~2^26 the rounding of x dominates the
    // best-approximation error and the data points are noise
    mpz_class limit = mpz_class(1) << 26;
    ContinuedFraction trimmed;
    trimmed.value = cf.value;
    trimmed.exact_termination = cf.exact_termination;
    for (std::size_t k = 0; k < cf.convergents.size(); ++k) {
        if (cf.convergents[k].q > limit) break;
        trimmed.convergents.push_back(cf.convergents[k]);
        trimmed.partial_quotients.push_back(cf.partial_quotients[k]);
    }
    return exponent_from_cf(trimmed);
}

MatrixBadlyApproximable matrix_badly_approximable(const std::vector<std::vector<double>>& theta,
                                                  int depth, double tol) {
    const std::size_t n = theta.size();
    if (n != 2 && n != 4) throw std::invalid_argument("matrix_badly_approximable: n in {2, 4}");
    for (const auto& row : theta)
        if (row.size() != n) throw std::invalid_argument("matrix_badly_approximable: square matrix");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(theta[i][j] + theta[j][i]) > 1e-12 * (1.0 + std::abs(theta[i][j])))
                throw std::invalid_argument("matrix_badly_approximable: skew-symmetry violated");

    const double two_pi = 2.0 * std::numbers::pi;

    auto integer_like = [](double v) { return std::abs(v - std::round(v)) < 1e-12; };

    // rational with small denominator, up to double rounding
    auto small_denominator_rational = [](double v) {
        mpq_class x(v);
        ContinuedFraction cf = cf_expand(x, 30);
        for (const auto& c : cf.convergents) {
            if (c.q > 100000) break;
            mpq_class approx(c.p, c.q);
            approx.canonicalize();
            mpq_class err = x - approx;
            if (err == 0) return true;
            if (std::exp(log_mpq_abs(err)) < 1e-12) return true;
        }
        return false;
    };

    bool all_rational = true;
    for (std::size_t i = 0; i < n && all_rational; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!small_denominator_rational(theta[i][j] / two_pi)) {
                all_rational = false;
                break;
            }
    if (all_rational) return {Verdict::Rational, std::nullopt, 0.0};

    MatrixBadlyApproximable best{Verdict::NoEvidence, std::nullopt, 0.0};
    double best_exp = HUGE_VAL;

    // enumerate u with |u|_inf <= depth, small radius first, deterministic
    std::vector<std::vector<long>> candidates;
    std::vector<long> cur(n, -depth);
    while (true) {
        bool nonzero = false;
        for (long v : cur)
            if (v != 0) nonzero = true;
        if (nonzero) candidates.push_back(cur);
        std::size_t i = 0;
        while (i < n && ++cur[i] > depth) cur[i++] = -depth;
        if (i == n) break;
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const std::vector<long>& a, const std::vector<long>& b) {
                         long ra = 0, rb = 0;
                         for (long v : a) ra = std::max(ra, std::abs(v));
                         for (long v : b) rb = std::max(rb, std::abs(v));
                         if (ra != rb) return ra < rb;
                         return a < b;
                     });

    std::map<double, std::optional<double>> exp_cache;   // component -> exponent
    auto component_exponent = [&](double comp) -> std::optional<double> {
        auto it = exp_cache.find(comp);
        if (it != exp_cache.end()) return it->second;
        std::optional<double> r;
        try {
            r = approx_exponent(comp, 25);
        } catch (const std::domain_error&) {
            r = std::nullopt;   // (near-)rational component: disqualifies
        }
        exp_cache.emplace(comp, r);
        return r;
    };

    for (const auto& cand : candidates) {
        // component j of t(Theta/2pi) u = sum_i Theta_ij u_i / 2pi
        double worst = 0.0;
        bool disqualified = false;
        bool any_irrational = false;
        for (std::size_t j = 0; j < n; ++j) {
            double comp = 0.0;
            for (std::size_t i = 0; i < n; ++i) comp += theta[i][j] * cand[i];
            comp /= two_pi;
            if (integer_like(comp)) continue;   // shifts m only
            auto e = component_exponent(comp);
            if (!e) {
                disqualified = true;
                break;
            }
            any_irrational = true;
            worst = std::max(worst, *e);
        }
        if (disqualified || !any_irrational) continue;
        if (worst <= 1.0 + tol) return {Verdict::Yes, cand, worst};
        best_exp = std::min(best_exp, worst);
    }
    if (best_exp < HUGE_VAL) best.worst_exponent = best_exp;
    return best;
}

} // namespace specgeo::dioph
