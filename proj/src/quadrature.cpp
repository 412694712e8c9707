#include "specgeo/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace specgeo::quad {

namespace {

// Newton iteration on Legendre polynomials, nodes symmetric around 0
Rule make_gl(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    const double pi = std::numbers::pi;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1);
            }
            double dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        p1 = 0.0;
        p0 = 1.0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1);
        }
        double dp = n * (x * p0 - p1) / (x * x - 1.0);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

// Golub-Welsch-free construction: Newton on Hermite recurrence
Rule make_gh(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    const double pi14 = std::pow(std::numbers::pi, -0.25);
    double x = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        if (i == 0)
            x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            x -= 1.14 * std::pow(n, 0.426) / x;
        else if (i == 2)
            x = 1.86 * x - 0.86 * r.x[n - 1];
        else if (i == 3)
            x = 1.91 * x - 0.91 * r.x[n - 2];
        else
            x = 2.0 * x - r.x[n - i + 1];
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p1 = pi14, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = x * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[n - 1 - i] = x;
        r.x[i] = -x;
        r.w[n - 1 - i] = r.w[i] = 2.0 / (pp * pp);
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

std::map<int, Rule> g_gl, g_gh;
std::mutex g_mtx;

} // namespace

const Rule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    std::lock_guard lk(g_mtx);
    auto it = g_gl.find(n);
    if (it == g_gl.end()) it = g_gl.emplace(n, make_gl(n)).first;
    return it->second;
}

const Rule& gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n >= 1");
    std::lock_guard lk(g_mtx);
    auto it = g_gh.find(n);
    if (it == g_gh.end()) it = g_gh.emplace(n, make_gh(n)).first;
    return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int order) {
    const Rule& r = gauss_legendre(order);
    double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        double mid = lo + 0.5 * h, half = 0.5 * h;
        double s = 0.0;
        for (int i = 0; i < order; ++i) s += r.w[i] * f(mid + half * r.x[i]);
        total += s * half;
    }
    return total;
}

} // namespace specgeo::quad
