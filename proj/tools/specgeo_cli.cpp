// specgeo: spectral-geometry toolkit CLI.
// Subcommands map one-to-one onto the library modules; all runs are
// deterministic and emit machine-readable JSON or CSV with a metadata header.
// Exit codes: 0 success, 1 usage/input error, 2 computed but out of tolerance.
#include "specgeo/diophantine.hpp"
#include "specgeo/dixmier.hpp"
#include "specgeo/heat.hpp"
#include "specgeo/kernels.hpp"
#include "specgeo/lattice.hpp"
#include "specgeo/moyal.hpp"
#include "specgeo/nctorus.hpp"
#include "specgeo/report.hpp"
#include "specgeo/spectral_action.hpp"
#include "specgeo/wodzicki.hpp"
#include "specgeo/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <complex>
#include <numbers>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace specgeo;

namespace {

struct Output {
    std::string path = "-";
    void emit(const std::string& content) const {
        if (path == "-")
            std::cout << content;
        else
            report::write_file(path, content);
    }
};

cplx parse_complex(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return cplx(std::stod(s), 0.0);
    return cplx(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

// exact rational from "p/q" or a decimal string, digits preserved
mpq_class parse_rational(const std::string& s) {
    if (s.find('/') != std::string::npos) {
        mpq_class q(s);
        q.canonicalize();
        return q;
    }
    std::string t = s;
    bool neg = !t.empty() && t[0] == '-';
    if (neg || (!t.empty() && t[0] == '+')) t.erase(0, 1);
    auto dot = t.find('.');
    std::string digits = t;
    std::size_t frac_len = 0;
    if (dot != std::string::npos) {
        frac_len = t.size() - dot - 1;
        digits = t.substr(0, dot) + t.substr(dot + 1);
    }
    if (digits.empty()) throw CLI::ValidationError("--value", "empty numeric literal");
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    mpq_class q(num, den);
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

json mero_to_json(const zeta::MeroValue& mv) {
    json j;
    j["finite_part"] = {{"re", mv.finite_part.real()}, {"im", mv.finite_part.imag()}};
    j["pole_order"] = mv.pole_order;
    j["residue"] = {{"re", mv.residue.real()}, {"im", mv.residue.imag()}};
    return j;
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    json j;
    f >> j;
    return j;
}

nct::OneForm load_one_form(const std::string& path) {
    json j = load_json(path);
    nct::OneForm A;
    A.n = j.at("n").get<int>();
    auto th = j.at("theta").get<std::vector<double>>();
    if (th.size() != static_cast<std::size_t>(A.n) * A.n)
        throw std::runtime_error("theta must hold n*n row-major entries");
    A.theta = Eigen::Matrix4d::Zero();
    for (int i = 0; i < A.n; ++i)
        for (int k = 0; k < A.n; ++k) A.theta(i, k) = th[i * A.n + k];
    for (int alpha = 0; alpha < A.n; ++alpha)
        A.components.push_back(nct::TorusElement{A.n, A.theta, {}});
    for (const auto& e : j.at("components")) {
        int alpha = e.at("alpha").get<int>();
        if (alpha < 1 || alpha > A.n) throw std::runtime_error("component alpha out of range");
        auto l = e.at("l").get<std::vector<int>>();
        nct::LatticeKey key{0, 0, 0, 0};
        for (std::size_t i = 0; i < l.size() && i < 4; ++i) key[i] = l[i];
        A.components[alpha - 1].coeffs[key] +=
            cplx(e.at("re").get<double>(), e.at("im").get<double>());
    }
    A.validate();
    return A;
}

moyal::MoyalMatrix load_moyal(const std::string& path, double theta, int cutoff) {
    json j = load_json(path);
    int N = j.at("N").get<int>();
    auto m = moyal::MoyalMatrix::zero(N, theta, cutoff);
    auto flat = [&](const json& idx) {
        std::vector<int> v = idx.is_array() ? idx.get<std::vector<int>>()
                                            : std::vector<int>{idx.get<int>()};
        if (static_cast<int>(v.size()) != N) throw std::runtime_error("index arity mismatch");
        int f = 0;
        for (int i = 0; i < N; ++i) {
            if (v[i] < 0 || v[i] > cutoff) throw std::runtime_error("index beyond cutoff");
            f = f * (cutoff + 1) + v[i];
        }
        return f;
    };
    for (const auto& e : j.at("entries"))
        m.c(flat(e.at("m")), flat(e.at("n"))) +=
            cplx(e.at("re").get<double>(), e.at("im").get<double>());
    return m;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"specgeo: lattice zeta functions, Dixmier traces, heat coefficients,\n"
                 "spectral actions on flat and noncommutative tori, and the Moyal-plane\n"
                 "matrix calculus"};
    app.require_subcommand(1);

    Output out;
    std::string format = "json";
    app.add_option("--output", out.path, "output file, '-' for stdout");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    // ---- shells ----
    auto* shells = app.add_subcommand(
        "shells", "Z^n lattice shells (norm_sq, count): the torus Laplace/Dirac spectrum");
    int sh_dim = 2;
    long long sh_max = 16;
    bool sh_dirac = false;
    shells->add_option("--dim", sh_dim, "lattice dimension 1..4")->required();
    shells->add_option("--max", sh_max, "largest |k|^2 to enumerate")->required();
    shells->add_flag("--dirac", sh_dirac, "spinor multiplicity 2^floor(d/2)");

    // ---- zeta ----
    auto* zt = app.add_subcommand(
        "zeta", "Epstein Z_n(s), monomial lattice zetas, 1-d twisted zeta: value, pole, residue");
    int z_n = 2;
    std::string z_s = "0";
    std::string z_poly;
    std::string z_twisted_a;
    bool z_epstein = false;
    zt->add_flag("--epstein", z_epstein, "evaluate Z_n(s)");
    zt->add_option("--n", z_n, "lattice dimension 1..4");
    zt->add_option("--s", z_s, "evaluation point, 're' or 're,im'");
    zt->add_option("--poly", z_poly, "monomial exponents p1,...,pn");
    zt->add_option("--twisted", z_twisted_a, "twist parameter a for sum' e^{2 pi i k a} |k|^{-s}");

    // ---- dioph ----
    auto* dp = app.add_subcommand(
        "dioph", "continued fractions and badly-approximable exponents");
    std::string dp_value;
    std::string dp_matrix;
    int dp_depth = 30;
    dp->add_option("--value", dp_value, "scalar x as decimal or p/q (exact)");
    dp->add_option("--matrix", dp_matrix, "JSON file with row-major skew matrix Theta");
    dp->add_option("--depth", dp_depth, "expansion depth / witness search radius");

    // ---- heat ----
    auto* ht = app.add_subcommand(
        "heat", "Laplace-type heat coefficients a0/a2/a4 and trace-sample fits");
    std::string ht_fit;
    std::string ht_sdw;
    int ht_dim = 2;
    int ht_kmax = 4;
    double ht_smear = 1.0;
    ht->add_option("--fit", ht_fit, "CSV of t,trace samples to fit");
    ht->add_option("--sdw", ht_sdw, "JSON Laplace-type operator description");
    ht->add_option("--dim", ht_dim, "dimension for --fit");
    ht->add_option("--kmax", ht_kmax, "highest coefficient order for --fit");
    ht->add_option("--smear", ht_smear, "constant smearing factor for --sdw");

    // ---- wres ----
    auto* wr = app.add_subcommand(
        "wres", "Wodzicki residue of an order-(-d) symbol by cosphere quadrature");
    std::string wr_symbol = "laplacian";
    std::string wr_p;
    std::string wr_input;
    int wr_dim = 2;
    wr->add_option("--symbol", wr_symbol, "laplacian | monomial | tabulated")
        ->check(CLI::IsMember({"laplacian", "monomial", "tabulated"}));
    wr->add_option("--dim", wr_dim, "dimension 2..4");
    wr->add_option("--p", wr_p, "monomial exponents p1,...,pd");
    wr->add_option("--input", wr_input, "JSON angular table for --symbol tabulated (d=2)");

    // ---- dixmier ----
    auto* dx = app.add_subcommand(
        "dixmier", "Cesaro and zeta-residue Dixmier-trace estimates of (1+Delta)^{-d/2}");
    int dx_dim = 2;
    long long dx_N = 1000000;
    double dx_p = -1.0;
    double dx_tol = -1.0;
    dx->add_option("--dim", dx_dim, "torus dimension, 2 or 4")->required();
    dx->add_option("--N", dx_N, "largest partial-sum order");
    dx->add_option("--p", dx_p, "resolvent power (default d/2)");
    dx->add_option("--tol", dx_tol, "relative tolerance on the extrapolated Cesaro estimate");

    // ---- action ----
    auto* ac = app.add_subcommand(
        "action", "Tr f(D^2/Lambda^2) on the torus versus its asymptotic expansion");
    int ac_dim = 2;
    std::string ac_cutoff = "exp";
    std::string ac_ladder = "5,10,20";
    ac->add_option("--dim", ac_dim, "torus dimension, 2 or 4");
    ac->add_option("--cutoff", ac_cutoff, "sharp or exp")
        ->check(CLI::IsMember({"sharp", "exp"}));
    ac->add_option("--lambda-ladder", ac_ladder, "comma-separated Lambda values");

    // ---- nctorus ----
    auto* nc = app.add_subcommand(
        "nctorus", "noncommutative-torus gauge calculus and spectral action");
    std::string nc_mode;
    std::string nc_input;
    double nc_lambda = 10.0;
    std::string nc_cutoff = "exp";
    double nc_tol = 1e-10;
    nc->add_option("mode", nc_mode, "action | ym | check")
        ->required()
        ->check(CLI::IsMember({"action", "ym", "check"}));
    nc->add_option("--input", nc_input, "JSON one-form {n, theta, components}")->required();
    nc->add_option("--lambda", nc_lambda, "cutoff scale for action");
    nc->add_option("--cutoff", nc_cutoff, "sharp or exp for action");
    nc->add_option("--tol", nc_tol, "two-path residual tolerance for check");

    // ---- moyal ----
    auto* my = app.add_subcommand(
        "moyal", "Moyal-plane matrix calculus: star product, norms, Dixmier trace");
    std::string my_mode;
    std::string my_input;
    double my_theta = 2.0;
    int my_cutoff = 8;
    double my_eps = 1.0;
    my->add_option("mode", my_mode, "star | dixmier | norms")
        ->required()
        ->check(CLI::IsMember({"star", "dixmier", "norms"}));
    my->add_option("--theta", my_theta, "deformation parameter");
    my->add_option("--cutoff", my_cutoff, "oscillator index cutoff K");
    my->add_option("--input", my_input, "JSON coefficients {N, entries}")->required();
    my->add_option("--epsilon", my_eps, "infrared regulator for dixmier");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);   // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    std::string config_echo;
    for (int i = 1; i < argc; ++i) config_echo += std::string(i > 1 ? " " : "") + argv[i];
    report::Meta meta{report::kToolVersion, config_echo, {}};

    try {
        if (*shells) {
            auto spec = lattice::enumerate_shells(sh_dim, sh_max, sh_dirac);
            if (format == "csv") {
                std::vector<std::vector<double>> rows;
                for (const auto& s : spec.shells)
                    rows.push_back({static_cast<double>(s.norm_sq),
                                    static_cast<double>(s.count)});
                out.emit(report::render_csv(meta, {"norm_sq", "count"}, rows));
            } else {
                json r;
                r["dimension"] = spec.dimension;
                r["spinor_rank"] = spec.spinor_rank;
                for (const auto& s : spec.shells)
                    r["shells"].push_back({{"norm_sq", s.norm_sq}, {"count", s.count}});
                out.emit(report::render_json(meta, r));
            }
        } else if (*zt) {
            zeta::MeroValue mv;
            cplx s = parse_complex(z_s);
            if (!z_poly.empty()) {
                zeta::PolyExponent pe{parse_int_list(z_poly)};
                mv = zeta::poly_zeta(static_cast<int>(pe.p.size()), pe, s);
            } else if (!z_twisted_a.empty()) {
                mv = zeta::twisted_zeta_1d(std::stod(z_twisted_a), s);
            } else if (z_epstein) {
                mv = zeta::epstein_zeta(z_n, s);
            } else {
                throw CLI::ValidationError("zeta", "choose --epstein, --poly or --twisted");
            }
            out.emit(report::render_json(meta, mero_to_json(mv)));
        } else if (*dp) {
            json r;
            if (!dp_value.empty()) {
                mpq_class x = parse_rational(dp_value);
                auto cf = dioph::cf_expand(x, dp_depth);
                for (const auto& a : cf.partial_quotients)
                    r["partial_quotients"].push_back(a.get_str());
                for (const auto& c : cf.convergents)
                    r["convergents"].push_back({{"p", c.p.get_str()}, {"q", c.q.get_str()}});
                r["exact_termination"] = cf.exact_termination;
                try {
                    r["approx_exponent"] = dioph::approx_exponent(x, dp_depth);
                } catch (const std::domain_error& e) {
                    r["approx_exponent_error"] = e.what();
                }
            } else if (!dp_matrix.empty()) {
                json j = load_json(dp_matrix);
                auto flat = j.at("theta").get<std::vector<double>>();
                auto n = static_cast<std::size_t>(std::lround(std::sqrt(double(flat.size()))));
                std::vector<std::vector<double>> th(n, std::vector<double>(n));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t k = 0; k < n; ++k) th[i][k] = flat[i * n + k];
                auto res = dioph::matrix_badly_approximable(th, dp_depth);
                r["verdict"] = res.verdict == dioph::Verdict::Yes         ? "YES"
                               : res.verdict == dioph::Verdict::Rational ? "RATIONAL"
                                                                         : "NO-EVIDENCE";
                if (res.witness) r["witness"] = *res.witness;
                r["worst_exponent"] = res.worst_exponent;
                r["depth"] = dp_depth;
            } else {
                throw CLI::ValidationError("dioph", "choose --value or --matrix");
            }
            out.emit(report::render_json(meta, r));
        } else if (*ht) {
            json r;
            if (!ht_fit.empty()) {
                std::ifstream f(ht_fit);
                if (!f) throw std::runtime_error("cannot open " + ht_fit);
                std::vector<std::pair<double, double>> samples;
                std::string line;
                while (std::getline(f, line)) {
                    if (line.empty() || line[0] == '#' || std::isalpha(line[0])) continue;
                    auto comma = line.find(',');
                    samples.emplace_back(std::stod(line.substr(0, comma)),
                                         std::stod(line.substr(comma + 1)));
                }
                auto fit = heat::fit_heat_coefficients(samples, ht_dim, ht_kmax);
                r["a0"] = fit.coeffs.a0;
                r["a2"] = fit.coeffs.a2;
                r["a4"] = fit.coeffs.a4;
                r["condition"] = fit.condition;
                r["ill_conditioned"] = fit.ill_conditioned;
            } else if (!ht_sdw.empty()) {
                json j = load_json(ht_sdw);
                heat::LaplaceTypeData data;
                data.dimension = j.at("d").get<int>();
                data.fiber_rank = j.value("fiber_rank", 1);
                const int d = data.dimension, rk = data.fiber_rank;
                data.metric_inverse = Eigen::MatrixXd::Identity(d, d);
                if (j.contains("metric_inverse")) {
                    auto g = j["metric_inverse"].get<std::vector<double>>();
                    for (int i = 0; i < d; ++i)
                        for (int k = 0; k < d; ++k) data.metric_inverse(i, k) = g[i * d + k];
                }
                auto read_mat = [&](const json& m) {
                    Eigen::MatrixXcd M(rk, rk);
                    for (int i = 0; i < rk; ++i)
                        for (int k = 0; k < rk; ++k) {
                            const auto& cell = m.at(i * rk + k);
                            M(i, k) = cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
                        }
                    return M;
                };
                if (j.contains("A"))
                    for (const auto& m : j["A"]) data.first_order.push_back(read_mat(m));
                else
                    data.first_order.assign(d, Eigen::MatrixXcd::Zero(rk, rk));
                data.endomorphism = j.contains("B") ? read_mat(j["B"])
                                                    : Eigen::MatrixXcd::Zero(rk, rk);
                data.coordinate_volume =
                    j.value("volume", std::pow(2.0 * std::numbers::pi, d));
                auto hc = heat::seeley_dewitt(data, ht_smear);
                auto nf = heat::normal_form(data);
                r["a0"] = hc.a0;
                r["a2"] = hc.a2;
                r["a4"] = hc.a4;
                r["E_trace"] = {{"re", nf.endo.trace().real()}, {"im", nf.endo.trace().imag()}};
            } else {
                throw CLI::ValidationError("heat", "choose --fit or --sdw");
            }
            out.emit(report::render_json(meta, r));
        } else if (*wr) {
            json r;
            if (wr_symbol == "tabulated") {
                if (wr_dim != 2)
                    throw CLI::ValidationError("wres", "tabulated symbols support d=2 only");
                json j = load_json(wr_input);
                auto vals = j.at("values").get<std::vector<std::vector<double>>>();
                const auto M = vals.size();
                cplx acc = 0.0;
                for (const auto& v : vals) acc += cplx(v.at(0), v.at(1));
                cplx density = acc * (2.0 * std::numbers::pi / M) /
                               std::pow(2.0 * std::numbers::pi, 2);
                cplx w = density * std::pow(2.0 * std::numbers::pi, 2);
                r["local_density"] = {{"re", density.real()}, {"im", density.imag()}};
                r["wres"] = {{"re", w.real()}, {"im", w.imag()}};
            } else {
                wres::SymbolFunction sym =
                    (wr_symbol == "laplacian")
                        ? wres::SymbolFunction::laplacian_resolvent(wr_dim)
                        : wres::SymbolFunction::monomial(wr_dim, parse_int_list(wr_p));
                auto density = wres::local_density(sym, std::vector<double>(wr_dim, 0.0));
                auto w = wres::wres(sym);
                r["local_density"] = {{"re", density.real()}, {"im", density.imag()}};
                r["wres"] = {{"re", w.real()}, {"im", w.imag()}};
            }
            out.emit(report::render_json(meta, r));
        } else if (*dx) {
            auto est = dix::dixmier_estimate(dx_dim, dx_N, dx_p);
            if (format == "csv") {
                std::vector<std::vector<double>> rows;
                for (auto& [N, v] : est.ladder) rows.push_back({static_cast<double>(N), v});
                meta.tolerances = {{"cesaro_rel", dx_tol > 0 ? dx_tol : 0.0}};
                std::string csv = report::render_csv(meta, {"N", "sigma_over_logN"}, rows);
                csv += "# cesaro_raw=" + report::format_double(est.cesaro_raw) + "\n";
                csv += "# cesaro_extrapolated=" +
                       report::format_double(est.cesaro_extrapolated) + "\n";
                csv += "# zeta_residue=" + report::format_double(est.zeta_residue) + "\n";
                out.emit(csv);
            } else {
                json r;
                r["cesaro_raw"] = est.cesaro_raw;
                r["cesaro_extrapolated"] = est.cesaro_extrapolated;
                r["cesaro_uncertainty"] = est.cesaro_uncertainty;
                r["zeta_residue"] = est.zeta_residue;
                for (auto& [N, v] : est.ladder)
                    r["ladder"].push_back({{"N", N}, {"value", v}});
                out.emit(report::render_json(meta, r));
            }
            if (dx_tol > 0 && est.zeta_residue != 0.0 &&
                std::abs(est.cesaro_extrapolated - est.zeta_residue) >
                    dx_tol * std::abs(est.zeta_residue))
                return 2;
        } else if (*ac) {
            auto f = (ac_cutoff == "sharp") ? action::CutoffFunction::sharp()
                                            : action::CutoffFunction::exponential();
            auto ladder = parse_double_list(ac_ladder);
            double lmax = 0.0;
            for (double L : ladder) lmax = std::max(lmax, L);
            double need = (ac_cutoff == "sharp") ? lmax * lmax + 1 : 36.0 * lmax * lmax;
            auto spec = lattice::enumerate_shells(ac_dim, static_cast<std::int64_t>(need), true);
            auto coeffs = action::ExpansionCoefficients::torus_dirac_from_residues(ac_dim);
            auto rows = action::expansion_vs_direct(spec, coeffs, f, ladder);
            std::vector<std::vector<double>> csv_rows;
            for (const auto& row : rows)
                csv_rows.push_back({row.Lambda, row.direct, row.expansion, row.abs_gap,
                                    row.rel_gap});
            out.emit(report::render_csv(
                meta, {"Lambda", "direct", "expansion", "abs_gap", "rel_gap"}, csv_rows));
        } else if (*nc) {
            nct::OneForm A = load_one_form(nc_input);
            json r;
            if (nc_mode == "ym") {
                r["yang_mills_density"] = nct::yang_mills_density(A);
            } else if (nc_mode == "action") {
                auto f = (nc_cutoff == "sharp") ? action::CutoffFunction::sharp()
                                                : action::CutoffFunction::exponential();
                for (const auto& t : nct::spectral_action_nc(A.n, A, f, nc_lambda))
                    r["terms"].push_back({{"power", t.power}, {"value", t.value}});
                r["nc_integral_top"] = nct::nc_integral_top(A.n);
            } else {
                double z = nct::zeta_DA_zero(A);
                double ym = nct::yang_mills_density(A);
                double c = 4.0 * std::numbers::pi * std::numbers::pi / 3.0;
                double resid = std::abs(z + c * ym);
                r["zeta_DA_zero"] = z;
                r["yang_mills_density"] = ym;
                r["two_path_residual"] = resid;
                r["tolerance"] = nc_tol * (1.0 + std::abs(ym));
                out.emit(report::render_json(meta, r));
                return resid <= nc_tol * (1.0 + std::abs(ym)) ? 0 : 2;
            }
            out.emit(report::render_json(meta, r));
        } else if (*my) {
            auto f = load_moyal(my_input, my_theta, my_cutoff);
            json r;
            if (my_mode == "star") {
                auto sr = moyal::star(f, f);
                r["boundary_mass"] = sr.boundary_mass;
                for (int a = 0; a < sr.product.dim(); ++a)
                    for (int b = 0; b < sr.product.dim(); ++b)
                        if (sr.product.c(a, b) != cplx(0.0))
                            r["entries"].push_back({{"m", a},
                                                    {"n", b},
                                                    {"re", sr.product.c(a, b).real()},
                                                    {"im", sr.product.c(a, b).imag()}});
                if (!r.contains("entries")) r["entries"] = json::array();
            } else if (my_mode == "norms") {
                auto nb = moyal::left_mult_norm_bound(f);
                r["op_norm_estimate"] = nb.op_norm_estimate;
                r["bound"] = nb.bound;
                r["l2_norm"] = f.l2_norm();
            } else {
                auto dm = moyal::moyal_dixmier(f, my_eps);
                r["limit_estimate"] = dm.limit_estimate;
                r["paper_value"] = dm.paper_value;
                r["integral"] = f.integral().real();
            }
            out.emit(report::render_json(meta, r));
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
