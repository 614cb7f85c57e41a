// Command-line front end. Exit codes: 0 pass, 1 numerical failure, 2 invalid input.
#include <algorithm>
#include <fstream>
#include <limits>
#include <iostream>
#include <random>
#include <set>

#include <CLI11.hpp>

#include "strip/acceptance.hpp"
#include "strip/cmc.hpp"
#include "strip/flows.hpp"
#include "strip/io.hpp"
#include "strip/sklyanin.hpp"
#include "strip/sklyanin_algebra.hpp"
#include "strip/solution.hpp"

using namespace strip;
using json = nlohmann::json;

namespace {

// codes that blame the input rather than the numerics
const std::set<std::string> kInputErrors = {"invalid input",   "invalid seed",          "orbit collision",
                                            "degenerate degree", "Hermite case unsupported", "inconsistent divisor/curve",
                                            "degenerate contact angle", "window too small",  "malformed sigma",
                                            "cut ambiguity",   "inadmissible curve",    "invalid order"};

int fail(const std::string& code, const std::string& detail, int status) {
    std::cerr << json{{"error", code}, {"detail", detail}}.dump() << std::endl;
    return status;
}

struct Output {
    std::string path;
    void write(const json& j) const {
        const std::string s = j.dump(2) + "\n";
        if (path.empty()) std::cout << s;
        else std::ofstream(path) << s;
    }
};

// Parses a polynomial given as JSON, e.g. [[1,0],[0,0.5]] or [1, 2].
poly::Poly poly_arg(const std::string& s) {
    json j;
    try {
        j = json::parse(s);
    } catch (const json::exception& e) {
        throw Error("invalid input", std::string("polynomial: ") + e.what());
    }
    if (!j.is_array()) throw Error("invalid input", "polynomial must be a JSON array");
    poly::Poly p;
    for (const auto& c : j) p.push_back(io::complex_from(c));
    return p;
}

CVec z_arg(const std::string& path_or_json) {
    json j;
    if (!path_or_json.empty() && (path_or_json[0] == '[' || path_or_json[0] == '{')) {
        try {
            j = json::parse(path_or_json);
        } catch (const json::exception& e) {
            throw Error("invalid input", e.what());
        }
    } else {
        j = io::read_file(path_or_json);
    }
    if (j.is_object()) {
        if (!j.contains("z")) throw Error("invalid input", "JacobiPoint needs z");
        j = j["z"];
    }
    return io::vector_from(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-type sinh-Gordon solutions on a strip and Durham boundary certificates"};
    app.require_subcommand(1);

    Tolerances tol;
    std::map<std::string, double> tol_over;
    auto add_tols = [&](CLI::App* c) {
        for (const char* name :
             {"axis", "root_sep", "coeff", "orbit", "quad", "lattice", "theta", "flow", "flow_drift", "remainder"}) {
            std::string flag = std::string("--tol-") + name;
            std::replace(flag.begin(), flag.end(), '_', '-');
            c->add_option_function<double>(flag, [&, n = std::string(name)](double v) { tol_over[n] = v; },
                                           "override tolerance " + std::string(name));
        }
    };
    Output out;
    auto add_out = [&](CLI::App* c) { c->add_option("--out", out.path, "write JSON here instead of stdout"); };

    std::string curve_path, potential_path, z0_arg;
    double A = 0, B = 0;
    std::uint64_t seed = 0;

    // curve
    auto* curve = app.add_subcommand("curve", "spectral curves");
    curve->require_subcommand(1);
    auto* cv_validate = curve->add_subcommand("validate", "check admissibility");
    cv_validate->add_option("--curve", curve_path, "curve JSON")->required();
    auto* cv_random = curve->add_subcommand("random", "random admissible curve from root quadruples");
    int genus = 2;
    cv_random->add_option("--genus", genus, "even genus")->check(CLI::Range(2, 16));
    cv_random->add_option("--seed", seed)->required();
    for (auto* c : {cv_validate, cv_random}) add_tols(c), add_out(c);

    // periods
    auto* periods = app.add_subcommand("periods", "period matrix and cycle data");
    periods->add_option("--curve", curve_path)->required();
    bool with_cycles = false, theta_selftest = false;
    periods->add_flag("--cycles", with_cycles, "include the cycle polylines");
    periods->add_flag("--theta-selftest", theta_selftest, "also check the theta series on random points");
    periods->add_option("--seed", seed, "seed for --theta-selftest");
    add_tols(periods), add_out(periods);

    // solve
    auto* solve = app.add_subcommand("solve", "theta solution on a grid");
    solve->add_option("--curve", curve_path)->required();
    solve->add_option("--z0", z0_arg, "JacobiPoint file or inline JSON; default: a real-locus point");
    solve->add_option("--potential", potential_path, "take z0 from the divisor of this potential");
    double L = 1.0;
    int nx = 41, ny = 41;
    bool calibrate_flag = false;
    std::string csv_path, plot_path;
    solve->add_option("--L", L, "strip height");
    solve->add_option("--nx", nx);
    solve->add_option("--ny", ny);
    solve->add_option("--seed", seed, "seed for the default real-locus point");
    solve->add_flag("--calibrate", calibrate_flag, "search (D, kappa) instead of the frozen values");
    solve->add_option("--csv", csv_path, "write x,y,u,residual rows here");
    solve->add_option("--emit-plot-data", plot_path, "write a gnuplot matrix of u");
    solve->add_option("--A", A);
    solve->add_option("--B", B);
    add_tols(solve), add_out(solve);

    // durham
    auto* durham = app.add_subcommand("durham", "Durham boundary certificates");
    durham->require_subcommand(1);
    auto* dcheck = durham->add_subcommand("check", "membership of a potential in the Durham loci");
    auto* dscan = durham->add_subcommand("scan-L", "rationality scan for the second boundary");
    double Lmin = 0.05, Lmax = 20;
    for (auto* c : {dcheck, dscan}) {
        c->add_option("--curve", curve_path)->required();
        c->add_option("--A", A)->required();
        c->add_option("--B", B)->required();
        add_tols(c), add_out(c);
    }
    dcheck->add_option("--potential", potential_path)->required();
    auto* scan_pot = dscan->add_option("--potential", potential_path, "take z0 and S0 from this potential");
    auto* scan_z0 = dscan->add_option("--z0", z0_arg, "JacobiPoint file or inline JSON");
    scan_pot->excludes(scan_z0);
    auto* dsample = durham->add_subcommand("sample", "random real potential with the Sklyanin symmetry");
    std::string curve_out, potential_out;
    dsample->add_option("--A", A)->required();
    dsample->add_option("--B", B)->required();
    dsample->add_option("--genus", genus)->check(CLI::Range(2, 16));
    dsample->add_option("--seed", seed)->required();
    dsample->add_option("--curve-out", curve_out, "write the induced curve here")->required();
    dsample->add_option("--potential-out", potential_out, "write the potential here")->required();
    add_tols(dsample);
    dscan->add_option("--Lmin", Lmin);
    dscan->add_option("--Lmax", Lmax);

    // flow
    auto* flow = app.add_subcommand("flow", "Lax flows of potentials");
    flow->require_subcommand(1);
    auto* frun = flow->add_subcommand("run", "integrate one flow");
    std::string P_arg = "[1]", Q_arg = "[1]";
    double t_end = 0.1;
    int samples = 10;
    frun->add_option("--potential", potential_path)->required();
    frun->add_option("--curve", curve_path, "also report Abel images of the divisors");
    frun->add_option("--P", P_arg, "JSON coefficients of P");
    frun->add_option("--Q", Q_arg, "JSON coefficients of Q");
    frun->add_option("--t", t_end);
    frun->add_option("--samples", samples);
    add_tols(frun), add_out(frun);

    // algebra
    auto* algebra = app.add_subcommand("algebra", "two-variable gauge identities");
    algebra->require_subcommand(1);
    auto* aself = algebra->add_subcommand("selftest", "seeded identity checks");
    int q = 1, window = 3, trials = 100;
    aself->add_option("--q", q);
    aself->add_option("--window", window);
    aself->add_option("--trials", trials);
    aself->add_option("--seed", seed)->required();
    aself->add_option("--A", A);
    aself->add_option("--B", B);
    add_out(aself);

    // cmc
    auto* cmc = app.add_subcommand("cmc", "free-boundary CMC conversions");
    cmc->require_subcommand(1);
    auto* cab = cmc->add_subcommand("ab", "Durham coefficients from sphere contact data");
    SphereContact sc;
    std::string conv = "normal";
    cab->add_option("--R", sc.R)->required();
    cab->add_option("--theta", sc.theta)->required();
    cab->add_option("--eps", sc.epsilon)->required();
    cab->add_option("--convention", conv)->check(CLI::IsMember({"normal", "sphere"}));
    add_out(cab);

    // accept
    auto* accept = app.add_subcommand("accept", "run the acceptance suite");
    accept->add_option("--seed", seed)->required();
    bool quiet = false;
    accept->add_flag("--quiet", quiet, "no progress lines on stderr");
    add_out(accept);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return fail("invalid input", e.what(), 2);
    }

    try {
        for (const auto& [k, v] : tol_over) io::apply_tolerance(tol, k, v);
        auto load_curve = [&] { return Curve(io::curve_from(io::read_file(curve_path), tol), tol); };

        if (*cv_validate) {
            const SpectralPolynomial d = io::curve_from(io::read_file(curve_path), tol);
            const AdmissibilityReport rep = validate_spectral(d, tol);
            out.write({{"curve", io::to_json(d)}, {"report", io::to_json(rep)}, {"tolerances", io::to_json(tol)}});
            if (!rep.pass()) return fail(rep.failures.front(), "curve is not admissible", 1);
            return 0;
        }
        if (*cv_random) {
            if (genus % 2) throw Error("invalid input", "genus must be even");
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> rad(1.3, 3.0), ang(0.2, pi / 2 - 0.2);
            for (;;) {
                std::vector<cplx> seeds;
                for (int i = 0; i < genus / 2; ++i) seeds.push_back(std::polar(rad(rng), ang(rng)));
                try {
                    const SpectralPolynomial d = from_root_quadruples(seeds, tol);
                    json s = json::array();
                    for (cplx z : seeds) s.push_back(io::to_json(z));
                    out.write({{"seeds", s}, {"genus", d.genus}, {"coeffs", io::to_json(d)["coeffs"]}});
                    return 0;
                } catch (const Error&) {
                    continue;
                }
            }
        }
        if (*periods) {
            const PeriodData pd = period_matrix(load_curve());
            json j = io::to_json(pd);
            if (with_cycles) j["cycles"] = io::cycles_to_json(pd.cycles);
            if (theta_selftest) {
                if (!periods->count("--seed")) throw Error("invalid input", "--theta-selftest needs --seed");
                const Jacobian J(pd);
                const Theta wide(pd.Pi, tol.theta, 2.0);
                std::mt19937_64 rng(seed);
                std::uniform_real_distribution<double> u(-0.5, 0.5);
                double parity = 0, doubling = 0;
                for (int i = 0; i < 100; ++i) {
                    CVec z(J.genus());
                    for (auto& v : z) v = cplx(u(rng), u(rng));
                    const cplx t = J.theta()(z);
                    parity = std::max(parity, std::abs(J.theta()(-z) - t) / std::abs(t));
                    doubling = std::max(doubling, std::abs(wide(z) - t) / std::max(1.0, std::abs(t)));
                }
                j["theta_selftest"] = {{"parity", parity}, {"radius_doubling", doubling}, {"radius2", J.theta().radius()}};
            }
            out.write(j);
            const PeriodInvariants inv = period_invariants(pd);
            return (inv.re_half < 1e-8 && inv.flip < 1e-8 && inv.symmetric < 1e-8 && inv.min_im_eig > 0) ? 0 : 1;
        }
        if (*solve) {
            const Jacobian J(period_matrix(load_curve()));
            CVec z0;
            if (!potential_path.empty()) {
                const Potential xi = io::potential_from(io::read_file(potential_path));
                z0 = J.potential_point(divisor_of_potential(xi, J.curve()));
            } else if (!z0_arg.empty()) {
                z0 = z_arg(z0_arg);
                if (z0.size() != J.genus()) throw Error("invalid input", "z0 has the wrong length");
            } else {
                if (!solve->count("--seed")) throw Error("invalid input", "--seed is required for a random z0");
                std::mt19937_64 rng(seed);
                std::uniform_real_distribution<double> u(-0.2, 0.2);
                z0 = CVec(J.genus());
                for (int i = 0; i < J.genus() / 2; ++i) {
                    const cplx w(u(rng), u(rng));
                    z0(i) = w + J.abel_infinity()(i);
                    z0(J.genus() - 1 - i) = std::conj(w);
                }
            }
            SolutionParams s = make_solution(J, z0);
            json cal_json;
            if (calibrate_flag) {
                const Calibration cal = calibrate(J, z0);
                s.D = cal.D;
                s.kappa = cal.kappa;
                cal_json = {{"D", io::to_json(cal.D)}, {"kappa", io::to_json(cal.kappa)}, {"residual", cal.residual}};
            }
            const Grid grid{-1, 1, 0, L, nx, ny};
            const ResidualReport rep = pde_residual(s, grid);
            std::vector<double> xs;
            for (int i = 0; i < nx; ++i) xs.push_back(grid.x0 + (grid.x1 - grid.x0) * i / std::max(1, nx - 1));
            const ResidualReport b0 = durham_boundary_residual(s, A, B, 0.0, false, xs);
            const ResidualReport bL = durham_boundary_residual(s, A, B, L, true, xs);
            if (!csv_path.empty() || !plot_path.empty()) {
                std::ofstream csv, plot;
                if (!csv_path.empty()) {
                    csv.open(csv_path);
                    csv << "x,y,u,residual\n";
                    csv.precision(17);
                }
                if (!plot_path.empty()) {
                    plot.open(plot_path);
                    plot.precision(17);
                }
                for (int j = 0; j < ny; ++j) {
                    for (int i = 0; i < nx; ++i) {
                        const double x = grid.x0 + (grid.x1 - grid.x0) * i / std::max(1, nx - 1);
                        const double y = grid.y0 + (grid.y1 - grid.y0) * j / std::max(1, ny - 1);
                        const cplx u = evaluate_u(s, x, y);
                        if (csv) csv << x << "," << y << "," << u.real() << "," << std::abs(pde_residual_at(s, x, y, 1e-3)) << "\n";
                        if (plot) plot << (i ? " " : "") << u.real();
                    }
                    if (plot) plot << "\n";
                }
            }
            auto rj = [](const ResidualReport& r) {
                return json{{"max", r.max}, {"rms", r.rms}, {"max_imag_u", r.max_imag_u}, {"points", r.points}};
            };
            json j = {{"z0", io::to_json(z0)},
                      {"D", io::to_json(s.D)},
                      {"kappa", io::to_json(s.kappa)},
                      {"real_locus", is_real_locus(J, z0, tol.lattice).residual},
                      {"pde", rj(rep)},
                      {"boundary_y0", rj(b0)},
                      {"boundary_yL", rj(bL)},
                      {"tolerances", io::to_json(tol)}};
            if (!cal_json.is_null()) j["calibration"] = cal_json;
            out.write(j);
            return rep.max < 1e-5 ? 0 : 1;
        }
        if (*dcheck) {
            const Jacobian J(period_matrix(load_curve()));
            const Potential xi = io::potential_from(io::read_file(potential_path));
            if (xi.g != J.genus()) throw Error("invalid input", "potential genus differs from the curve");
            const SklyaninSet S = sklyanin_set(J.curve(), A, B);
            const auto subs = enumerate_special_subsets(J.curve(), S);
            const Subset own = special_points_of(xi, S);
            const CVec z0 = J.potential_point(divisor_of_potential(xi, J.curve()));
            {
                json rows = json::array();
                bool any = false;
                for (const auto& s0 : subs) {
                    for (bool comp : {false, true}) {
                        const DurhamReport r = durham_membership(J, xi, S, s0, comp);
                        any = any || (r.verdict && !comp);
                        rows.push_back({{"subset", s0},
                                        {"complementary", comp},
                                        {"subspace_residual", r.subspace_residual},
                                        {"eigenline_residuals", r.eigenline_residuals},
                                        {"verdict", r.verdict}});
                    }
                }
                const SolutionParams sol = make_solution(J, z0);
                std::vector<double> xs{-0.5, -0.25, 0, 0.25, 0.5};
                const ResidualReport b0 = durham_boundary_residual(sol, A, B, 0.0, false, xs);
                out.write({{"regime", regime_name(S.K.regime)},
                           {"sklyanin_points", S.points.size()},
                           {"special_subsets", subs.size()},
                           {"eigen_subset", own},
                           {"q_sklyanin_residual", q_sklyanin_residual(xi, xi.g - 1, KMatrix(A, B))},
                           {"reports", rows},
                           {"boundary_y0", b0.max},
                           {"tolerances", io::to_json(tol)}});
                return any ? 0 : 1;
            }
        }
        if (*dsample) {
            if (genus % 2) throw Error("invalid input", "genus must be even");
            const KMatrix K(A, B);
            const CMat N = sklyanin_potential_kernel(genus, genus - 1, K);
            if (N.cols() == 0) throw Error("no kernel sample", "no admissible Sklyanin potentials for these A, B");
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> nd;
            for (int tries = 0; tries < 1000; ++tries) {
                RVec c(N.cols());
                for (auto& x : c) x = nd(rng);
                Potential xi = potential_from_flat(genus, N * c.cast<cplx>());
                SpectralPolynomial d;
                try {
                    d = induced_spectral_polynomial(xi, tol);
                    xi = normalize_potential(xi);
                    if ((I * xi.sigma_m1()).real() < 0) xi = -xi;
                    period_matrix(Curve(d, tol));
                } catch (const Error&) {
                    continue;
                }
                std::ofstream(curve_out) << io::to_json(d).dump(2) << "\n";
                std::ofstream(potential_out) << io::to_json(xi).dump(2) << "\n";
                return 0;
            }
            return fail("no kernel sample", "no admissible draw in 1000 tries", 1);
        }
        if (*dscan) {
            const Jacobian J(period_matrix(load_curve()));
            const SklyaninSet S = sklyanin_set(J.curve(), A, B);
            CVec z0;
            if (!potential_path.empty()) {
                const Potential xi = io::potential_from(io::read_file(potential_path));
                if (xi.g != J.genus()) throw Error("invalid input", "potential genus differs from the curve");
                z0 = J.potential_point(divisor_of_potential(xi, J.curve()));
            } else if (!z0_arg.empty()) {
                z0 = z_arg(z0_arg);
                if (z0.size() != J.genus()) throw Error("invalid input", "z0 has the wrong length");
            } else {
                throw Error("invalid input", "scan-L needs --potential or --z0");
            }
            // S0 is the special subset whose Abel image matches Ψ(z0) best
            Subset best;
            double best_d = std::numeric_limits<double>::infinity();
            for (const auto& s0 : enumerate_special_subsets(J.curve(), S)) {
                const double d = J.distance(Psi(z0) - abel_subset(J, S, s0));
                if (d < best_d) best_d = d, best = s0;
            }
            const SolutionParams sol = make_solution(J, z0);
            const CVec Uy = sol.velocity(I);
            const auto cands = rationality_scan(J, z0, Uy, abel_subset(J, S, best), Lmin, Lmax);
            json rows = json::array();
            for (const auto& c : cands) {
                std::vector<double> xs{-0.5, 0, 0.5};
                rows.push_back({{"L", c.L},
                                {"residual", c.residual},
                                {"z1", io::to_json(c.z1)},
                                {"z1_residual", c.z1_residual},
                                {"complementary_boundary", durham_boundary_residual(sol, A, B, c.L, true, xs).max}});
            }
            out.write({{"candidates", rows},
                       {"subset", best},
                       {"subset_residual", best_d},
                       {"Lmin", Lmin}, {"Lmax", Lmax}, {"tolerances", io::to_json(tol)}});
            return 0;
        }
        if (*frun) {
            const Potential xi = io::potential_from(io::read_file(potential_path));
            FlowOptions opt;
            opt.abs_tol = opt.rel_tol = tol.flow;
            opt.drift_tol = tol.flow_drift;
            opt.samples = samples;
            const auto path = integrate_flow(xi, poly_arg(P_arg), poly_arg(Q_arg), t_end, opt);
            std::optional<Jacobian> J;
            if (!curve_path.empty()) J.emplace(period_matrix(load_curve()));
            json traj = json::array();
            for (const auto& st : path) {
                json row = {{"t", st.t}, {"potential", io::to_json(st.xi)}, {"det_drift", st.det_drift}};
                try {
                    row["u"] = io::to_json(u_from_potential(st.xi));
                } catch (const Error&) {
                }
                if (J) row["abel"] = io::to_json(J->abel(divisor_of_potential(st.xi, J->curve())));
                traj.push_back(row);
            }
            out.write({{"trajectory", traj}, {"tolerances", io::to_json(tol)}});
            return 0;
        }
        if (*aself) {
            const double a = aself->count("--A") ? A : 0.7, b = aself->count("--B") ? B : -0.3;
            json rows = json::array();
            bool ok = true;
            for (const auto& t : algebra_selftest(q, window, trials, seed, a, b)) {
                ok = ok && t.pass();
                rows.push_back({{"check", t.name}, {"passed", t.passed}, {"trials", t.trials}, {"worst", t.worst}, {"pass", t.pass()}});
            }
            out.write({{"q", q}, {"window", window}, {"seed", seed}, {"A", a}, {"B", b}, {"checks", rows}});
            return ok ? 0 : 1;
        }
        if (*cab) {
            sc.convention = conv == "sphere" ? AngleConvention::sphere : AngleConvention::normal;
            const auto ab = ab_from_contact(sc);
            out.write({{"A", ab.A}, {"B", ab.B}, {"convention", conv}});
            return 0;
        }
        if (*accept) {
            const auto results = run_acceptance(seed, quiet ? nullptr : &std::cerr);
            const json rep = acceptance_report(results, seed);
            out.write(rep);
            return rep["pass"].get<bool>() ? 0 : 1;
        }
    } catch (const Error& e) {
        return fail(e.code(), e.what(), kInputErrors.count(e.code()) ? 2 : 1);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
