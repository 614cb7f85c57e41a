#include "strip/acceptance.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <random>

#include "strip/cmc.hpp"
#include "strip/flows.hpp"
#include "strip/io.hpp"
#include "strip/sklyanin.hpp"
#include "strip/sklyanin_algebra.hpp"
#include "strip/solution.hpp"

namespace strip {

using json = nlohmann::json;

namespace {

const std::vector<cplx> kSeedsG2 = {std::polar(2.0, pi / 4)};
const std::vector<cplx> kSeedsG4 = {std::polar(2.0, pi / 4), std::polar(3.0, pi / 3)};

struct Fixtures {
    std::unique_ptr<Jacobian> g2, g4;
    const Jacobian& ref2() {
        if (!g2) g2 = std::make_unique<Jacobian>(period_matrix(Curve::from_seeds(kSeedsG2)));
        return *g2;
    }
    const Jacobian& ref4() {
        if (!g4) g4 = std::make_unique<Jacobian>(period_matrix(Curve::from_seeds(kSeedsG4)));
        return *g4;
    }
};

double uni(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

cplx rand_c(std::mt19937_64& rng) { return {uni(rng, -1, 1), uni(rng, -1, 1)}; }

poly::Poly rand_poly(std::mt19937_64& rng, int deg) {
    poly::Poly p(deg + 1);
    for (auto& c : p) c = rand_c(rng);
    return p;
}

// A finite point off every cut, |λ| in [0.2, 5].
SurfacePoint random_point(const Curve& c, std::mt19937_64& rng) {
    for (;;) {
        const cplx l = std::polar(std::exp(uni(rng, std::log(0.2), std::log(5.0))), uni(rng, 0.1, 2 * pi - 0.1));
        if (c.on_cut(l, 1e-3)) continue;
        return c.point(l, uni(rng, 0, 1) < 0.5 ? Sheet::upper : Sheet::lower);
    }
}

// Real locus point: Φ(z) = 𝒜(∞) holds for z_i = w_i + 𝒜(∞)_i, z_{g+1-i} = conj w_i.
CVec real_locus_point(const Jacobian& J, std::mt19937_64& rng) {
    const int g = J.genus();
    CVec z(g);
    for (int i = 0; i < g / 2; ++i) {
        const cplx w(uni(rng, -0.3, 0.3), uni(rng, -0.2, 0.2));
        z(i) = w + J.abel_infinity()(i);
        z(g - 1 - i) = std::conj(w);
    }
    return z;
}

// Anti-real potentials with imaginary coefficients: ω = i·a with a palindromic, σ = i·s,
// τ_k = -conj σ_{g-1-k}. Their λ Det ξ has real coefficients.
struct RealSample {
    Potential xi;
    std::shared_ptr<Jacobian> J;
};

std::optional<RealSample> real_potential_sample(int g, std::mt19937_64& rng, int max_tries = 400) {
    for (int t = 0; t < max_tries; ++t) {
        Potential xi = Potential::zero(g);
        for (int k = 0; k < (g + 1) / 2; ++k) {
            const double a = uni(rng, -1, 1);
            xi.omega[k] = I * a;
            xi.omega[g - 1 - k] = I * a;
        }
        for (int k = 0; k <= g; ++k) xi.sigma[k] = I * uni(rng, -1, 1);
        xi.sigma[0] = -I * uni(rng, 0.2, 1.0);
        for (int k = 0; k <= g; ++k) xi.tau[k] = -std::conj(xi.sigma[g - k]);
        SpectralPolynomial d;
        try {
            d = induced_spectral_polynomial(xi);
        } catch (const Error&) {
            continue;
        }
        xi = normalize_potential(xi);
        if ((I * xi.sigma_m1()).real() < 0) xi = -xi;
        try {
            auto J = std::make_shared<Jacobian>(period_matrix(Curve(d)));
            return RealSample{xi, J};
        } catch (const Error&) {
            continue;
        }
    }
    return std::nullopt;
}

// Criterion 8 and 11 share the Sklyanin samples.
struct DurhamSample {
    Potential xi;
    std::shared_ptr<Jacobian> J;
    SklyaninSet S;
    Subset s0;
    std::vector<Subset> subsets;
    CVec z0;
};

constexpr double kDurA = 0.4, kDurB = -0.4;

std::vector<DurhamSample> durham_samples(int g, int wanted, std::mt19937_64& rng, int& tries, int max_tries = 400) {
    const KMatrix K(kDurA, kDurB);
    const CMat N = sklyanin_potential_kernel(g, g - 1, K);
    std::normal_distribution<double> nd;
    std::vector<DurhamSample> out;
    tries = 0;
    while (int(out.size()) < wanted && tries < max_tries) {
        ++tries;
        RVec c(N.cols());
        for (auto& x : c) x = nd(rng);
        Potential xi = potential_from_flat(g, N * c.cast<cplx>());
        SpectralPolynomial d;
        try {
            d = induced_spectral_polynomial(xi);
        } catch (const Error&) {
            continue;
        }
        xi = normalize_potential(xi);
        if ((I * xi.sigma_m1()).real() < 0) xi = -xi;
        try {
            DurhamSample s;
            s.xi = xi;
            s.J = std::make_shared<Jacobian>(period_matrix(Curve(d)));
            const Curve& cv = s.J->curve();
            s.S = sklyanin_set(cv, kDurA, kDurB);
            s.subsets = enumerate_special_subsets(cv, s.S);
            s.s0 = special_points_of(xi, s.S);
            s.z0 = s.J->potential_point(divisor_of_potential(xi, cv));
            out.push_back(std::move(s));
        } catch (const Error&) {
            continue;
        }
    }
    return out;
}

std::vector<double> boundary_xs() {
    std::vector<double> xs;
    for (int i = 0; i <= 8; ++i) xs.push_back(-1.0 + 0.25 * i);
    return xs;
}

// ---------------------------------------------------------------------------

CriterionResult period_invariants_criterion(Fixtures& fx) {
    CriterionResult r{1, "period matrix invariants"};
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (const Jacobian* J : {&fx.ref2(), &fx.ref4()}) {
        const PeriodInvariants inv = period_invariants(J->periods());
        const bool pass =
            inv.re_half < 1e-8 && inv.flip < 1e-8 && inv.symmetric < 1e-8 && inv.min_im_eig > 0 && inv.normalization < 1e-9;
        ok = ok && pass;
        r.detail["g" + std::to_string(J->genus())] = {{"re_half", inv.re_half},     {"flip", inv.flip},
                                                     {"symmetric", inv.symmetric}, {"min_im_eig", inv.min_im_eig},
                                                     {"normalization", inv.normalization}, {"pass", pass}};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.detail["runtime_under_30s"] = secs < 30;
    r.pass = ok && secs < 30;
    return r;
}

CriterionResult abel_criterion(Fixtures& fx, std::mt19937_64& rng) {
    CriterionResult r{2, "Abel map identities"};
    bool ok = true;
    for (const Jacobian* J : {&fx.ref2(), &fx.ref4()}) {
        const Curve& c = J->curve();
        double s1 = 0, s2 = 0, s3 = 0;
        for (int i = 0; i < 20; ++i) {
            const InvolutionResiduals ir = involution_identity_check(*J, random_point(c, rng));
            s1 = std::max(s1, ir.s1);
            s2 = std::max(s2, ir.s2);
            s3 = std::max(s3, ir.s3);
        }
        const double inf2 = J->distance(2.0 * J->abel_infinity());
        CVec pm = CVec::Zero(J->genus());
        for (double l : {1.0, -1.0})
            for (Sheet sh : {Sheet::upper, Sheet::lower}) pm += J->abel(c.point(l, sh));
        const double pm1 = J->distance(pm);
        const SklyaninSet S = sklyanin_set(c, 1.0, 0.0);
        Subset all(S.points.size());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = int(k);
        const double aS = J->distance(abel_subset(*J, S, all));
        const bool pass = s1 < 1e-8 && s2 < 1e-8 && s3 < 1e-8 && inf2 < 1e-7 && pm1 < 1e-7 && aS < 1e-7;
        ok = ok && pass;
        r.detail["g" + std::to_string(J->genus())] = {{"sigma1", s1},       {"sigma2", s2},   {"sigma3", s3},
                                                     {"two_abel_inf", inf2}, {"over_pm1", pm1}, {"sklyanin_set", aS},
                                                     {"pass", pass}};
    }
    r.pass = ok;
    return r;
}

CriterionResult second_kind_criterion(Fixtures& fx, std::mt19937_64& rng) {
    CriterionResult r{3, "second-kind symmetries"};
    bool ok = true;
    for (const Jacobian* J : {&fx.ref2(), &fx.ref4()}) {
        const PeriodData& pd = J->periods();
        const int g = J->genus();
        double conj_half = 0, swap_half = 0, swap_printed = 0;
        for (int i = 0; i < 20; ++i) {
            const poly::Poly P = rand_poly(rng, int(uni(rng, 0, g + 1))), Q = rand_poly(rng, int(uni(rng, 0, g + 1)));
            const CVec v = second_kind_V(pd, P, Q);
            const CVec vc = second_kind_V(pd, poly::conj(P), poly::conj(Q));
            const CVec vs = second_kind_V(pd, Q, P);
            for (int k = 0; k < g; ++k) {
                conj_half = std::max(conj_half, std::abs(vc(k) + std::conj(v(k))));
                swap_half = std::max(swap_half, std::abs(vs(k) + std::conj(v(g - 1 - k))));
                swap_printed = std::max(swap_printed, std::abs(vs(k) - std::conj(v(g - 1 - k))));
            }
        }
        double recip = 0;
        for (int i = 0; i < 10; ++i) {
            const poly::Poly P = rand_poly(rng, g - 1), Q = rand_poly(rng, g - 1);
            const CVec a = second_kind_V(pd, P, Q);
            const CVec b = beta_periods(pd, build_omega(pd, P, Q));
            recip = std::max(recip, (a - b).cwiseAbs().maxCoeff());
        }
        const double smin = injectivity_check(pd).min_singular;
        const bool pass = conj_half < 1e-8 && swap_half < 1e-8 && recip < 1e-6 && smin > 1e-8;
        ok = ok && pass;
        r.detail["g" + std::to_string(g)] = {{"conjugation_identity", conj_half},
                                             {"swap_identity", swap_half},
                                             {"swap_identity_printed_sign", swap_printed},
                                             {"reciprocity_vs_quadrature", recip},
                                             {"min_singular", smin},
                                             {"pass", pass}};
    }
    r.pass = ok;
    return r;
}

CriterionResult theta_criterion(Fixtures& fx, std::mt19937_64& rng) {
    CriterionResult r{4, "theta function"};
    bool ok = true;
    for (const Jacobian* J : {&fx.ref2(), &fx.ref4()}) {
        const int g = J->genus();
        const Theta& th = J->theta();
        const Theta wide(J->Pi(), J->curve().tolerances().theta, 2.0);
        double parity = 0, period = 0, quasi = 0, doubling = 0;
        for (int i = 0; i < 100; ++i) {
            CVec z(g);
            for (int k = 0; k < g; ++k) z(k) = cplx(uni(rng, -1, 1), uni(rng, -0.5, 0.5));
            const cplx t = th(z);
            const double scale = std::max(std::abs(t), 1e-300);
            parity = std::max(parity, std::abs(th(-z) - t) / scale);
            doubling = std::max(doubling, std::abs(wide(z) - t) / std::max(1.0, std::abs(t)));
            const int j = i % g;
            CVec e = CVec::Zero(g);
            e(j) = 1.0;
            period = std::max(period, std::abs(th(z + e) - t) / scale);
            const cplx fac = std::exp(-I * pi * J->Pi()(j, j) - 2.0 * pi * I * z(j));
            quasi = std::max(quasi, std::abs(th(z + J->Pi().col(j)) - fac * t) / (std::abs(fac) * scale));
        }
        const bool pass = parity < 1e-12 && period < 1e-12 && quasi < 1e-10 && doubling < 1e-13;
        ok = ok && pass;
        r.detail["g" + std::to_string(g)] = {{"parity", parity},          {"integer_period", period},
                                             {"quasi_period", quasi},     {"radius_doubling", doubling},
                                             {"pass", pass}};
    }
    r.pass = ok;
    return r;
}

CriterionResult solution_criterion(Fixtures& fx, std::mt19937_64& rng) {
    CriterionResult r{5, "theta solution quality"};
    const auto t0 = std::chrono::steady_clock::now();
    const Jacobian& J = fx.ref2();
    const CVec z0 = real_locus_point(J, rng);
    const RealLocusResult rl = is_real_locus(J, z0, 1e-7);
    const Calibration cal = calibrate(J, z0);
    SolutionParams s = make_solution(J, z0, cal.D, cal.kappa);
    const ResidualReport rep = pde_residual(s, Grid{}, 1e-3);
    // a few more real-locus points for the reality claim
    double imag = rep.max_imag_u;
    for (int i = 0; i < 4; ++i) {
        SolutionParams si = make_solution(J, real_locus_point(J, rng), cal.D, cal.kappa);
        imag = std::max(imag, pde_residual(si, Grid{-1, 1, 0, 1, 9, 9}, 1e-3).max_imag_u);
    }
    // negative controls
    CVec shift(J.genus());
    for (auto& v : shift) v = cplx(uni(rng, 0.1, 0.4), uni(rng, 0.1, 0.4));
    SolutionParams wrong = s;
    wrong.D = cal.D + shift;
    const double wrong_res = pde_residual(wrong, Grid{-1, 1, 0, 1, 9, 9}, 1e-3).max;
    double min_nonreal_imag = INFINITY, min_phi = INFINITY;
    for (int i = 0; i < 5; ++i) {
        CVec z = real_locus_point(J, rng);
        z(0) += cplx(0, uni(rng, 0.15, 0.35));
        min_phi = std::min(min_phi, J.distance(Phi(z) - J.abel_infinity()));
        SolutionParams sn = make_solution(J, z, cal.D, cal.kappa);
        min_nonreal_imag = std::min(min_nonreal_imag, pde_residual(sn, Grid{-1, 1, 0, 1, 9, 9}, 1e-3).max_imag_u);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool same_D = J.distance(cal.D - J.abel_infinity()) < 1e-12;
    r.pass = rl.real && rep.max < 1e-5 && imag < 1e-8 && wrong_res > 1e-2 && min_phi > 0.1 && min_nonreal_imag > 1e-3 &&
             secs < 300;
    r.detail = {{"calibrated_D_is_abel_infinity", same_D},
                {"kappa", io::to_json(cal.kappa)},
                {"calibration_residual", cal.residual},
                {"pde_max", rep.max},
                {"pde_rms", rep.rms},
                {"grid_points", rep.points},
                {"max_imag_u_real_locus", imag},
                {"wrong_D_residual", wrong_res},
                {"nonreal_min_phi_distance", min_phi},
                {"nonreal_min_imag_u", min_nonreal_imag},
                {"runtime_under_5min", secs < 300}};
    return r;
}

CriterionResult reality_criterion(std::mt19937_64& rng) {
    CriterionResult r{6, "reality dictionary"};
    int real_pass = 0, perturbed = 0, agree = 0, total = 0;
    json rows = json::array();
    for (int i = 0; i < 5; ++i) {
        auto smp = real_potential_sample(2, rng);
        if (!smp) break;
        const Jacobian& J = *smp->J;
        const Curve& c = J.curve();
        const Divisor D = divisor_of_potential(smp->xi, c);
        auto check = [&](const Potential& xi, const Divisor& d, const char* kind) {
            const RealityReport rr = reality_check(xi);
            const bool reality = rr.pass(1e-8);
            const double phi = J.distance(Phi(J.abel(d)) - J.abel_infinity());
            const bool locus = phi < 1e-7;
            ++total;
            if (reality == locus) ++agree;
            if (reality) ++real_pass;
            rows.push_back({{"kind", kind}, {"reality_residual", rr.residual()}, {"phi_distance", phi}, {"agree", reality == locus}});
        };
        check(smp->xi, D, "real");
        // move one point of the divisor off the real locus
        Divisor Dp = D;
        for (int attempt = 0; attempt < 20; ++attempt) {
            const cplx l = D.points[0].lambda * (1.0 + 0.2 * std::polar(1.0, uni(rng, 0, 2 * pi)));
            if (c.on_cut(l, 1e-3)) continue;
            Dp.points[0] = c.point(l, D.points[0].sheet);
            try {
                check(potential_from_divisor(Dp, c), Dp, "perturbed");
                ++perturbed;
            } catch (const Error&) {
                continue;
            }
            break;
        }
    }
    r.pass = total >= 10 && agree == total && real_pass >= 1 && perturbed >= 1 && real_pass < total;
    r.detail = {{"samples", total}, {"agreeing", agree}, {"reality_passing", real_pass}, {"rows", rows}};
    return r;
}

CriterionResult sklyanin_structure_criterion(Fixtures& fx) {
    CriterionResult r{7, "Sklyanin structure"};
    const Curve& c = fx.ref2().curve();
    bool ok = true;
    json cases = json::array();
    struct Case {
        double A, B;
        std::size_t roots, points, subsets;
    };
    for (const Case& k : {Case{1.0, 0.0, 4, 8, 4}, Case{0.7, -0.3, 4, 8, 4}, Case{0.5, -0.5, 2, 4, 2}, Case{0.5, 0.5, 2, 4, 2}}) {
        const KMatrix K(k.A, k.B);
        const std::vector<double> roots = det_K_roots(K);
        double pairing = 0;
        for (double x : roots) {
            double best = INFINITY;
            for (double y : roots) best = std::min(best, std::abs(x * y - 1));
            pairing = std::max(pairing, best);
        }
        const SklyaninSet S = sklyanin_set(c, k.A, k.B);
        const auto subs = enumerate_special_subsets(c, S);
        const double dp = std::abs(det_K(k.A, k.B, 1.0) - 16 * (k.A - k.B) * (k.A - k.B));
        const double dm = std::abs(det_K(k.A, k.B, -1.0) - 16 * (k.A + k.B) * (k.A + k.B));
        const double scale = std::max(1.0, 16 * (std::abs(k.A) + std::abs(k.B)) * (std::abs(k.A) + std::abs(k.B)));
        const bool pass = roots.size() == k.roots && pairing < 1e-10 && S.points.size() == k.points &&
                          subs.size() == k.subsets && dp < 1e-12 * scale && dm < 1e-12 * scale;
        ok = ok && pass;
        cases.push_back({{"A", k.A},
                         {"B", k.B},
                         {"regime", regime_name(K.regime)},
                         {"real_roots", roots.size()},
                         {"reciprocal_pairing", pairing},
                         {"points", S.points.size()},
                         {"special_subsets", subs.size()},
                         {"det_at_plus_one", dp},
                         {"det_at_minus_one", dm},
                         {"pass", pass}});
    }
    r.pass = ok;
    r.detail = {{"cases", cases}};
    return r;
}

CriterionResult durham_criterion(std::vector<DurhamSample>& samples, int tries) {
    CriterionResult r{8, "Durham certification"};
    json rows = json::array();
    int good = 0;
    double worst_sub = 0, worst_eig = 0, worst_bd = 0, min_neg_sub = INFINITY, min_neg_bd = INFINITY,
           min_swap_eig = INFINITY;
    const auto xs = boundary_xs();
    for (auto& s : samples) {
        const Jacobian& J = *s.J;
        const DurhamReport rep = durham_membership(J, s.xi, s.S, s.s0);
        bool listed = false;
        for (const auto& sub : s.subsets) listed = listed || sub == s.s0;
        const SolutionParams sol = make_solution(J, s.z0);
        const ResidualReport bd = durham_boundary_residual(sol, kDurA, kDurB, 0.0, false, xs);
        // off the subspace: translate in y
        const CVec off = s.z0 + 0.37 * sol.velocity(I);
        const double neg_sub = J.distance(Psi(off) - abel_subset(J, s.S, s.s0));
        const ResidualReport neg_bd = durham_boundary_residual(make_solution(J, off), kDurA, kDurB, 0.0, false, xs);
        const DurhamReport swapped = durham_membership(J, s.xi, s.S, complement(s.S, s.s0));
        const bool pass = listed && rep.verdict && rep.subspace_residual < 1e-7 && rep.max_eigenline < 1e-8 &&
                          bd.max < 1e-4 && bd.max_imag_u < 1e-8 && neg_sub > 1e-3 && neg_bd.max > 1e-2 &&
                          !swapped.verdict;
        if (pass) ++good;
        worst_sub = std::max(worst_sub, rep.subspace_residual);
        worst_eig = std::max(worst_eig, rep.max_eigenline);
        worst_bd = std::max(worst_bd, bd.max);
        min_neg_sub = std::min(min_neg_sub, neg_sub);
        min_neg_bd = std::min(min_neg_bd, neg_bd.max);
        min_swap_eig = std::min(min_swap_eig, swapped.max_eigenline);
        rows.push_back({{"genus", J.genus()},
                        {"subset_listed", listed},
                        {"subspace_residual", rep.subspace_residual},
                        {"eigenline_residual", rep.max_eigenline},
                        {"boundary_residual", bd.max},
                        {"off_subspace_distance", neg_sub},
                        {"off_subspace_boundary", neg_bd.max},
                        {"complement_eigenline", swapped.max_eigenline},
                        {"pass", pass}});
    }
    r.pass = good >= 5 && good == int(samples.size());
    r.detail = {{"A", kDurA},
                {"B", kDurB},
                {"samples", samples.size()},
                {"draws", tries},
                {"passing", good},
                {"worst_subspace", worst_sub},
                {"worst_eigenline", worst_eig},
                {"worst_boundary", worst_bd},
                {"min_off_subspace_distance", min_neg_sub},
                {"min_off_subspace_boundary", min_neg_bd},
                {"min_complement_eigenline", min_swap_eig},
                {"rows", rows}};
    return r;
}

CriterionResult algebra_criterion(std::uint64_t seed) {
    CriterionResult r{9, "two-variable gauge algebra"};
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    json out = json::object();
    for (auto [q, w] : {std::pair{1, 3}, std::pair{3, 4}}) {
        json rows = json::array();
        for (const IdentityTally& t : algebra_selftest(q, w, 100, seed + std::uint64_t(q))) {
            ok = ok && t.pass();
            rows.push_back({{"check", t.name}, {"passed", t.passed}, {"trials", t.trials}, {"worst", t.worst}});
        }
        out["q" + std::to_string(q)] = rows;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out["runtime_under_1min"] = secs < 60;
    r.pass = ok && secs < 60;
    r.detail = out;
    return r;
}

CriterionResult flow_criterion(Fixtures& fx, std::mt19937_64& rng) {
    CriterionResult r{10, "flows and straight lines"};
    const Jacobian& J = fx.ref2();
    const Curve& c = J.curve();
    const int g = J.genus();
    Divisor D;
    D.add(c.point(cplx(0.4, 0.9), Sheet::upper));
    D.add(c.point(cplx(-1.3, 0.2), Sheet::lower));
    const Potential xi = potential_from_divisor(D, c);
    const CVec a0 = J.abel(divisor_of_potential(xi, c));
    double line = 0, literal = 0, drift = 0;
    const double t = 0.05;
    for (int i = 0; i < 3; ++i) {
        const poly::Poly P = rand_poly(rng, g - 1), Q = rand_poly(rng, g - 1);
        const auto path = integrate_flow(xi, P, Q, t);
        drift = std::max(drift, path.back().det_drift);
        const CVec at = J.abel(divisor_of_potential(path.back().xi, c));
        const CVec V = second_kind_V(J.periods(), P, Q);
        line = std::max(line, J.distance(at - a0 - t * kDefaultKappa * V));
        literal = std::max(literal, J.distance(at - a0 - t * V));
    }
    // u from the flow against u from theta; complex divisors agree modulo iπ
    const SolutionParams s = make_solution(J, J.potential_point(D));
    auto mod_ipi = [](cplx d) {
        const double k = std::round(d.imag() / pi);
        return std::abs(d - cplx(0, k * pi));
    };
    double complex_gap = 0;
    for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{0.3, 0.0}, std::pair{-0.2, 0.0}, std::pair{0.0, 0.2}}) {
        const Potential f = y == 0 ? flow_to(xi, {1.0}, {1.0}, x) : flow_to(xi, {I}, {I}, y);
        complex_gap = std::max(complex_gap, mod_ipi(evaluate_u(s, x, y) - u_from_potential(f)));
    }
    double real_gap = INFINITY;
    if (auto smp = real_potential_sample(2, rng)) {
        const Jacobian& Jr = *smp->J;
        const SolutionParams sr = make_solution(Jr, Jr.potential_point(divisor_of_potential(smp->xi, Jr.curve())));
        real_gap = 0;
        for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{0.25, 0.0}, std::pair{0.0, 0.15}, std::pair{0.0, -0.1}}) {
            const Potential f = y == 0 ? flow_to(smp->xi, {1.0}, {1.0}, x) : flow_to(smp->xi, {I}, {I}, y);
            real_gap = std::max(real_gap, std::abs(evaluate_u(sr, x, y) - u_from_potential(f, 0.0)));
        }
    }
    r.pass = line < 1e-5 && drift < 1e-9 && complex_gap < 1e-4 && real_gap < 1e-4;
    r.detail = {{"kappa", io::to_json(kDefaultKappa)},
                {"straight_line_residual", line},
                {"literal_plus_tV_residual", literal},
                {"det_drift", drift},
                {"u_gap_complex_divisor_mod_i_pi", complex_gap},
                {"u_gap_real_potential", real_gap}};
    return r;
}

CriterionResult rationality_criterion(std::vector<DurhamSample>& samples) {
    CriterionResult r{11, "rationality and the second boundary"};
    json rows = json::array();
    bool ok = true;
    int found = 0;
    double identity = 0;
    const auto xs = boundary_xs();
    for (auto& s : samples) {
        const Jacobian& J = *s.J;
        const SolutionParams sol = make_solution(J, s.z0);
        const CVec Uy = sol.velocity(I);
        const CVec aS0 = abel_subset(J, s.S, s.s0);
        const CVec aComp = abel_subset(J, s.S, complement(s.S, s.s0));
        for (double L : {0.0, 0.37, 1.3, 2.9, 7.1}) {
            const double lhs = rationality_residual(J, s.z0, Uy, L);
            const double rhs = J.distance(Psi(s.z0 + L * Uy) + aS0);
            identity = std::max(identity, std::abs(lhs - rhs));
        }
        auto cands = rationality_scan(J, s.z0, Uy, aS0, 0.05, 20.0);
        if (cands.size() > 3) cands.resize(3);
        for (const auto& c : cands) {
            ++found;
            const double comp = J.distance(Psi(c.z1) - aComp);
            const ResidualReport bd = durham_boundary_residual(sol, kDurA, kDurB, c.L, true, xs);
            const bool pass = c.residual < 1e-6 && c.z1_residual < 1e-6 && comp < 1e-6 && bd.max < 1e-3;
            ok = ok && pass;
            rows.push_back({{"L", c.L},
                            {"residual", c.residual},
                            {"z1_minus_neg_S0", c.z1_residual},
                            {"z1_minus_complement", comp},
                            {"complementary_boundary", bd.max},
                            {"pass", pass}});
        }
    }
    ok = ok && identity < 1e-10 && !samples.empty();
    r.pass = ok;
    r.detail = {{"candidates", found}, {"linearity_identity", identity}, {"rows", rows}};
    return r;
}

CriterionResult cmc_criterion() {
    CriterionResult r{12, "CMC boundary conversions"};
    double worst = 0, sum = 0, rel = 0;
    for (int i = 0; i < 20; ++i) {
        const double th = 1e-3 + (pi / 2 - 2e-3) * i / 19.0;
        for (int eps : {1, -1}) {
            const auto n = ab_from_contact({1.7, th, eps, AngleConvention::normal});
            const auto s = ab_from_contact({1.7, pi / 2 - th, eps, AngleConvention::sphere});
            worst = std::max({worst, std::abs(n.A - s.A) / std::max(1.0, std::abs(n.A)),
                              std::abs(n.B - s.B) / std::max(1.0, std::abs(n.B))});
            rel = std::max(rel, std::abs(sphere_relation_residual({1.7, pi / 2 - th, eps, AngleConvention::sphere}, 0.3 * i - 2)));
        }
        const auto k = principal_curvatures(-3.0 + 0.3 * i);
        sum = std::max(sum, std::abs(k.kx + k.ky - 1));
    }
    r.pass = worst < 1e-12 && sum < 1e-15 && rel < 1e-9;
    r.detail = {{"complement_angle", worst}, {"curvature_sum", sum}, {"sphere_relation", rel}};
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream* progress) {
    Fixtures fx;
    std::vector<CriterionResult> out;
    std::vector<DurhamSample> dsamples;
    int dtries = 0;
    auto run = [&](std::function<CriterionResult()> f, int id, const char* title) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = f();
        } catch (const std::exception& e) {
            r = CriterionResult{id, title, false, {{"error", e.what()}}};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (progress) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.1fs", r.seconds);
            *progress << "criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << "  (" << buf
                      << ")" << std::endl;
        }
        out.push_back(std::move(r));
    };
    // every criterion draws from its own stream so that they stay independent
    auto stream = [&](int id) { return std::mt19937_64(seed * 1000003ull + std::uint64_t(id)); };

    run([&] { return period_invariants_criterion(fx); }, 1, "period matrix invariants");
    run([&] { auto g = stream(2); return abel_criterion(fx, g); }, 2, "Abel map identities");
    run([&] { auto g = stream(3); return second_kind_criterion(fx, g); }, 3, "second-kind symmetries");
    run([&] { auto g = stream(4); return theta_criterion(fx, g); }, 4, "theta function");
    run([&] { auto g = stream(5); return solution_criterion(fx, g); }, 5, "theta solution quality");
    run([&] { auto g = stream(6); return reality_criterion(g); }, 6, "reality dictionary");
    run([&] { return sklyanin_structure_criterion(fx); }, 7, "Sklyanin structure");
    run(
        [&] {
            auto g = stream(8);
            dsamples = durham_samples(2, 5, g, dtries);
            int t4 = 0;
            for (auto& s : durham_samples(4, 1, g, t4)) dsamples.push_back(std::move(s));
            dtries += t4;
            return durham_criterion(dsamples, dtries);
        },
        8, "Durham certification");
    run([&] { return algebra_criterion(seed); }, 9, "two-variable gauge algebra");
    run([&] { auto g = stream(10); return flow_criterion(fx, g); }, 10, "flows and straight lines");
    run([&] { return rationality_criterion(dsamples); }, 11, "rationality and the second boundary");
    run([&] { return cmc_criterion(); }, 12, "CMC boundary conversions");
    return out;
}

json acceptance_report(const std::vector<CriterionResult>& results, std::uint64_t seed) {
    json crit = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        crit.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    }
    return {{"seed", seed}, {"pass", all}, {"criteria", crit}, {"tolerances", io::to_json(Tolerances{})}};
}

}  // namespace strip
