#include "support.hpp"

using namespace strip;
using namespace strip::test;

TEST_CASE("frozen period matrix of the reference genus 2 curve") {
    const CMat& P = ref_g2().Pi();
    CHECK(std::abs(P(0, 0) - cplx(0.5, 0.762957489076)) < 1e-10);
    CHECK(std::abs(P(1, 1) - cplx(0.5, 0.762957489076)) < 1e-10);
    CHECK(std::abs(P(0, 1) - cplx(0.0, 0.310068208773)) < 1e-10);
    CHECK(std::abs(P(1, 0) - cplx(0.0, 0.310068208773)) < 1e-10);
}

TEST_CASE("period matrix invariants hold for random admissible curves") {
    Gen gen(21);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<cplx> seeds{gen.seed()};
        if (trial >= 3) seeds.push_back(gen.seed());
        std::optional<Curve> c;
        try {
            c.emplace(from_root_quadruples(seeds));
        } catch (const Error&) {
            continue;
        }
        const PeriodInvariants inv = period_invariants(period_matrix(*c));
        CHECK(inv.re_half < 1e-8);
        CHECK(inv.symmetric < 1e-8);
        CHECK(inv.flip < 1e-8);
        CHECK(inv.min_im_eig > 0);
        CHECK(inv.normalization < 1e-9);
    }
}

TEST_CASE("alpha and beta cycles intersect canonically") {
    for (const Jacobian* J : {&ref_g2(), &ref_g4()}) {
        const Eigen::MatrixXi M = intersection_matrix(J->periods().cycles);
        CHECK(M == Eigen::MatrixXi::Identity(J->genus(), J->genus()));
    }
}

TEST_CASE("normalized differentials integrate to beta periods along cycles") {
    const PeriodData& pd = ref_g2().periods();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Integrand z = [&](cplx l, cplx nu) { return zeta(pd, i, l, nu); };
            CHECK(std::abs(integrate(pd.curve, pd.cycles.alpha[j], z, 1e-12) - (i == j ? 1.0 : 0.0)) < 1e-9);
            CHECK(std::abs(integrate(pd.curve, pd.cycles.beta[j], z, 1e-12) - pd.Pi(i, j)) < 1e-9);
        }
}

TEST_CASE("frozen second-kind vector V[1,0]") {
    const CVec v = second_kind_V(ref_g2().periods(), {1.0}, {});
    CHECK(std::abs(v(0) - cplx(0, -0.701361369435)) < 1e-9);
    CHECK(std::abs(v(1) - cplx(0, -0.283203544194)) < 1e-9);
}

TEST_CASE("second-kind vectors are linear in P and Q") {
    const PeriodData& pd = ref_g4().periods();
    Gen gen(22);
    for (int trial = 0; trial < 5; ++trial) {
        const poly::Poly P1 = gen.poly(3), P2 = gen.poly(2), Q1 = gen.poly(1), Q2 = gen.poly(4);
        const cplx a = gen.c(), b = gen.c();
        const CVec lhs = second_kind_V(pd, poly::add(poly::scale(P1, a), poly::scale(P2, b)),
                                       poly::add(poly::scale(Q1, a), poly::scale(Q2, b)));
        // Q enters conjugated, P linearly
        const CVec rhs_lin = a * second_kind_V(pd, P1, {}) + b * second_kind_V(pd, P2, {});
        const CVec rhs_anti = std::conj(a) * second_kind_V(pd, {}, Q1) + std::conj(b) * second_kind_V(pd, {}, Q2);
        CHECK(max_abs(lhs - rhs_lin - rhs_anti) < 1e-10);
    }
}

TEST_CASE("residue formula agrees with quadrature of the explicit differential") {
    const PeriodData& pd = ref_g2().periods();
    Gen gen(23);
    for (int trial = 0; trial < 4; ++trial) {
        const poly::Poly P = gen.poly(1), Q = gen.poly(1);
        const OmegaDifferential om = build_omega(pd, P, Q);
        CHECK(max_abs(alpha_periods(pd, om)) < 1e-9);
        CHECK(max_abs(second_kind_V(pd, P, Q) - beta_periods(pd, om)) < 1e-6);
    }
}

TEST_CASE("swapping P and Q conjugates and reverses V") {
    const PeriodData& pd = ref_g4().periods();
    Gen gen(24);
    for (int trial = 0; trial < 10; ++trial) {
        const poly::Poly P = gen.poly(trial % 5), Q = gen.poly((trial + 2) % 5);
        const CVec v = second_kind_V(pd, P, Q), s = second_kind_V(pd, Q, P);
        const CVec c = second_kind_V(pd, poly::conj(P), poly::conj(Q));
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(s(k) + std::conj(v(3 - k))) < 1e-8);
            CHECK(std::abs(c(k) + std::conj(v(k))) < 1e-8);
        }
    }
}

TEST_CASE("monomial second-kind vectors are independent") {
    for (const Jacobian* J : {&ref_g2(), &ref_g4()}) CHECK(injectivity_check(J->periods()).min_singular > 1e-4);
}

TEST_CASE("Abel map differentiates to the normalized differentials") {
    const Jacobian& J = ref_g2();
    const PeriodData& pd = J.periods();
    Gen gen(25);
    const double h = 1e-5;
    for (int trial = 0; trial < 10; ++trial) {
        const SurfacePoint p = gen.point(J.curve());
        const cplx dl = h * std::polar(1.0, gen.uni(0, 2 * pi));
        const SurfacePoint a = J.curve().point(p.lambda + dl, p.sheet), b = J.curve().point(p.lambda - dl, p.sheet);
        if (std::abs(a.nu - p.nu) > 1e-2 * std::abs(p.nu) || std::abs(b.nu - p.nu) > 1e-2 * std::abs(p.nu))
            continue;  // sheet label flips across a cut
        CVec want(2);
        for (int i = 0; i < 2; ++i) want(i) = 2.0 * dl * zeta(pd, i, p.lambda, p.nu);
        CHECK(J.distance(J.abel(a) - J.abel(b) - want) < 1e-8);
    }
}

TEST_CASE("exact differentials have zero periods and reversal negates") {
    const PeriodData& pd = ref_g4().periods();
    const Integrand one = [](cplx, cplx) { return cplx(1.0); };
    const Integrand z0 = [&](cplx l, cplx nu) { return zeta(pd, 0, l, nu); };
    for (const auto* fam : {&pd.cycles.alpha, &pd.cycles.beta})
        for (const Cycle& c : *fam) {
            CHECK(std::abs(integrate(pd.curve, c, one, 1e-12)) < 1e-10);
            CHECK(std::abs(integrate(pd.curve, c.reversed(), z0, 1e-12) + integrate(pd.curve, c, z0, 1e-12)) < 1e-10);
        }
}

TEST_CASE("zero data gives the zero differential and V scales") {
    const PeriodData& pd = ref_g2().periods();
    const OmegaDifferential om = build_omega(pd, {}, {});
    for (cplx c : om.q) CHECK(std::abs(c) == 0.0);
    const poly::Poly P{cplx(0.3, 1.0), cplx(-0.2, 0.5)};
    CHECK(max_abs(second_kind_V(pd, poly::scale(P, 3.0), {}) - 3.0 * second_kind_V(pd, P, {})) < 1e-12);
}

TEST_CASE("Abel map basics") {
    const Jacobian& J = ref_g2();
    CHECK(max_abs(J.abel(SurfacePoint::zero())) == 0.0);
    CVec pm = CVec::Zero(2);
    for (double l : {1.0, -1.0})
        for (Sheet s : {Sheet::upper, Sheet::lower}) pm += J.abel(J.curve().point(l, s));
    CHECK(J.distance(pm) < 1e-8);
    CVec e = CVec::Zero(2);
    e(0) = 1.0;
    CHECK(J.distance(e) < 1e-14);
    CHECK(J.distance(0.5 * e) == doctest::Approx(0.5));
    Gen gen(26);
    const CVec z = gen.vec(2);
    CHECK(J.distance(Psi(2.0 * z) - 2.0 * Psi(z)) < 1e-14);
    CHECK(J.distance(z + J.Pi().col(1)) == doctest::Approx(J.distance(z)));
}
