#include "support.hpp"

#include "strip/flows.hpp"
#include "strip/solution.hpp"

using namespace strip;
using namespace strip::test;

namespace {

Potential reference_potential() {
    const Curve& c = ref_g2().curve();
    Divisor D;
    D.add(c.point(cplx(0.4, 0.9), Sheet::upper));
    D.add(c.point(cplx(-1.3, 0.2), Sheet::lower));
    return potential_from_divisor(D, c);
}

double diff(const Potential& a, const Potential& b) { return max_abs(a.flat() - b.flat()); }

}  // namespace

TEST_CASE("flows keep lambda Det fixed") {
    Gen gen(51);
    const Potential xi = reference_potential();
    for (int trial = 0; trial < 4; ++trial) {
        const auto path = integrate_flow(xi, gen.poly(1), gen.poly(1), 0.1, {1e-12, 1e-12, 1e-7, 5});
        CHECK(path.size() >= 2);
        for (const auto& st : path) CHECK(st.det_drift < 1e-9);
        CHECK(path.back().t == doctest::Approx(0.1));
    }
}

TEST_CASE("the zero flow is stationary") {
    const Potential xi = reference_potential();
    CHECK(diff(flow_to(xi, {}, {}, 0.3), xi) == 0.0);
}

TEST_CASE("flows commute") {
    Gen gen(52);
    const Potential xi = reference_potential();
    for (int trial = 0; trial < 3; ++trial) {
        const poly::Poly P1 = gen.poly(1), Q1 = gen.poly(1), P2 = gen.poly(1), Q2 = gen.poly(1);
        const Potential ab = flow_to(flow_to(xi, P1, Q1, 0.07), P2, Q2, 0.05);
        const Potential ba = flow_to(flow_to(xi, P2, Q2, 0.05), P1, Q1, 0.07);
        CHECK(diff(ab, ba) < 1e-8);
    }
}

TEST_CASE("flow time is additive") {
    Gen gen(53);
    const Potential xi = reference_potential();
    const poly::Poly P = gen.poly(1), Q = gen.poly(1);
    CHECK(diff(flow_to(flow_to(xi, P, Q, 0.04), P, Q, 0.06), flow_to(xi, P, Q, 0.1)) < 1e-9);
}

TEST_CASE("divisors move along straight lines in the Jacobian") {
    Gen gen(54);
    const Jacobian& J = ref_g2();
    const Potential xi = reference_potential();
    for (int trial = 0; trial < 3; ++trial) {
        const poly::Poly P = gen.poly(1), Q = gen.poly(1);
        CVec a[3];
        for (int k = 0; k < 3; ++k) a[k] = J.abel(divisor_of_potential(flow_to(xi, P, Q, 0.03 * k), J.curve()));
        // equal steps: the second difference vanishes modulo the lattice
        CHECK(J.distance(a[2] - 2.0 * a[1] + a[0]) < 1e-7);
    }
}

TEST_CASE("real flows preserve reality") {
    Gen gen(55);
    const auto xi = gen.real_potential(2);
    REQUIRE(xi);
    for (const cplx c : {cplx(1.0), I}) {
        const Potential f = flow_to(*xi, {c}, {c}, 0.2);
        CHECK(reality_check(f).residual() < 1e-9);
    }
}

TEST_CASE("x and y flow matrices are the first-order flows") {
    const Potential xi = reference_potential();
    const cplx u = u_from_potential(xi);
    // u_y from the y-flow and u_x from the x-flow by finite differences
    const double h = 1e-4;
    const cplx ux = (u_from_potential(flow_to(xi, {1.0}, {1.0}, h), u) - u_from_potential(flow_to(xi, {1.0}, {1.0}, -h), u)) / (2 * h);
    const cplx uy = (u_from_potential(flow_to(xi, {I}, {I}, h), u) - u_from_potential(flow_to(xi, {I}, {I}, -h), u)) / (2 * h);
    CHECK((xi_hat(xi, {1.0}, {1.0}) - xi_hat_x(u, uy)).max_abs() < 1e-6);
    CHECK((xi_hat(xi, {I}, {I}) - xi_hat_y(u, ux)).max_abs() < 1e-6);
}

TEST_CASE("zero curvature separates solutions from non-solutions") {
    const Jacobian& J = ref_g2();
    CVec z0(2);
    z0 << cplx(0.55, 0.05), cplx(0.05, -0.05);
    const SolutionParams s = make_solution(J, z0);
    const std::vector<std::pair<double, double>> pts{{0, 0.1}, {0.2, 0.3}, {-0.4, 0.5}};
    CHECK(zero_curvature_residual([&](double x, double y) { return evaluate_u(s, x, y); }, pts, 1e-3) < 1e-5);
    CHECK(zero_curvature_residual([](double x, double y) { return cplx(x * x + 0.3 * y); }, pts, 1e-3) > 1e-2);
}

TEST_CASE("excessive drift is reported") {
    FlowOptions opt;
    opt.drift_tol = 1e-300;
    opt.abs_tol = opt.rel_tol = 1e-3;
    check_error_code([&] { integrate_flow(reference_potential(), {1.0, 2.0}, {0.5, 1.0}, 2.0, opt); }, "flow drift");
}
