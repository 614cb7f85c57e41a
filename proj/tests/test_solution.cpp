#include "support.hpp"

#include "strip/flows.hpp"
#include "strip/solution.hpp"

using namespace strip;
using namespace strip::test;

namespace {

CVec real_point(const Jacobian& J, Gen& gen, double r = 0.2) {
    const int g = J.genus();
    CVec z(g);
    for (int i = 0; i < g / 2; ++i) {
        const cplx w = gen.c(r);
        z(i) = w + J.abel_infinity()(i);
        z(g - 1 - i) = std::conj(w);
    }
    return z;
}

}  // namespace

TEST_CASE("half periods enumerate the 2-torsion") {
    const auto hp = half_periods(ref_g2().Pi());
    CHECK(hp.size() == 16);
    for (const CVec& h : hp) CHECK(ref_g2().distance(2.0 * h) < 1e-12);
}

TEST_CASE("theta solutions on the real locus are real and solve the equation") {
    Gen gen(81);
    for (const Jacobian* J : {&ref_g2(), &ref_g4()}) {
        for (int trial = 0; trial < 2; ++trial) {
            const SolutionParams s = make_solution(*J, real_point(*J, gen));
            const ResidualReport r = pde_residual(s, Grid{-1, 1, 0, 1, 7, 7});
            CHECK(r.max < 1e-5);
            CHECK(r.max_imag_u < 1e-10);
            CHECK(r.points == 49);
        }
    }
}

TEST_CASE("pointwise residual matches an independent five-point stencil") {
    Gen gen(82);
    const SolutionParams s = make_solution(ref_g2(), real_point(ref_g2(), gen));
    const double h = 2e-3, x = 0.1, y = 0.4;
    auto u = [&](double a, double b) { return evaluate_u(s, a, b); };
    const cplx lap = (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) - 4.0 * u(x, y)) / (h * h);
    const cplx mine = lap / 4.0 + std::sinh(2.0 * u(x, y)) / 8.0;
    CHECK(std::abs(mine) < 1e-5);
    CHECK(std::abs(pde_residual_at(s, x, y, 1e-3)) < 1e-5);
}

TEST_CASE("a wrong shift D breaks the equation") {
    Gen gen(83);
    const Jacobian& J = ref_g2();
    CVec D(2);
    D << 0.5, 0.0;
    const SolutionParams s = make_solution(J, real_point(J, gen), D);
    CHECK(pde_residual(s, Grid{-1, 1, 0, 1, 5, 5}).max > 1e-2);
}

TEST_CASE("calibration recovers the Abel image of infinity and i over 2 pi") {
    Gen gen(84);
    const Jacobian& J = ref_g2();
    const Calibration c = calibrate(J, real_point(J, gen));
    CHECK(J.distance(c.D - J.abel_infinity()) < 1e-9);
    CHECK(std::abs(c.kappa - kDefaultKappa) < 1e-6);
    CHECK(c.residual < 1e-5);
}

TEST_CASE("theta u agrees with the flowed potential for real data") {
    Gen gen(85);
    for (int trial = 0; trial < 2; ++trial) {
        const auto xi = gen.real_potential(2);
        REQUIRE(xi);
        const Jacobian J(period_matrix(Curve(induced_spectral_polynomial(*xi))));
        CHECK(matching_offsets(J, *xi).size() == 1);
        CHECK(J.distance(matching_offsets(J, *xi).front() - J.riemann_offset()) < 1e-9);
        const SolutionParams s = make_solution(J, J.potential_point(divisor_of_potential(*xi, J.curve())));
        CHECK(std::abs(evaluate_u(s, 0, 0) - u_from_potential(*xi, 0.0)) < 1e-6);
        CHECK(std::abs(evaluate_u(s, 0.2, 0) - u_from_potential(flow_to(*xi, {1.0}, {1.0}, 0.2), 0.0)) < 1e-6);
        CHECK(std::abs(evaluate_u(s, 0, 0.15) - u_from_potential(flow_to(*xi, {I}, {I}, 0.15), 0.0)) < 1e-6);
    }
}

TEST_CASE("off the real locus u picks up an imaginary part") {
    const Jacobian& J = ref_g2();
    CVec z(2);
    z << cplx(0.3, 0.2), cplx(0.1, 0.4);
    CHECK_FALSE(is_real_locus(J, z, 1e-7).real);
    CHECK(std::abs(evaluate_u(make_solution(J, z), 0.0, 0.0).imag()) > 1e-3);
}

TEST_CASE("velocity is real-linear in w") {
    const SolutionParams s = make_solution(ref_g4(), CVec::Zero(4));
    const cplx a(0.3, -0.7), b(-1.1, 0.2);
    CHECK(max_abs(s.velocity(a + b) - s.velocity(a) - s.velocity(b)) < 1e-14);
    CHECK(max_abs(s.velocity(2.0 * a) - 2.0 * s.velocity(a)) < 1e-14);
}

TEST_CASE("with A = B = 0 both boundary conditions measure |u_y|") {
    Gen gen(86);
    const SolutionParams s = make_solution(ref_g2(), real_point(ref_g2(), gen));
    const std::vector<double> xs{-0.3, 0.2};
    const ResidualReport a = durham_boundary_residual(s, 0.0, 0.0, 0.5, false, xs);
    const ResidualReport b = durham_boundary_residual(s, 0.0, 0.0, 0.5, true, xs);
    CHECK(a.max == doctest::Approx(b.max).epsilon(1e-4));
}
