#include "support.hpp"

#include "strip/laurent.hpp"

using namespace strip;
using namespace strip::test;

TEST_CASE("lambda Det of a potential agrees with pointwise determinants") {
    Gen gen(41);
    for (int trial = 0; trial < 20; ++trial) {
        const int g = 2 + 2 * (trial % 2);
        const Potential xi = gen.potential(g);
        const poly::Poly d = lambda_det(xi);
        CHECK(int(d.size()) == 2 * g + 1);
        const cplx l = gen.c(2) + 0.1;
        CHECK(std::abs(poly::eval(d, l) - l * xi.at(l).determinant()) < 1e-10 * (1 + std::abs(poly::eval(d, l))));
    }
}

TEST_CASE("anti-real samples induce admissible normalized curves") {
    Gen gen(42);
    int made = 0;
    for (int trial = 0; trial < 12; ++trial) {
        const auto xi = gen.real_potential(2 + 2 * (trial % 2));
        if (!xi) continue;
        ++made;
        CHECK(reality_check(*xi).pass(1e-10));
        // the normalization σ_{-1}σ_{g-1} = -1/16
        CHECK(std::abs(xi->sigma.front() * xi->sigma.back() + 1.0 / 16) < 1e-12);
        const SpectralPolynomial d = induced_spectral_polynomial(*xi);
        CHECK(validate_spectral(d).pass());
    }
    CHECK(made >= 8);
}

TEST_CASE("eigenlines at divisor-free points are eigenvectors") {
    Gen gen(43);
    for (int trial = 0; trial < 5; ++trial) {
        const auto xi = gen.real_potential(2);
        REQUIRE(xi);
        const Curve c(induced_spectral_polynomial(*xi));
        for (int k = 0; k < 10; ++k) {
            const SurfacePoint p = gen.point(c);
            const EigenlineValue e = eigenline(*xi, p);
            REQUIRE_FALSE(e.pole);
            Eigen::Vector2cd v(1.0, e.value);
            CHECK((xi->at(p.lambda) * v - p.nu * v).norm() < 1e-10 * (1 + v.norm()) * (1 + std::abs(p.nu)));
        }
    }
}

TEST_CASE("potential to divisor to potential round trip") {
    Gen gen(44);
    int done = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto xi = gen.real_potential(trial % 2 ? 4 : 2);
        if (!xi) continue;
        const Curve c(induced_spectral_polynomial(*xi));
        const Divisor d = divisor_of_potential(*xi, c);
        CHECK(d.degree() == xi->g);
        const Potential back = potential_from_divisor(d, c);
        CHECK(max_abs(back.flat() - xi->flat()) < 1e-8);
        ++done;
    }
    CHECK(done >= 8);
}

TEST_CASE("divisor of the wrong degree is inconsistent with the curve") {
    const Curve& c = ref_g2().curve();
    Divisor d;
    d.add(c.point(cplx(0.3, 0.4), Sheet::upper));
    check_error_code([&] { potential_from_divisor(d, c); }, "inconsistent divisor/curve");
    Divisor z;
    z.add(SurfacePoint::zero());
    z.add(c.point(cplx(0.3, 0.4), Sheet::upper));
    check_error_code([&] { potential_from_divisor(z, c); }, "inconsistent divisor/curve");
}

TEST_CASE("a potential with vanishing sigma_{-1} is malformed") {
    Potential xi = Potential::zero(2);
    xi.sigma = {0.0, 1.0, 1.0};
    check_error_code([&] { divisor_of_potential(xi, ref_g2().curve()); }, "malformed sigma");
}

TEST_CASE("gauge flip and negation keep the determinant") {
    Gen gen(45);
    const Potential xi = gen.potential(4);
    const poly::Poly d = lambda_det(xi);
    for (const Potential& y : {gauge_flip(xi), -xi}) {
        const poly::Poly e = lambda_det(y);
        for (size_t k = 0; k < d.size(); ++k) CHECK(std::abs(d[k] - e[k]) < 1e-12);
    }
}

TEST_CASE("Laurent round trip of a potential is lossless") {
    Gen gen(46);
    const Potential xi = gen.potential(4);
    double defect = -1;
    const Potential back = from_laurent(to_laurent(xi), 4, &defect);
    CHECK(defect == 0.0);
    CHECK(max_abs(back.flat() - xi.flat()) == 0.0);
    const cplx l(0.7, -0.4);
    CHECK((to_laurent(xi)(l) - xi.at(l)).norm() < 1e-13);
}

TEST_CASE("the two projections split every Laurent matrix") {
    Gen gen(47);
    LaurentMatrix m;
    for (int k = -3; k <= 3; ++k) m.c[k] = Eigen::Matrix2cd::Random();
    const LaurentMatrix s = proj_minus(m) + proj_plus(m);
    CHECK((s - m).max_abs() < 1e-15);
    // Π₋ has no positive powers and an upper-triangular-free constant term
    const LaurentMatrix pm = proj_minus(m);
    CHECK(pm.hi() <= 0);
    CHECK(std::abs(pm.coeff(0)(0, 1)) == 0.0);
    CHECK(std::abs(pm.coeff(0)(1, 0) - m.coeff(0)(1, 0)) == 0.0);
    CHECK(std::abs(pm.coeff(0)(0, 0) - 0.5 * m.coeff(0)(0, 0)) < 1e-15);
}

TEST_CASE("negation and gauge flip move the divisor by sigma1") {
    Gen gen(48);
    const auto xi = gen.real_potential(2);
    REQUIRE(xi);
    const Curve c(induced_spectral_polynomial(*xi));
    const Divisor d = divisor_of_potential(*xi, c);
    for (const Potential& y : {-*xi, gauge_flip(*xi)}) {
        const Divisor e = divisor_of_potential(y, c);
        for (const auto& p : d.points) {
            const SurfacePoint q = c.involution(1, p);
            double best = 1e300;
            for (const auto& r : e.points) best = std::min(best, std::abs(r.lambda - q.lambda) + std::abs(r.nu - q.nu));
            CHECK(best < 1e-9);
        }
    }
    CHECK(max_abs(gauge_flip(gauge_flip(*xi)).flat() - xi->flat()) == 0.0);
}

TEST_CASE("the other eigenline sits at sigma1 of the point") {
    Gen gen(49);
    const auto xi = gen.real_potential(2);
    REQUIRE(xi);
    const Curve c(induced_spectral_polynomial(*xi));
    for (int k = 0; k < 10; ++k) {
        const SurfacePoint p = gen.point(c);
        const cplx want = (-p.nu - xi->om(p.lambda)) / xi->sg(p.lambda);
        CHECK(std::abs(eigenline(*xi, c.involution(1, p)).value - want) < 1e-10 * (1 + std::abs(want)));
    }
}

TEST_CASE("reality and normalization make sigma_{-1} imaginary") {
    Gen gen(50);
    for (int g : {2, 4}) {
        const auto xi = gen.real_potential(g);
        REQUIRE(xi);
        const cplx s = xi->sigma_m1();
        CHECK(std::abs(s * s + std::norm(s)) < 1e-12);
        // the two sign choices differ by the sign of σ
        const Curve c(induced_spectral_polynomial(*xi));
        const Divisor d = divisor_of_potential(*xi, c);
        Potential a = potential_from_divisor(d, c, 1);
        CHECK(reality_check(a).pass(1e-8));
        CHECK(max_abs(a.flat() - xi->flat()) < 1e-8);
    }
}

TEST_CASE("random potentials are far from real") {
    Gen gen(51);
    CHECK(reality_check(gen.potential(2)).residual() > 1e-2);
}
