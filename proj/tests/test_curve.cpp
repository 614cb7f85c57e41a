#include "support.hpp"

using namespace strip;
using namespace strip::test;

TEST_CASE("polynomial roots recover the roots they were built from") {
    Gen gen(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 7;
        std::vector<cplx> r;
        for (int i = 0; i < n; ++i) r.push_back(gen.c(3));
        const auto found = poly::roots(poly::from_roots(r, gen.c() + 2.0));
        REQUIRE(found.size() == r.size());
        for (cplx z : r) {
            double best = 1e300;
            for (cplx w : found) best = std::min(best, std::abs(z - w));
            CHECK(best < 1e-8);
        }
    }
}

TEST_CASE("interpolation reproduces a polynomial through its samples") {
    Gen gen(12);
    const poly::Poly p = gen.poly(5);
    std::vector<cplx> x, y;
    for (int i = 0; i < 6; ++i) {
        x.push_back(gen.c(2));
        y.push_back(poly::eval(p, x.back()));
    }
    const poly::Poly q = poly::interpolate(x, y);
    for (int k = 0; k <= 5; ++k) CHECK(std::abs(q[k] - p[k]) < 1e-9);
    x.push_back(x[0]);
    y.push_back(y[0]);
    check_error_code([&] { poly::interpolate(x, y); }, "Hermite case unsupported");
}

TEST_CASE("division leaves the product's factor with zero remainder") {
    Gen gen(13);
    const poly::Poly a = gen.poly(4), b = gen.poly(2);
    poly::Poly rem;
    const poly::Poly q = poly::divide(poly::mul(a, b), b, rem);
    for (int k = 0; k <= 4; ++k) CHECK(std::abs(q[k] - a[k]) < 1e-10);
    for (cplx r : rem) CHECK(std::abs(r) < 1e-10);
}

TEST_CASE("reference genus 2 curve is admissible") {
    const SpectralPolynomial d = from_root_quadruples({std::polar(2.0, pi / 4)});
    CHECK(d.genus == 2);
    CHECK(std::abs(d.coeffs[0] - 1.0 / 16) < 1e-15);
    const AdmissibilityReport rep = validate_spectral(d);
    CHECK(rep.pass());
    CHECK(rep.roots.size() == 4);
    // frozen: roots at 2e^{±iπ/4}, ½e^{±iπ/4}
    for (cplx r : rep.roots) {
        const double m = std::abs(r);
        CHECK((std::abs(m - 2) < 1e-12 || std::abs(m - 0.5) < 1e-12));
        CHECK(std::abs(std::abs(std::arg(r)) - pi / 4) < 1e-12);
    }
}

TEST_CASE("a root on the real axis is reported") {
    // Δ = (1/16)(λ-2)(λ-1/2)(λ-3)(λ-1/3): closed under both reflections but on ℝ
    SpectralPolynomial d;
    d.genus = 2;
    d.coeffs = poly::scale(poly::from_roots({2.0, 0.5, 3.0, 1.0 / 3}), 1.0 / 16);
    const AdmissibilityReport rep = validate_spectral(d);
    CHECK_FALSE(rep.pass());
    CHECK(std::find(rep.failures.begin(), rep.failures.end(), "root on ℝ") != rep.failures.end());
}

TEST_CASE("a root on the unit circle is reported") {
    SpectralPolynomial d;
    d.genus = 2;
    const cplx a = std::polar(1.0, 0.7), b = std::polar(1.0, 1.9);
    d.coeffs = poly::scale(poly::from_roots({a, std::conj(a), b, std::conj(b)}), 1.0 / 16);
    const AdmissibilityReport rep = validate_spectral(d);
    CHECK(std::find(rep.failures.begin(), rep.failures.end(), "root on unit circle") != rep.failures.end());
}

TEST_CASE("odd genus and broken normalization are rejected") {
    SpectralPolynomial d = from_root_quadruples({std::polar(2.0, pi / 4)});
    d.coeffs = poly::scale(d.coeffs, 2.0);
    CHECK_FALSE(validate_spectral(d).normalized);
    CHECK(validate_spectral(normalized(d)).pass());
    SpectralPolynomial odd;
    odd.genus = 1;
    odd.coeffs = {1.0 / 16, 0.3, 1.0 / 16};
    CHECK_FALSE(validate_spectral(odd).even_genus);
}

TEST_CASE("bad seeds raise their codes") {
    check_error_code([] { from_root_quadruples({cplx(2.0, 0.0)}); }, "invalid seed");
    check_error_code([] { from_root_quadruples({std::polar(1.0, 0.5)}); }, "invalid seed");
    check_error_code([] { from_root_quadruples({std::polar(2.0, 0.5), std::polar(0.5, 0.5)}); }, "orbit collision");
}

TEST_CASE("random root quadruples always give admissible curves") {
    Gen gen(14);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cplx> seeds{gen.seed()};
        if (trial % 2) seeds.push_back(gen.seed());
        SpectralPolynomial d;
        try {
            d = from_root_quadruples(seeds);
        } catch (const Error& e) {
            CHECK(e.code() == "orbit collision");
            continue;
        }
        CHECK(validate_spectral(d).pass());
        // real coefficients, palindromic
        for (int k = 0; k <= 2 * d.genus; ++k) {
            CHECK(std::abs(d.coeffs[k].imag()) < 1e-12);
            CHECK(std::abs(d.coeffs[k] - d.coeffs[2 * d.genus - k]) < 1e-12);
        }
    }
}

TEST_CASE("branch values square to the curve equation on both sheets") {
    const Curve& c = ref_g2().curve();
    Gen gen(15);
    for (int trial = 0; trial < 50; ++trial) {
        const SurfacePoint p = gen.point(c);
        CHECK(std::abs(p.nu * p.nu + c.delta(p.lambda) / p.lambda) < 1e-12 * (1 + std::abs(p.nu * p.nu)));
        const SurfacePoint q = c.point(p.lambda, other(p.sheet));
        CHECK(std::abs(q.nu + p.nu) < 1e-12 * (1 + std::abs(p.nu)));
        CHECK(c.sheet_of(p.lambda, p.nu) == p.sheet);
    }
}

TEST_CASE("involutions map points of the curve to points of the curve") {
    const Curve& c = ref_g4().curve();
    Gen gen(16);
    for (int trial = 0; trial < 30; ++trial) {
        const SurfacePoint p = gen.point(c);
        for (int k = 1; k <= 3; ++k) {
            const SurfacePoint q = c.involution(k, p);
            CHECK(std::abs(q.nu * q.nu + c.delta(q.lambda) / q.lambda) < 1e-10 * (1 + std::abs(q.nu * q.nu)));
            const SurfacePoint back = c.involution(k, q);
            CHECK(std::abs(back.lambda - p.lambda) < 1e-12);
            CHECK(std::abs(back.nu - p.nu) < 1e-10 * (1 + std::abs(p.nu)));
        }
    }
    check_error_code([&] { c.involution(4, gen.point(c)); }, "invalid involution index");
}

TEST_CASE("local expansions at 0 and infinity satisfy the curve equation") {
    const Curve& c = ref_g2().curve();
    for (auto where : {ChartLocation::zero, ChartLocation::infinity}) {
        const LocalChart ch = c.local_expansion(where, 24);
        const double t = 0.05;
        cplx x = 0, nu = 0;
        for (size_t k = 0; k < ch.x.size(); ++k) x += ch.x[k] * std::pow(t, int(k));
        const auto nus = ch.nu();
        for (size_t k = 0; k < nus.size(); ++k) nu += nus[k] * std::pow(t, int(k) + ch.nu_offset());
        const cplx lambda = where == ChartLocation::zero ? x : 1.0 / x;
        CHECK(std::abs(nu * nu + c.delta(lambda) / lambda) < 1e-8 * std::abs(nu * nu));
    }
    check_error_code([&] { c.local_expansion(ChartLocation::zero, 0); }, "invalid order");
}

TEST_CASE("upper sheet is positive over the negative axis") {
    for (const Jacobian* J : {&ref_g2(), &ref_g4()}) {
        for (double l : {-1.0, -0.3, -4.0}) {
            const cplx nu = J->curve().nu(l, Sheet::upper);
            CHECK(nu.real() > 0);
            CHECK(std::abs(nu.imag()) < 1e-12 * std::abs(nu));
            CHECK(std::abs(J->curve().nu(l, Sheet::lower) + nu) < 1e-14 * std::abs(nu));
        }
        // σ2 fixes a point over -1 including its sheet
        const SurfacePoint p = J->curve().point(-1.0, Sheet::upper);
        CHECK(J->curve().involution(2, p).sheet == Sheet::upper);
    }
}

TEST_CASE("continuing nu around one branch point flips its sign") {
    const Curve& c = ref_g2().curve();
    const cplx r = c.roots().front();
    const int n = 2000;
    const double rad = 0.05;
    cplx nu = std::sqrt(-c.delta(r + rad) / (r + rad));
    const cplx start = nu;
    for (int k = 1; k <= n; ++k) {
        const cplx l = r + std::polar(rad, 2 * pi * k / n);
        const cplx s = std::sqrt(-c.delta(l) / l);
        nu = std::abs(s - nu) < std::abs(s + nu) ? s : -s;
    }
    CHECK(std::abs(nu + start) < 1e-10 * std::abs(start));
}

TEST_CASE("sigma2 sigma3 is the reciprocal involution") {
    Gen gen(17);
    const Curve& c = ref_g4().curve();
    for (int trial = 0; trial < 20; ++trial) {
        const SurfacePoint p = gen.point(c);
        const SurfacePoint q = c.involution(2, c.involution(3, p));
        CHECK(std::abs(q.lambda - 1.0 / p.lambda) < 1e-12 * std::abs(q.lambda));
        CHECK(std::abs(q.nu - p.nu / std::pow(p.lambda, 3)) < 1e-10 * std::abs(q.nu));
    }
}

TEST_CASE("chart at zero starts with lambda = -16 t^2") {
    const LocalChart ch = ref_g2().curve().local_expansion(ChartLocation::zero, 8);
    CHECK(std::abs(ch.x[0]) == 0.0);
    CHECK(std::abs(ch.x[2] + 16.0) < 1e-12);
}
