#pragma once
// Shared fixtures and hand-rolled generators for the unit tests.

#include <doctest.h>

#include <memory>
#include <optional>
#include <random>

#include "strip/jacobian.hpp"
#include "strip/potential.hpp"

namespace strip::test {

inline const Jacobian& ref_g2() {
    static const Jacobian J(period_matrix(Curve::from_seeds({std::polar(2.0, pi / 4)})));
    return J;
}
inline const Jacobian& ref_g4() {
    static const Jacobian J(period_matrix(Curve::from_seeds({std::polar(2.0, pi / 4), std::polar(3.0, pi / 3)})));
    return J;
}

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    cplx c(double r = 1) { return {uni(-r, r), uni(-r, r)}; }
    poly::Poly poly(int deg) {
        poly::Poly p(deg + 1);
        for (auto& x : p) x = c();
        return p;
    }
    CVec vec(int n, double r = 0.5) {
        CVec v(n);
        for (auto& x : v) x = c(r);
        return v;
    }
    // root-quadruple seed away from both axes and the unit circle
    cplx seed() {
        return std::polar(uni(1.4, 3.5), uni(0.25, pi / 2 - 0.25));
    }
    SurfacePoint point(const Curve& cv) {
        for (;;) {
            const cplx l = std::polar(std::exp(uni(std::log(0.2), std::log(5.0))), uni(0.1, 2 * pi - 0.1));
            if (cv.on_cut(l, 1e-3)) continue;
            return cv.point(l, uni(0, 1) < 0.5 ? Sheet::upper : Sheet::lower);
        }
    }
    Potential potential(int g) {
        Potential xi = Potential::zero(g);
        for (auto& x : xi.omega) x = c();
        for (auto& x : xi.sigma) x = c();
        for (auto& x : xi.tau) x = c();
        return xi;
    }
    // anti-real with imaginary coefficients; normalized, iσ_{-1} > 0
    std::optional<Potential> real_potential(int g, int tries = 200) {
        for (int t = 0; t < tries; ++t) {
            Potential xi = Potential::zero(g);
            for (int k = 0; k < (g + 1) / 2; ++k) xi.omega[k] = xi.omega[g - 1 - k] = I * uni(-1, 1);
            for (int k = 0; k <= g; ++k) xi.sigma[k] = I * uni(-1, 1);
            xi.sigma[0] = -I * uni(0.2, 1.0);
            for (int k = 0; k <= g; ++k) xi.tau[k] = -std::conj(xi.sigma[g - k]);
            try {
                induced_spectral_polynomial(xi);
            } catch (const Error&) {
                continue;
            }
            xi = normalize_potential(xi);
            if ((I * xi.sigma_m1()).real() < 0) xi = -xi;
            return xi;
        }
        return std::nullopt;
    }
};

inline double max_abs(const CVec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// CHECK that f throws strip::Error with the given code
template <class F>
void check_error_code(F&& f, const std::string& code) {
    try {
        f();
        FAIL("expected error " << code);
    } catch (const Error& e) {
        CHECK(e.code() == code);
    }
}

}  // namespace strip::test
