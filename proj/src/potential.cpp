#include "strip/potential.hpp"

#include <cmath>

namespace strip {

Potential Potential::zero(int g) {
    Potential p;
    p.g = g;
    p.omega.assign(g, 0.0);
    p.sigma.assign(g + 1, 0.0);
    p.tau.assign(g + 1, 0.0);
    return p;
}

Eigen::Matrix2cd Potential::at(cplx lambda) const {
    Eigen::Matrix2cd m;
    const cplx w = om(lambda);
    m << w, sg(lambda), ta(lambda), -w;
    return m;
}

Potential Potential::operator-() const {
    Potential r = *this;
    for (auto& v : r.omega) v = -v;
    for (auto& v : r.sigma) v = -v;
    for (auto& v : r.tau) v = -v;
    return r;
}

CVec Potential::flat() const {
    CVec v(omega.size() + sigma.size() + tau.size());
    Eigen::Index k = 0;
    for (auto x : omega) v(k++) = x;
    for (auto x : sigma) v(k++) = x;
    for (auto x : tau) v(k++) = x;
    return v;
}

poly::Poly lambda_det(const Potential& xi) {
    // λ Det ξ = -λ ω² - (λσ) τ
    poly::Poly a = poly::mul({0.0, 1.0}, poly::mul(xi.omega, xi.omega));
    poly::Poly b = poly::mul(xi.sigma, xi.tau);
    poly::Poly d = poly::scale(poly::add(a, b), -1.0);
    d.resize(2 * xi.g + 1, 0.0);
    return d;
}

EigenlineValue eigenline(const Potential& xi, const SurfacePoint& p) {
    EigenlineValue r;
    const cplx s = xi.sg(p.lambda);
    const cplx num = p.nu - xi.om(p.lambda);
    if (std::abs(s) < 1e-14 * (1 + std::abs(num))) {
        r.pole = true;
        r.value = num;
        return r;
    }
    r.value = num / s;
    return r;
}

Divisor divisor_of_potential(const Potential& xi, const Curve& c) {
    const double scale = std::abs(xi.sigma.back()) + std::abs(xi.sigma.front());
    if (std::abs(xi.sigma_m1()) < 1e-12 * scale || scale == 0) throw Error("malformed sigma");
    Divisor d;
    for (cplx l : poly::roots(xi.sigma)) {
        if (std::abs(l) < 1e-12) throw Error("malformed sigma");
        const cplx nu = -xi.om(l);
        SurfacePoint p;
        p.lambda = l;
        p.nu = nu;
        p.sheet = c.sheet_of(l, nu);
        d.add(p);
    }
    return d;
}

Potential potential_from_divisor(const Divisor& d, const Curve& c, int sign_choice) {
    const int g = c.genus();
    std::vector<cplx> lams, vals;
    for (std::size_t k = 0; k < d.points.size(); ++k) {
        const auto& p = d.points[k];
        if (!p.finite()) throw Error("inconsistent divisor/curve", "divisor meets 0 or infinity");
        for (int m = 0; m < d.mult[k]; ++m) {
            lams.push_back(p.lambda);
            vals.push_back(-p.nu);
        }
    }
    if (int(lams.size()) != g) throw Error("inconsistent divisor/curve", "degree != genus");

    Potential xi;
    xi.g = g;
    cplx prod = 1.0;
    for (cplx l : lams) prod *= l;
    const cplx s = I / (4.0 * std::sqrt(prod));
    xi.sigma = poly::from_roots(lams, s * double(sign_choice >= 0 ? 1 : -1));
    xi.omega = poly::interpolate(lams, vals);  // throws on repeated base points
    xi.omega.resize(g, 0.0);

    // τ = (-Δ - λω²)/(λσ)
    poly::Poly num = poly::scale(poly::add(c.spectral().coeffs, poly::mul({0.0, 1.0}, poly::mul(xi.omega, xi.omega))), -1.0);
    poly::Poly rem;
    xi.tau = poly::divide(num, xi.sigma, rem);
    double rn = 0, nn = 0;
    for (auto v : rem) rn = std::max(rn, std::abs(v));
    for (auto v : num) nn = std::max(nn, std::abs(v));
    if (rn > c.tolerances().remainder * std::max(1.0, nn)) throw Error("inconsistent divisor/curve", "tau remainder");
    xi.tau.resize(g + 1, 0.0);

    const RealityReport rr = reality_check(xi);
    if (rr.residual() < 1e-7 && (I * xi.sigma_m1()).real() < 0) {
        for (auto& v : xi.sigma) v = -v;
        for (auto& v : xi.tau) v = -v;
    }
    return xi;
}

RealityReport reality_check(const Potential& xi) {
    RealityReport r;
    const int g = xi.g;
    for (int k = 0; k < g; ++k) r.omega = std::max(r.omega, std::abs(xi.omega[k] + std::conj(xi.omega[g - 1 - k])));
    // τ_k against σ_{g-1-k}, stored at sigma[g-k]
    for (int k = 0; k <= g; ++k) {
        r.tau = std::max(r.tau, std::abs(xi.tau[k] + std::conj(xi.sigma[g - k])));
        r.sigma = std::max(r.sigma, std::abs(xi.sigma[k] + std::conj(xi.tau[g - k])));
    }
    const cplx is = I * xi.sigma_m1();
    r.i_sigma_positive = is.real() > 0 && std::abs(is.imag()) <= 1e-8 * std::abs(is);
    return r;
}

Potential gauge_flip(const Potential& xi) {
    Potential r = xi;
    for (auto& v : r.omega) v = -v;
    return r;
}

SpectralPolynomial induced_spectral_polynomial(const Potential& xi, const Tolerances& tol) {
    SpectralPolynomial d{xi.g, lambda_det(xi)};
    const cplx d0 = d.coeffs[0];
    if (!(d0.real() > 0) || std::abs(d0.imag()) > 1e-12 * std::abs(d0)) throw Error("rejected sample", "Delta_0 not positive");
    d = normalized(d);
    AdmissibilityReport rep;
    try {
        rep = validate_spectral(d, tol);
    } catch (const Error& e) {
        throw Error("rejected sample", e.code());
    }
    if (!rep.pass()) throw Error("rejected sample", rep.failures.front());
    return d;
}

Potential normalize_potential(const Potential& xi) {
    const cplx d0 = lambda_det(xi)[0];
    if (!(d0.real() > 0)) throw Error("rejected sample", "Delta_0 not positive");
    const double c = std::sqrt(1.0 / (16 * d0.real()));
    Potential r = xi;
    for (auto* v : {&r.omega, &r.sigma, &r.tau})
        for (auto& x : *v) x *= c;
    return r;
}

}  // namespace strip
