#pragma once

#include "strip/curve.hpp"

namespace strip {

// ξ(λ) = [[ω, σ], [τ, -ω]] with ω of degree g-1, σ a simple Laurent polynomial
// σ_{-1}/λ + ... + σ_{g-1}λ^{g-1}, and τ of degree g.
struct Potential {
    int g = 0;
    poly::Poly omega;  // ω_0 .. ω_{g-1}
    poly::Poly sigma;  // coefficients of λσ: sigma[k] = σ_{k-1}, k = 0..g
    poly::Poly tau;    // τ_0 .. τ_g

    static Potential zero(int g);
    cplx sigma_m1() const { return sigma[0]; }
    cplx om(cplx lambda) const { return poly::eval(omega, lambda); }
    cplx sg(cplx lambda) const { return poly::eval(sigma, lambda) / lambda; }
    cplx ta(cplx lambda) const { return poly::eval(tau, lambda); }
    Eigen::Matrix2cd at(cplx lambda) const;

    Potential operator-() const;
    // coefficient vector (ω, σ, τ) for distances
    CVec flat() const;
};

// λ·Det ξ(λ) as a polynomial of degree 2g.
poly::Poly lambda_det(const Potential& xi);

struct EigenlineValue {
    cplx value{};
    bool pole = false;  // σ(λ) vanishes: φ = ∞ with the sign of (ν - ω)
};
// φ = (ν - ω)/σ
EigenlineValue eigenline(const Potential& xi, const SurfacePoint& p);

// Points (λ_j, -ω(λ_j)) over the roots of λσ.
Divisor divisor_of_potential(const Potential& xi, const Curve& c);

// sign_choice = ±1 picks between the two normalized σ; for data passing the reality
// check the sign with Re(iσ_{-1}) > 0 is used regardless.
Potential potential_from_divisor(const Divisor& d, const Curve& c, int sign_choice = 1);

// Anti-reality ξ(λ) = -λ^{g-1} conj(ξ(1/λ̄))ᵀ, coefficientwise:
// ω_k = -conj ω_{g-1-k}, τ_k = -conj σ_{g-1-k}, σ_k = -conj τ_{g-1-k}.
struct RealityReport {
    double omega = 0, sigma = 0, tau = 0;
    bool i_sigma_positive = false;  // iσ_{-1} real and > 0
    double residual() const { return std::max(omega, std::max(sigma, tau)); }
    bool pass(double tol) const { return residual() < tol && i_sigma_positive; }
};
RealityReport reality_check(const Potential& xi);

Potential gauge_flip(const Potential& xi);  // ω -> -ω

// Δ := λ·Det ξ, rescaled to Δ_0 = 1/16 when the induced curve is admissible.
// Throws "rejected sample" when validation fails.
SpectralPolynomial induced_spectral_polynomial(const Potential& xi, const Tolerances& tol = {});
// The real multiple of ξ whose induced Δ has Δ_0 = 1/16.
Potential normalize_potential(const Potential& xi);

}  // namespace strip
