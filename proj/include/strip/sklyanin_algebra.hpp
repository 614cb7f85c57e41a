#pragma once

#include <cstdint>

#include "strip/laurent.hpp"

namespace strip {

// One diagonal of a two-variable potential: value(m) is the coefficient of λ^m γ^(d-m).
struct BandDiagonal {
    int lo = 0;
    std::vector<cplx> c;

    int hi() const { return lo + int(c.size()) - 1; }
    cplx at(int m) const { return (m < lo || m > hi()) ? cplx{} : c[m - lo]; }
    void set(int m, cplx v);
};

// ξ(λ,γ) = Σ λ^m γ^n ξ_{m,n} with ξ_{m,n} = ω σ0 on m+n = 0, τ σ- on m+n = 1, σ σ+ on m+n = -1.
// σ0 = diag(1,-1), σ+ the upper-right and σ- the lower-left unit matrix.
struct BiLaurentPotential {
    BandDiagonal omega, tau, sigma;

    // Coefficient accessors in (m, n); zero off the owning diagonal.
    cplx w(int m, int n) const { return m + n == 0 ? omega.at(m) : cplx{}; }
    cplx t(int m, int n) const { return m + n == 1 ? tau.at(m) : cplx{}; }
    cplx s(int m, int n) const { return m + n == -1 ? sigma.at(m) : cplx{}; }

    int lo() const;
    int hi() const;
    Eigen::Matrix2cd at(cplx lambda, cplx gamma) const;
    CVec flat() const;
    double max_abs() const;
};

// The gauge e^{-θσ0/2} ξ(λ/γ) e^{θσ0/2}, e^θ = γ. Only the coefficient bookkeeping depends on γ,
// so the result is stored independently of it; gamma is used to check the evaluation identity.
BiLaurentPotential gauge_to_bilaurent(const Potential& xi);
BiLaurentPotential gauge_to_bilaurent(const LaurentMatrix& m);
Eigen::Matrix2cd gauged_value(const Potential& xi, cplx lambda, cplx gamma);
// Back to one variable (γ = 1). Shape defect reports coefficients outside the potential shape.
Potential bilaurent_to_potential(const BiLaurentPotential& b, int g, double* shape_defect = nullptr);

// K(λ,γ) = (λ/γ - γ/λ)[[0,1],[1,0]] + diag(4Aγ - 4Bλ, 4A/γ - 4B/λ)
Eigen::Matrix2cd K_bilaurent(double A, double B, cplx lambda, cplx gamma);
// ‖K(λ,γ)ξ(λ,γ) - λ^q γ^{-q} ξ(1/λ,1/γ)K(λ,γ)‖ at one point
double bilaurent_sklyanin_residual(const BiLaurentPotential& b, int q, double A, double B, cplx lambda, cplx gamma);

enum class Family { A1, A2, A3, B1, B2 };
const char* family_name(Family f);

struct ConstraintEvaluation {
    Family family = Family::A1;
    int q = 0;
    std::map<std::pair<int, int>, cplx> values;  // keyed by (m, n)
    double max_abs() const;
    double max_off_diagonal() const;  // values away from the family's own diagonal
};

cplx constraint(Family f, const BiLaurentPotential& xi, int q, double A, double B, int m, int n);

// Every (m, n) with |m+n| <= 2 and m in [mlo, mhi]; by default the range is wide enough to
// reach every nonzero value. An explicit range that misses part of it throws "window too small".
ConstraintEvaluation evaluate_constraints(const BiLaurentPotential& xi, Family f, int q, double A, double B);
ConstraintEvaluation evaluate_constraints(const BiLaurentPotential& xi, Family f, int q, double A, double B,
                                          int mlo, int mhi);

// Θ_k^q(ξ) = Π₋(λ^{-k}ξ) + Π₊(λ^{k-q}ξ), coefficientwise.
BiLaurentPotential theta_projection(const BiLaurentPotential& xi, int k, int q);

// Diagonal ranges of the unknowns; the defaults reproduce the one-variable potential shape.
struct KernelWindow {
    int omega_lo = 0, omega_hi = 0;
    int tau_lo = 0, tau_hi = 0;
    int sigma_lo = 0, sigma_hi = 0;
    static KernelWindow potential_shape(int g);
    static KernelWindow symmetric(int w);  // every diagonal on m in [-w, w]
};

struct KernelSample {
    BiLaurentPotential xi;
    int null_dim = 0;
    double residual = 0;  // largest A-family value of the sample
};

// Random element of the joint null space of the families in `families` over the window.
// Throws "no kernel sample" if the null space is trivial.
KernelSample sample_kernel(const std::vector<Family>& families, int q, const KernelWindow& win, double A, double B,
                           std::uint64_t seed);
// The q-Sklyanin kernel: families A1, A2, A3.
KernelSample sample_sklyanin_kernel(int q, const KernelWindow& win, double A, double B, std::uint64_t seed);

struct IdentityTally {
    std::string name;
    int trials = 0;
    int passed = 0;
    double worst = 0;
    bool pass() const { return trials > 0 && passed == trials; }
};

// Runs the identity checks of the two-variable gauge over `trials` seeded samples each.
std::vector<IdentityTally> algebra_selftest(int q, int window, int trials, std::uint64_t seed, double A = 0.7,
                                         double B = -0.3, double tol = 1e-10);

}  // namespace strip
