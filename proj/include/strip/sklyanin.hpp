#pragma once

#include "strip/jacobian.hpp"
#include "strip/laurent.hpp"

namespace strip {

enum class Regime { generic, a_eq_b, a_eq_minus_b, neumann };
const char* regime_name(Regime r);

struct KMatrix {
    double A = 0, B = 0;
    Regime regime = Regime::generic;

    explicit KMatrix(double A, double B, double tol = 1e-10);
    Eigen::Matrix2cd at(cplx lambda) const;       // K(λ)
    Eigen::Matrix2cd reduced(cplx lambda) const;  // K′, K″ in the degenerate regimes, else K
    LaurentMatrix laurent() const;                // K as λ^{-1}, λ^0, λ^1 coefficients
};

// 16A² + 16B² - 16AB(λ + 1/λ) - (λ - 1/λ)²
cplx det_K(double A, double B, cplx lambda);

// Real roots of Det of the (reduced) K-matrix, sorted; 4 generic, 2 degenerate, 0 Neumann.
std::vector<double> det_K_roots(const KMatrix& K);

struct SklyaninSet {
    KMatrix K{0, 0};
    std::vector<SurfacePoint> points;
    std::vector<int> partner;  // index of σ2σ3 of each point
};

// Throws "root isolation failure" if the expected number of real roots is not found.
SklyaninSet sklyanin_set(const Curve& c, double A, double B);

using Subset = std::vector<int>;  // sorted indices into SklyaninSet::points

// Transversals of σ2σ3 that are also σ1σ2σ3-invariant; throws "enumeration anomaly"
// when the count is not 4 (generic) or 2 (degenerate).
std::vector<Subset> enumerate_special_subsets(const Curve& c, const SklyaninSet& S);
// Number of σ2σ3 transversals before the σ1σ2σ3 condition (16 generic, 4 degenerate).
int count_transversals(const SklyaninSet& S);
Subset complement(const SklyaninSet& S, const Subset& s0);

// Points of S where ν is the eigenvalue of ξ(λ) on Ker K(λ).
Subset special_points_of(const Potential& xi, const SklyaninSet& S, double tol = 1e-6);

// max coefficient of K(λ)ξ(λ) - ε λ^q ξ(1/λ)K(λ)
double q_sklyanin_residual(const Potential& xi, int q, const KMatrix& K, int eps = 1);

// -(4A - 4Bλ)/(λ - 1/λ), the second component of the kernel direction (1, ·) of K(λ).
cplx kernel_eigenline_value(double A, double B, cplx lambda);
cplx complementary_eigenline_value(double A, double B, cplx lambda);

// Real-parameter basis of the anti-real potentials satisfying the q-Sklyanin condition:
// column j holds the flat (ω, σ, τ) coefficients of one basis element.
CMat sklyanin_potential_kernel(int g, int q, const KMatrix& K);
Potential potential_from_flat(int g, const CVec& v);

struct DurhamReport {
    double subspace_residual = 0;  // lattice distance of Ψ(z0) - 𝒜(S0), z0 = 𝒜(D) - K
    double divisor_residual = 0;   // same with 𝒜(D) in place of z0 (differs by 𝒜(∞))
    std::vector<double> eigenline_residuals;
    double max_eigenline = 0;
    bool verdict = false;
};

// complementary = true tests Ψ(z0) ≡ 𝒜(S0) together with the value +(4A - 4Bλ)/(λ - 1/λ).
DurhamReport durham_membership(const Jacobian& J, const Potential& xi, const SklyaninSet& S, const Subset& s0,
                               bool complementary = false, double tol_lattice = 1e-7, double tol_eig = 1e-8);

CVec abel_subset(const Jacobian& J, const SklyaninSet& S, const Subset& s);

// Lattice distance of Ψ(2z0 + L·U), U the y-velocity of the theta embedding.
double rationality_residual(const Jacobian& J, const CVec& z0, const CVec& Uy, double L);

struct RationalityCandidate {
    double L = 0;
    double residual = 0;
    CVec z1;
    double z1_residual = 0;  // lattice distance of Ψ(z1) + 𝒜(S0)
};
std::vector<RationalityCandidate> rationality_scan(const Jacobian& J, const CVec& z0, const CVec& Uy,
                                                   const CVec& abel_s0, double Lmin, double Lmax,
                                                   double accept = 1e-6);

}  // namespace strip
