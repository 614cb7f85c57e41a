#pragma once

#include "strip/homology.hpp"

namespace strip {

struct Reduction {
    CVec reduced;        // z minus the nearest lattice vector
    Eigen::VectorXi n;   // integer part
    Eigen::VectorXi m;   // Π part
    double distance = 0; // max-norm of reduced
    bool ill_conditioned = false;
};

// Riemann theta with matrix Π: Σ exp(iπ nᵀΠn + 2iπ nᵀz) over the ellipsoid
// π (n-c)ᵀ ImΠ (n-c) <= R², c the maximizing centre; tail below tol relative to the top term.
class Theta {
public:
    explicit Theta(const CMat& Pi, double tol = 1e-15, double radius_scale = 1.0);
    cplx operator()(const CVec& z) const;
    double radius() const { return R2_; }
    int genus() const { return g_; }

private:
    CMat Pi_;
    RMat Y_, Yinv_, U_;  // U upper triangular with Y = UᵀU
    double R2_ = 0;
    int g_ = 0;
};

class Jacobian {
public:
    explicit Jacobian(PeriodData pd);

    const PeriodData& periods() const { return pd_; }
    const Curve& curve() const { return pd_.curve; }
    int genus() const { return pd_.curve.genus(); }
    const CMat& Pi() const { return pd_.Pi; }

    // Abel map based at 0; the path runs along the negative axis then round the circle |λ| = const.
    CVec abel(const SurfacePoint& p) const;
    CVec abel(const Divisor& d) const;
    const CVec& abel_infinity() const { return a_inf_; }

    // Half-period K with z = 𝒜(D) - K the theta argument of the potential with divisor D.
    const CVec& riemann_offset() const { return k_; }
    CVec potential_point(const Divisor& d) const { return abel(d) - k_; }

    Reduction reduce(const CVec& z) const;
    double distance(const CVec& z) const { return reduce(z).distance; }

    const Theta& theta() const { return theta_; }

private:
    PeriodData pd_;
    CVec a_inf_, k_;
    Theta theta_;
};

CVec Phi(const CVec& z);  // z_i - conj(z_{g+1-i})
CVec Psi(const CVec& z);  // z_i - z_{g+1-i}

struct RealLocusResult {
    bool real = false;
    double residual = 0;
};
// The real locus is Φ(z) ≡ 𝒜(∞) in this homology basis.
RealLocusResult is_real_locus(const Jacobian& J, const CVec& z, double tol);

struct InvolutionResiduals {
    double s1 = 0, s2 = 0, s3 = 0;
};
InvolutionResiduals involution_identity_check(const Jacobian& J, const SurfacePoint& p);

// Lattice generators mapped through Φ and Ψ stay in the lattice.
double symmetry_preservation(const Jacobian& J);

}  // namespace strip
