#pragma once

#include <functional>

#include "strip/curve.hpp"

namespace strip {

// Path piece along which log|λ| and arg λ vary linearly; arg is measured in [0, 2π]
// and the sheet refers to the continuous branch of nu_polar on that range.
struct PolarSegment {
    double s0 = 0, t0 = 0, s1 = 0, t1 = 0;
    Sheet sheet = Sheet::upper;
};

struct Cycle {
    enum class Kind { alpha, beta };
    Kind kind = Kind::alpha;
    int index = 0;  // 0-based
    std::vector<PolarSegment> segments;
    int orientation = 1;

    Cycle reversed() const;
};

struct CycleBasis {
    std::vector<Cycle> alpha, beta;
    double clearance = 0.0;  // smallest log-radius margin to a foreign cut
};

CycleBasis build_cycle_basis(const Curve& c);

// Integrand h(λ, ν) for a differential h(λ, ν) dλ.
using Integrand = std::function<cplx(cplx lambda, cplx nu)>;

cplx integrate(const Curve& c, const PolarSegment& seg, const Integrand& h, double tol);
cplx integrate(const Curve& c, const Cycle& cyc, const Integrand& h, double tol);

// λ^(m-1) dλ/(λν); m may be any integer.
Integrand raw_differential(int m);
cplx integrate_raw(const Curve& c, const Cycle& cyc, int m, double tol);

// Algebraic intersection numbers α_i·β_j from the segment geometry (same-sheet crossings).
Eigen::MatrixXi intersection_matrix(const CycleBasis& b);

struct PeriodData {
    Curve curve;
    CycleBasis cycles;
    CMat C;     // C(i,k) = ∮_{α_i} λ^k dλ/(λν)
    CMat B;     // same over β_i
    CMat Cinv;  // ζ_j = Σ_k ω_k Cinv(k, j)
    CMat Pi;    // B · Cinv
};

PeriodData period_matrix(const Curve& c);

struct PeriodInvariants {
    double re_half = 0;      // max |Re Π - ½ I|
    double symmetric = 0;    // max |Π - Πᵀ|
    double flip = 0;         // max |Π_{i,g+1-j} - Π_{g+1-i,j}|
    double min_im_eig = 0;   // smallest eigenvalue of Im Π
    double normalization = 0;  // max |∮_α ζ - δ|
};
PeriodInvariants period_invariants(const PeriodData& pd);

// Normalized holomorphic differential ζ_i evaluated as a function (times dλ).
cplx zeta(const PeriodData& pd, int i, cplx lambda, cplx nu);

// Residue pairing Res_0(νP(1/λ)ω_m) + Res_∞(νλ^(1-g) Q̄(λ) ω_m), m = 1..g,
// computed from the local charts.
CVec residue_pairing(const PeriodData& pd, const poly::Poly& P, const poly::Poly& Q);

// Pairing constant between residues and β-periods; fixed by the explicit-Ω cross-check.
inline const cplx kReciprocity = -2.0 * pi * I;

CVec second_kind_V(const PeriodData& pd, const poly::Poly& P, const poly::Poly& Q);

// Ω[P,Q] = q(λ) dλ/(λν) with q a Laurent polynomial starting at power lo.
struct OmegaDifferential {
    int lo = 0;
    std::vector<cplx> q;
    cplx coeff(int power) const;
    cplx eval(cplx lambda, cplx nu) const;  // Ω / dλ
};

OmegaDifferential build_omega(const PeriodData& pd, const poly::Poly& P, const poly::Poly& Q);
CVec alpha_periods(const PeriodData& pd, const OmegaDifferential& om);
CVec beta_periods(const PeriodData& pd, const OmegaDifferential& om);

struct InjectivityReport {
    CMat columns;  // column k = V[λ^k, 0]
    double min_singular = 0;
};
InjectivityReport injectivity_check(const PeriodData& pd);

}  // namespace strip
