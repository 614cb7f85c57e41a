#pragma once

#include <optional>

#include "strip/jacobian.hpp"
#include "strip/potential.hpp"

namespace strip {

// u(x,y) = log(θ(φ)/θ(φ + D)), φ = z0 + κ V[w, w], w = x + iy.
struct SolutionParams {
    const Jacobian* J = nullptr;
    CVec z0;
    CVec D;
    cplx kappa{};
    CVec V10, V01;  // V[1,0] and V[0,1]

    CVec velocity(cplx w) const { return kappa * (w * V10 + std::conj(w) * V01); }
    CVec phi(double x, double y) const { return z0 + velocity(cplx(x, y)); }
};

inline const cplx kDefaultKappa = I / (2 * pi);

SolutionParams make_solution(const Jacobian& J, const CVec& z0, std::optional<CVec> D = std::nullopt,
                             cplx kappa = kDefaultKappa);

// Throws "theta divisor hit" when either theta value vanishes.
cplx evaluate_u(const SolutionParams& s, double x, double y);

struct Grid {
    double x0 = -1, x1 = 1, y0 = 0, y1 = 1;
    int nx = 41, ny = 41;
    std::vector<std::pair<double, double>> points() const;
};

struct ResidualReport {
    double max = 0, rms = 0;
    double max_imag_u = 0;
    int points = 0;
};

// u_zz̄ + sinh(2u)/8 with u_zz̄ = (u_xx + u_yy)/4 by central differences of step h.
cplx pde_residual_at(const SolutionParams& s, double x, double y, double h);
ResidualReport pde_residual(const SolutionParams& s, const Grid& grid, double h = 1e-3);

// |u_y - (Ae^u + Be^{-u})| along the row y, one-sided second-order differences into the strip.
// complementary: the condition u_y = -(Ae^u + Be^{-u}) with the stencil pointing down.
ResidualReport durham_boundary_residual(const SolutionParams& s, double A, double B, double y, bool complementary,
                                        const std::vector<double>& xs, double h = 1e-3);

struct Calibration {
    CVec D;
    cplx kappa{};
    double residual = 0;
    int candidates_tried = 0;
};

// Search D over all half periods and κ over a fixed candidate list, refine |κ| by Brent minimization.
// Candidates giving constant u (D in the lattice) are skipped.
Calibration calibrate(const Jacobian& J, const CVec& z0_real, double threshold = 1e-5);

// Half periods K for which log θ(𝒜(D) - K)/θ(𝒜(D) - K + 𝒜(∞)) reproduces log(4iσ_{-1}) of ξ
// (mod iπ) along the x- and y-flows; the expected result is the single Jacobian::riemann_offset().
std::vector<CVec> matching_offsets(const Jacobian& J, const Potential& xi, double tol = 1e-7);

std::vector<CVec> half_periods(const CMat& Pi);

}  // namespace strip
