#pragma once

#include <functional>
#include <optional>

#include "strip/laurent.hpp"

namespace strip {

// ξ̂[P,Q] = Π₋(P(1/λ)ξ) + Π₊(λ^{1-g} Q̄(λ) ξ)
LaurentMatrix xi_hat(const Potential& xi, const poly::Poly& P, const poly::Poly& Q);

struct FlowOptions {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    double drift_tol = 1e-7;
    int samples = 0;  // extra equally spaced states recorded along the path
};

struct FlowState {
    double t = 0;
    Potential xi;
    double det_drift = 0;  // max coefficient deviation of λ Det ξ_t from λ Det ξ_0
};

// ∂_t ξ = [ξ̂[P,Q], ξ]; throws "flow drift" if the determinant moves by more than drift_tol.
std::vector<FlowState> integrate_flow(const Potential& xi0, const poly::Poly& P, const poly::Poly& Q, double t,
                                      const FlowOptions& opt = {});
Potential flow_to(const Potential& xi0, const poly::Poly& P, const poly::Poly& Q, double t,
                  const FlowOptions& opt = {});

// e^u = 4iσ_{-1}; the branch of log nearest to `near` when given, else the principal one.
cplx u_from_potential(const Potential& xi, std::optional<cplx> near = std::nullopt);

// The x- and y-flow matrices written in terms of u and its first derivatives.
LaurentMatrix xi_hat_x(cplx u, cplx u_y);
LaurentMatrix xi_hat_y(cplx u, cplx u_x);

// ∂_y ξ̂_x - ∂_x ξ̂_y + [ξ̂_x, ξ̂_y], coefficientwise max, at the given points with
// central differences of step h.
using ScalarField = std::function<cplx(double x, double y)>;
double zero_curvature_residual(const ScalarField& u, const std::vector<std::pair<double, double>>& pts, double h);

}  // namespace strip
