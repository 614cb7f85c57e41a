#pragma once

#include "strip/common.hpp"

namespace strip {

// normal: θ measured against the sphere's normal, A = ε/(R cos θ) + ½ tan θ.
// sphere: θ measured against the sphere itself, A = ε/(R sin θ) + ½ cot θ.
enum class AngleConvention { normal, sphere };

struct SphereContact {
    double R = 1;
    double theta = 0;
    int epsilon = 1;
    AngleConvention convention = AngleConvention::normal;
};

struct DurhamCoefficients {
    double A = 0, B = 0;
};

// Throws "degenerate contact angle" when the relevant denominator vanishes, "invalid input"
// for R <= 0 or ε not ±1.
DurhamCoefficients ab_from_contact(const SphereContact& sc);

struct PrincipalCurvatures {
    double kx = 0, ky = 0;
};
// Hopf differential dz²/4, mean curvature ½, conformal factor e^ω.
PrincipalCurvatures principal_curvatures(double omega);

// Geodesic curvature of the horizontal lines: e^{-ω} ω_y.
double geodesic_curvature(double omega_y, double omega);

// Left minus right side of ε e^{2ω}/R = e^ω sin θ ω_y - ½ e^{2ω} cos θ (1 + e^{-2ω}), the
// relation between the sphere and the boundary curve, with ω_y = A e^ω + B e^{-ω} from the
// coefficients of sc (sphere convention angle).
double sphere_relation_residual(const SphereContact& sc, double omega);

}  // namespace strip
