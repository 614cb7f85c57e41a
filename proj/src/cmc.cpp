#include "strip/cmc.hpp"

#include <cmath>

namespace strip {

DurhamCoefficients ab_from_contact(const SphereContact& sc) {
    if (!(sc.R > 0) || (sc.epsilon != 1 && sc.epsilon != -1)) throw Error("invalid input", "need R > 0, eps = +-1");
    const double c = std::cos(sc.theta), s = std::sin(sc.theta);
    const double eps = sc.epsilon;
    if (sc.convention == AngleConvention::normal) {
        if (std::abs(c) < 1e-12) throw Error("degenerate contact angle");
        return {eps / (c * sc.R) + 0.5 * s / c, 0.5 * s / c};
    }
    if (std::abs(s) < 1e-12) throw Error("degenerate contact angle");
    return {eps / (s * sc.R) + 0.5 * c / s, 0.5 * c / s};
}

PrincipalCurvatures principal_curvatures(double omega) {
    const double e = std::exp(-2 * omega);
    return {0.5 * (1 + e), 0.5 * (1 - e)};
}

double geodesic_curvature(double omega_y, double omega) { return std::exp(-omega) * omega_y; }

double sphere_relation_residual(const SphereContact& sc, double omega) {
    SphereContact s = sc;
    s.convention = AngleConvention::sphere;
    const auto [A, B] = ab_from_contact(s);
    const double e = std::exp(omega);
    const double wy = A * e + B / e;
    const double lhs = sc.epsilon * e * e / sc.R;
    const double rhs = e * std::sin(sc.theta) * wy - 0.5 * e * e * std::cos(sc.theta) * (1 + 1 / (e * e));
    return lhs - rhs;
}

}  // namespace strip
