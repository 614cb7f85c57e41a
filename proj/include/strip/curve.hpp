#pragma once

#include "strip/common.hpp"
#include "strip/poly.hpp"

namespace strip {

struct SpectralPolynomial {
    int genus = 0;
    poly::Poly coeffs;  // Δ_0 .. Δ_2g
};

struct AdmissibilityReport {
    bool even_genus = false;
    bool real_symmetry = false;
    bool circle_symmetry = false;
    bool normalized = false;
    bool simple_roots = false;
    bool off_axes = false;
    bool orbit_closed = false;
    std::vector<cplx> roots;
    double min_separation = 0.0;
    double min_axis_distance = 0.0;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

AdmissibilityReport validate_spectral(const SpectralPolynomial& d, const Tolerances& tol = {});

// Δ = (1/16) ∏ (λ - ρ) over the orbits {r, r̄, 1/r, 1/r̄} of the seeds.
SpectralPolynomial from_root_quadruples(const std::vector<cplx>& seeds, const Tolerances& tol = {});

// Rescale so that Δ_0 = 1/16 (the curve is unchanged up to ν -> αν).
SpectralPolynomial normalized(SpectralPolynomial d);

enum class Sheet { upper, lower };
inline double sign_of(Sheet s) { return s == Sheet::upper ? 1.0 : -1.0; }
inline Sheet other(Sheet s) { return s == Sheet::upper ? Sheet::lower : Sheet::upper; }

struct SurfacePoint {
    enum class Kind { finite, zero, infinity };
    Kind kind = Kind::finite;
    cplx lambda{};
    cplx nu{};
    Sheet sheet = Sheet::upper;

    static SurfacePoint zero() { return {Kind::zero, 0.0, 0.0, Sheet::upper}; }
    static SurfacePoint infinity() { return {Kind::infinity, 0.0, 0.0, Sheet::upper}; }
    bool finite() const { return kind == Kind::finite; }
};

struct Divisor {
    std::vector<SurfacePoint> points;
    std::vector<int> mult;

    void add(const SurfacePoint& p, int m = 1) {
        points.push_back(p);
        mult.push_back(m);
    }
    int degree() const {
        int d = 0;
        for (int m : mult) d += m;
        return d;
    }
};

enum class ChartLocation { zero, infinity };

// Expansions in the local parameter t (t = λν at 0, t = ν/λ^g at ∞).
// x(t) is λ at 0 and 1/λ at ∞; only even powers occur.
struct LocalChart {
    ChartLocation where = ChartLocation::zero;
    int order = 0;
    int genus = 0;
    std::vector<cplx> x;  // coefficients of t^0..t^order

    // ν as a Laurent series: coefficient k is that of t^(k + nu_offset()).
    int nu_offset() const { return where == ChartLocation::zero ? -1 : -2 * genus + 1; }
    std::vector<cplx> nu() const;

    // λ^(m-1) dλ/(λν) = f(t) dt; coefficient k is that of t^(k + offset) with offset returned.
    std::vector<cplx> raw_differential(int m, int& offset) const;
};

class Curve {
public:
    struct Arc {
        double rho = 0.0;  // radius of the cut arc
        double phi = 0.0;  // half opening angle; the arc spans |arg λ| <= phi
        cplx root{};       // the root at angle +phi
    };

    explicit Curve(const SpectralPolynomial& d, const Tolerances& tol = {});
    static Curve from_seeds(const std::vector<cplx>& seeds, const Tolerances& tol = {});

    int genus() const { return g_; }
    const SpectralPolynomial& spectral() const { return delta_; }
    const std::vector<cplx>& roots() const { return roots_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Tolerances& tolerances() const { return tol_; }

    cplx delta(cplx lambda) const { return poly::eval(delta_.coeffs, lambda); }

    // Upper-sheet ν at λ = exp(logr + iθ), θ in [0, 2π]; continuous off the cuts.
    cplx nu_polar(double logr, double theta) const;
    cplx nu(cplx lambda, Sheet s) const;
    bool on_cut(cplx lambda, double tol) const;
    Sheet sheet_of(cplx lambda, cplx nu) const;
    SurfacePoint point(cplx lambda, Sheet s) const;

    // k = 1: (λ, -ν); k = 2: (λ̄, ν̄); k = 3: (1/λ̄, ν̄/λ̄^(g-1)).
    SurfacePoint involution(int k, const SurfacePoint& p) const;

    LocalChart local_expansion(ChartLocation where, int order) const;

private:
    SpectralPolynomial delta_;
    Tolerances tol_;
    int g_ = 0;
    std::vector<cplx> roots_;
    std::vector<Arc> arcs_;
    cplx prefactor_{};
};

double arg_2pi(cplx z);  // argument in [0, 2π)

}  // namespace strip
