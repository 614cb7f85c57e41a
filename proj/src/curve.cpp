#include "strip/curve.hpp"

#include <algorithm>
#include <cmath>

namespace strip {

namespace {

using Series = std::vector<cplx>;

Series smul(const Series& a, const Series& b, std::size_t n) {
    Series c(n, 0.0);
    for (std::size_t i = 0; i < a.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
    return c;
}

Series sinv(const Series& a, std::size_t n) {
    Series b(n, 0.0);
    b[0] = 1.0 / a[0];
    for (std::size_t k = 1; k < n; ++k) {
        cplx acc = 0.0;
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * b[k - j];
        b[k] = -acc / a[0];
    }
    return b;
}

Series spow(const Series& a, int e, std::size_t n) {
    Series base = e >= 0 ? a : sinv(a, n);
    Series out(n, 0.0);
    out[0] = 1.0;
    for (int k = 0; k < std::abs(e); ++k) out = smul(out, base, n);
    return out;
}

// Invert s = sum_{k>=1} c_k x^k for x(s) up to s^n.
Series revert(const Series& c, std::size_t n) {
    Series x(n + 1, 0.0);
    for (std::size_t it = 0; it < n + 1; ++it) {
        Series acc(n + 1, 0.0);
        Series xp = x;  // x^1
        for (std::size_t k = 2; k < c.size(); ++k) {
            xp = smul(xp, x, n + 1);
            for (std::size_t j = 0; j <= n; ++j) acc[j] += c[k] * xp[j];
        }
        Series next(n + 1, 0.0);
        next[1] = 1.0;
        for (std::size_t j = 0; j <= n; ++j) next[j] = (next[j] - acc[j]) / c[1];
        x = next;
    }
    return x;
}

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); }

}  // namespace

double arg_2pi(cplx z) {
    double a = std::arg(z);
    if (a < 0) a += 2 * pi;
    if (a >= 2 * pi) a -= 2 * pi;
    return a;
}

AdmissibilityReport validate_spectral(const SpectralPolynomial& d, const Tolerances& tol) {
    AdmissibilityReport rep;
    const int g = d.genus;
    const auto& c = d.coeffs;
    if (int(c.size()) != 2 * g + 1 || g < 1) {
        rep.failures.push_back("coefficient count must be 2g+1");
        return rep;
    }
    rep.even_genus = g >= 2 && g % 2 == 0;
    if (!rep.even_genus) rep.failures.push_back("genus must be even and >= 2");
    if (std::abs(c[2 * g]) < tol.coeff) throw Error("degenerate degree", "leading coefficient vanishes");

    double scale = 0.0;
    for (auto v : c) scale = std::max(scale, std::abs(v));
    rep.real_symmetry = true;
    rep.circle_symmetry = true;
    for (int i = 0; i <= 2 * g; ++i) {
        if (std::abs(c[i].imag()) > tol.coeff * scale) rep.real_symmetry = false;
        if (std::abs(std::conj(c[2 * g - i]) - c[i]) > tol.coeff * scale) rep.circle_symmetry = false;
    }
    if (!rep.real_symmetry) rep.failures.push_back("coefficients not real");
    if (!rep.circle_symmetry) rep.failures.push_back("circle symmetry violated");
    rep.normalized = std::abs(c[0] - 1.0 / 16) < tol.coeff;
    if (!rep.normalized) rep.failures.push_back("Delta_0 != 1/16");

    rep.roots = poly::roots(c);
    const auto& r = rep.roots;
    rep.min_separation = INFINITY;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) rep.min_separation = std::min(rep.min_separation, std::abs(r[i] - r[j]));
    rep.simple_roots = rep.min_separation > tol.root_sep;
    if (!rep.simple_roots) throw Error("non-simple root", "separation " + std::to_string(rep.min_separation));

    rep.min_axis_distance = INFINITY;
    bool on_real = false, on_circle = false;
    for (auto z : r) {
        double dr = std::abs(z.imag()), dc = std::abs(std::abs(z) - 1.0);
        rep.min_axis_distance = std::min({rep.min_axis_distance, dr, dc});
        on_real |= dr < tol.axis;
        on_circle |= dc < tol.axis;
    }
    rep.off_axes = !on_real && !on_circle;
    if (on_real) rep.failures.push_back("root on ℝ");
    if (on_circle) rep.failures.push_back("root on unit circle");

    rep.orbit_closed = true;
    for (auto z : r) {
        bool has_conj = false, has_inv = false;
        for (auto w : r) {
            has_conj |= near(std::conj(z), w, 1e3 * tol.orbit);
            has_inv |= near(1.0 / std::conj(z), w, 1e3 * tol.orbit);
        }
        rep.orbit_closed &= has_conj && has_inv;
    }
    if (!rep.orbit_closed) rep.failures.push_back("root set not closed under reflections");
    return rep;
}

SpectralPolynomial from_root_quadruples(const std::vector<cplx>& seeds, const Tolerances& tol) {
    std::vector<cplx> all;
    for (auto r : seeds) {
        if (std::abs(r.imag()) < tol.axis || std::abs(std::abs(r) - 1.0) < tol.axis) throw Error("invalid seed");
        for (auto z : {r, std::conj(r), 1.0 / r, 1.0 / std::conj(r)}) {
            for (auto w : all)
                if (std::abs(z - w) < tol.root_sep) throw Error("orbit collision");
            all.push_back(z);
        }
    }
    SpectralPolynomial d;
    d.genus = int(all.size()) / 2;
    d.coeffs = poly::from_roots(all, 1.0 / 16);
    // the symmetries hold exactly in theory; remove rounding noise
    for (auto& v : d.coeffs) v = v.real();
    return d;
}

SpectralPolynomial normalized(SpectralPolynomial d) {
    if (d.coeffs.empty() || d.coeffs[0] == 0.0) throw Error("degenerate degree", "Delta_0 = 0");
    cplx s = (1.0 / 16) / d.coeffs[0];
    for (auto& v : d.coeffs) v *= s;
    return d;
}

std::vector<cplx> LocalChart::nu() const {
    // ν = t / λ at 0 and ν = t / μ^g at ∞, with x = a t^2 (1 + ...)
    const std::size_t n = x.size() >= 2 ? x.size() - 2 : 1;
    Series y(x.begin() + 2, x.end());
    int e = where == ChartLocation::zero ? -1 : -genus;
    return spow(y, e, n);
}

std::vector<cplx> LocalChart::raw_differential(int m, int& offset) const {
    const std::size_t n = x.size() >= 2 ? x.size() - 2 : 1;
    Series y(x.begin() + 2, x.end());
    Series dx(n, 0.0);  // x'(t)/t
    for (std::size_t j = 0; j < n; ++j) dx[j] = double(j + 2) * x[j + 2];
    if (where == ChartLocation::zero) {
        int e = m - 1;
        offset = 2 * e;
        return smul(spow(y, e, n), dx, n);
    }
    int e = genus - m;
    offset = 2 * e;
    Series f = smul(spow(y, e, n), dx, n);
    for (auto& v : f) v = -v;
    return f;
}

Curve::Curve(const SpectralPolynomial& d, const Tolerances& tol) : delta_(normalized(d)), tol_(tol), g_(d.genus) {
    auto rep = validate_spectral(delta_, tol_);
    if (!rep.pass()) throw Error("inadmissible curve", rep.failures.front());
    roots_ = rep.roots;
    for (auto z : roots_)
        if (z.imag() > 0) arcs_.push_back({std::abs(z), std::arg(z), z});
    std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) { return a.rho < b.rho; });
    double prod = 1.0;
    for (const auto& a : arcs_) prod *= a.rho;
    prefactor_ = std::sqrt(prod) / 4.0 * std::pow(I, 1 - g_);
}

Curve Curve::from_seeds(const std::vector<cplx>& seeds, const Tolerances& tol) {
    return Curve(from_root_quadruples(seeds, tol), tol);
}

cplx Curve::nu_polar(double logr, double theta) const {
    const double r = std::exp(logr);
    cplx val = prefactor_ * std::exp(0.5 * (g_ - 1) * cplx(logr, theta));
    const double c = std::cos(theta), s = std::sin(theta);
    for (const auto& a : arcs_) {
        double q = r / a.rho;
        cplx gj((q + 1.0 / q) * c - 2.0 * std::cos(a.phi), (q - 1.0 / q) * s);
        val *= std::sqrt(-gj);
    }
    return val;
}

bool Curve::on_cut(cplx lambda, double tol) const {
    const double th = arg_2pi(lambda);
    if (std::abs(lambda.imag()) <= tol && lambda.real() >= 0) return true;
    if (th < tol || 2 * pi - th < tol) return true;
    const double r = std::abs(lambda);
    for (const auto& a : arcs_) {
        double psi = th > pi ? 2 * pi - th : th;
        if (std::abs(r - a.rho) <= tol * a.rho && psi <= a.phi + tol) return true;
    }
    return false;
}

cplx Curve::nu(cplx lambda, Sheet s) const {
    if (lambda == 0.0) throw Error("cut ambiguity", "lambda = 0 is a branch point");
    if (on_cut(lambda, 1e-14)) throw Error("cut ambiguity");
    return sign_of(s) * nu_polar(std::log(std::abs(lambda)), arg_2pi(lambda));
}

Sheet Curve::sheet_of(cplx lambda, cplx nuv) const {
    cplx up = nu_polar(std::log(std::abs(lambda)), arg_2pi(lambda));
    return std::abs(nuv - up) <= std::abs(nuv + up) ? Sheet::upper : Sheet::lower;
}

SurfacePoint Curve::point(cplx lambda, Sheet s) const {
    SurfacePoint p;
    p.lambda = lambda;
    p.nu = sign_of(s) * nu_polar(std::log(std::abs(lambda)), arg_2pi(lambda));
    p.sheet = s;
    return p;
}

SurfacePoint Curve::involution(int k, const SurfacePoint& p) const {
    if (!p.finite()) {
        if (k == 3) return p.kind == SurfacePoint::Kind::zero ? SurfacePoint::infinity() : SurfacePoint::zero();
        return p;
    }
    SurfacePoint q;
    switch (k) {
        case 1: q.lambda = p.lambda; q.nu = -p.nu; break;
        case 2: q.lambda = std::conj(p.lambda); q.nu = std::conj(p.nu); break;
        case 3: {
            cplx lb = std::conj(p.lambda);
            q.lambda = 1.0 / lb;
            q.nu = std::conj(p.nu) / std::pow(lb, g_ - 1);
            break;
        }
        default: throw Error("invalid involution index");
    }
    q.sheet = sheet_of(q.lambda, q.nu);
    return q;
}

LocalChart Curve::local_expansion(ChartLocation where, int order) const {
    if (order < 1) throw Error("invalid order", "order must be >= 1");
    if (order > 96) throw Error("expansion overflow");
    const auto& c = delta_.coeffs;
    const int n2 = 2 * g_;
    // s = t^2 = -x·D(x) with D = Δ at 0 and the reversed Δ at ∞
    Series cs(n2 + 2, 0.0);
    for (int k = 0; k <= n2; ++k) cs[k + 1] = -(where == ChartLocation::zero ? c[k] : c[n2 - k]);
    const std::size_t half = std::size_t(order) / 2 + 2;
    Series xs = revert(cs, half);
    LocalChart ch;
    ch.where = where;
    ch.order = order;
    ch.genus = g_;
    ch.x.assign(2 * half + 1, 0.0);
    for (std::size_t j = 0; j <= half; ++j) ch.x[2 * j] = xs[j];
    for (auto v : ch.x)
        if (!std::isfinite(std::abs(v))) throw Error("expansion overflow");
    return ch;
}

}  // namespace strip
