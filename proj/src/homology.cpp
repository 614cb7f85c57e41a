#include "strip/homology.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace strip {

namespace {

constexpr double kTwoPi = 2 * pi;
constexpr double kBetaDiag = 0.3;  // angular width of the diagonal pieces where β crosses the axis

struct Gaps {
    std::vector<double> logr, h;
};

Gaps gaps(const Curve& c) {
    Gaps out;
    const auto& arcs = c.arcs();
    for (const auto& a : arcs) out.logr.push_back(std::log(a.rho));
    const std::size_t n = arcs.size();
    for (std::size_t i = 0; i < n; ++i) {
        double m = INFINITY;
        if (i > 0) m = std::min(m, out.logr[i] - out.logr[i - 1]);
        if (i + 1 < n) m = std::min(m, out.logr[i + 1] - out.logr[i]);
        if (!std::isfinite(m)) m = 1.0;
        out.h.push_back(0.5 * m);
    }
    return out;
}

}  // namespace

Cycle Cycle::reversed() const {
    Cycle r = *this;
    r.orientation = -orientation;
    std::reverse(r.segments.begin(), r.segments.end());
    for (auto& s : r.segments) {
        std::swap(s.s0, s.s1);
        std::swap(s.t0, s.t1);
    }
    return r;
}

CycleBasis build_cycle_basis(const Curve& c) {
    CycleBasis b;
    const Gaps gp = gaps(c);
    const int g = c.genus();
    b.clearance = INFINITY;
    for (double h : gp.h) b.clearance = std::min(b.clearance, h);
    if (b.clearance < 1e-6) throw Error("geometry failure", "cut clearance " + std::to_string(b.clearance));

    const auto U = Sheet::upper, D = Sheet::lower;
    for (int i = 0; i < g; ++i) {
        const double l = gp.logr[i], h = gp.h[i], phi = c.arcs()[i].phi;
        // α_i: box around the whole arc; the ray crossings switch sheets
        const double pa = phi + (pi - phi) / 2;
        Cycle a;
        a.kind = Cycle::Kind::alpha;
        a.index = i;
        a.segments = {{l + h, kTwoPi - pa, l + h, kTwoPi, U}, {l + h, 0, l + h, pa, D},
                      {l + h, pa, l - h, pa, D},             {l - h, pa, l - h, 0, D},
                      {l - h, kTwoPi, l - h, kTwoPi - pa, U}, {l - h, kTwoPi - pa, l + h, kTwoPi - pa, U}};
        b.alpha.push_back(a);

        // β_i: upper sheet; cross arc i where it meets the ray, go round the lower tip
        const double hh = h / 2, pb = kTwoPi - (phi + (pi - phi) / 4);
        Cycle be;
        be.kind = Cycle::Kind::beta;
        be.index = i;
        be.segments = {{l + hh, kTwoPi - kBetaDiag, l, kTwoPi, U}, {l, 0, l - hh, kBetaDiag, U},
                       {l - hh, kBetaDiag, l - hh, pb, U},         {l - hh, pb, l + hh, pb, U},
                       {l + hh, pb, l + hh, kTwoPi - kBetaDiag, U}};
        b.beta.push_back(be);
    }
    return b;
}

Eigen::MatrixXi intersection_matrix(const CycleBasis& b) {
    const int g = int(b.alpha.size());
    Eigen::MatrixXi M = Eigen::MatrixXi::Zero(g, g);
    auto cross = [](double ax, double ay, double bx, double by) { return ax * by - ay * bx; };
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            int n = 0;
            for (const auto& p : b.alpha[i].segments)
                for (const auto& q : b.beta[j].segments) {
                    if (p.sheet != q.sheet) continue;
                    const double rx = p.s1 - p.s0, ry = p.t1 - p.t0, sx = q.s1 - q.s0, sy = q.t1 - q.t0;
                    const double den = cross(rx, ry, sx, sy);
                    if (std::abs(den) < 1e-14) continue;
                    const double qx = q.s0 - p.s0, qy = q.t0 - p.t0;
                    const double t = cross(qx, qy, sx, sy) / den, u = cross(qx, qy, rx, ry) / den;
                    if (t > 0 && t < 1 && u > 0 && u < 1) n += den > 0 ? 1 : -1;
                }
            M(i, j) = n * b.alpha[i].orientation * b.beta[j].orientation;
        }
    return M;
}

cplx integrate(const Curve& c, const PolarSegment& seg, const Integrand& h, double tol) {
    const double sgn = sign_of(seg.sheet);
    const cplx dz(seg.s1 - seg.s0, seg.t1 - seg.t0);
    auto f = [&](double t) {
        const double s = seg.s0 + (seg.s1 - seg.s0) * t, th = seg.t0 + (seg.t1 - seg.t0) * t;
        const cplx lam = std::exp(cplx(s, th));
        const cplx nu = sgn * c.nu_polar(s, th);
        return h(lam, nu) * lam * dz;
    };
    double err = 0;
    cplx v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, 0.0, 1.0, 18, tol, &err);
    if (!std::isfinite(std::abs(v))) throw Error("quadrature failure", "non-finite segment value");
    return v;
}

cplx integrate(const Curve& c, const Cycle& cyc, const Integrand& h, double tol) {
    cplx acc = 0.0;
    for (const auto& s : cyc.segments) acc += integrate(c, s, h, tol);
    return acc;
}

Integrand raw_differential(int m) {
    return [m](cplx lam, cplx nu) { return std::pow(lam, m - 2) / nu; };
}

cplx integrate_raw(const Curve& c, const Cycle& cyc, int m, double tol) {
    return integrate(c, cyc, raw_differential(m), tol);
}

PeriodData period_matrix(const Curve& c) {
    PeriodData pd{c, build_cycle_basis(c), {}, {}, {}, {}};
    const int g = c.genus();
    const double tol = c.tolerances().quad;
    pd.C.resize(g, g);
    pd.B.resize(g, g);
    for (int i = 0; i < g; ++i)
        for (int k = 0; k < g; ++k) {
            pd.C(i, k) = integrate_raw(c, pd.cycles.alpha[i], k + 1, tol);
            pd.B(i, k) = integrate_raw(c, pd.cycles.beta[i], k + 1, tol);
        }
    Eigen::FullPivLU<CMat> lu(pd.C);
    if (lu.rank() < g) throw Error("degenerate raw basis");
    pd.Cinv = lu.inverse();
    pd.Pi = pd.B * pd.Cinv;
    return pd;
}

PeriodInvariants period_invariants(const PeriodData& pd) {
    PeriodInvariants r;
    const CMat& P = pd.Pi;
    const int g = int(P.rows());
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            r.re_half = std::max(r.re_half, std::abs(P(i, j).real() - (i == j ? 0.5 : 0.0)));
            r.symmetric = std::max(r.symmetric, std::abs(P(i, j) - P(j, i)));
            r.flip = std::max(r.flip, std::abs(P(i, g - 1 - j) - P(g - 1 - i, j)));
        }
    RMat Y = P.imag();
    Y = 0.5 * (Y + Y.transpose());
    r.min_im_eig = Eigen::SelfAdjointEigenSolver<RMat>(Y).eigenvalues().minCoeff();
    CMat N = pd.C * pd.Cinv - CMat::Identity(g, g);
    r.normalization = N.cwiseAbs().maxCoeff();
    return r;
}

cplx zeta(const PeriodData& pd, int i, cplx lambda, cplx nu) {
    cplx acc = 0.0;
    const int g = pd.curve.genus();
    for (int k = 0; k < g; ++k) acc += pd.Cinv(k, i) * std::pow(lambda, k - 1) / nu;
    return acc;
}

namespace {

// Laurent series in the local parameter: coefficient j is that of t^(j + off).
struct LSeries {
    int off = 0;
    std::vector<cplx> c;
};

LSeries lmul(const LSeries& a, const LSeries& b, std::size_t n) {
    LSeries r{a.off + b.off, std::vector<cplx>(n, 0.0)};
    for (std::size_t i = 0; i < a.c.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.c.size() && i + j < n; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

LSeries lpow_x(const LocalChart& ch, int e, std::size_t n) {
    // x^e with x = t^2·y(t)
    std::vector<cplx> y(ch.x.begin() + 2, ch.x.end());
    std::vector<cplx> base(n, 0.0);
    if (e < 0) {
        base[0] = 1.0 / y[0];
        for (std::size_t k = 1; k < n; ++k) {
            cplx acc = 0.0;
            for (std::size_t j = 1; j <= k && j < y.size(); ++j) acc += y[j] * base[k - j];
            base[k] = -acc / y[0];
        }
    } else {
        for (std::size_t k = 0; k < n && k < y.size(); ++k) base[k] = y[k];
    }
    LSeries out{0, std::vector<cplx>(n, 0.0)};
    out.c[0] = 1.0;
    LSeries b{0, base};
    for (int k = 0; k < std::abs(e); ++k) out = lmul(out, b, n);
    out.off = 2 * e;
    return out;
}

cplx residue(const LSeries& s) {
    const int j = -1 - s.off;
    return (j >= 0 && j < int(s.c.size())) ? s.c[j] : 0.0;
}

}  // namespace

CVec residue_pairing(const PeriodData& pd, const poly::Poly& P, const poly::Poly& Q) {
    const int g = pd.curve.genus();
    const int deg = std::max(int(P.size()), int(Q.size()));
    const int order = std::max(2 * g + 4, 4 * deg + 8);
    const LocalChart c0 = pd.curve.local_expansion(ChartLocation::zero, order);
    const LocalChart ci = pd.curve.local_expansion(ChartLocation::infinity, order);
    const std::size_t n = std::size_t(order) / 2;

    LSeries nu0{c0.nu_offset(), c0.nu()}, nui{ci.nu_offset(), ci.nu()};
    CVec r = CVec::Zero(g);
    for (int m = 1; m <= g; ++m) {
        int off0 = 0, offi = 0;
        LSeries w0{0, c0.raw_differential(m, off0)}, wi{0, ci.raw_differential(m, offi)};
        w0.off = off0;
        wi.off = offi;
        LSeries nw0 = lmul(nu0, w0, n), nwi = lmul(nui, wi, n);
        for (std::size_t k = 0; k < P.size(); ++k) {
            if (P[k] == 0.0) continue;
            // λ^(-k) at 0
            r(m - 1) += P[k] * residue(lmul(nw0, lpow_x(c0, -int(k), n), n));
        }
        for (std::size_t k = 0; k < Q.size(); ++k) {
            if (Q[k] == 0.0) continue;
            // λ^(1-g+k) = μ^(g-1-k) at ∞
            r(m - 1) += std::conj(Q[k]) * residue(lmul(nwi, lpow_x(ci, g - 1 - int(k), n), n));
        }
    }
    return r;
}

CVec second_kind_V(const PeriodData& pd, const poly::Poly& P, const poly::Poly& Q) {
    return kReciprocity * (pd.Cinv.transpose() * residue_pairing(pd, P, Q));
}

cplx OmegaDifferential::coeff(int power) const {
    const int j = power - lo;
    return (j >= 0 && j < int(q.size())) ? q[j] : 0.0;
}

cplx OmegaDifferential::eval(cplx lambda, cplx nu) const {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) acc += q[j] * std::pow(lambda, lo + int(j));
    return acc / (lambda * nu);
}

namespace {

// d(ν λ^(-k)) = q(λ) dλ/(λν); coefficient of λ^(j-k-1) is ((2k+1) - j) Δ_j / 2.
void add_exact_part(std::vector<std::pair<int, cplx>>& terms, const poly::Poly& delta, int k, cplx w) {
    for (std::size_t j = 0; j < delta.size(); ++j)
        terms.push_back({int(j) - k - 1, w * (double(2 * k + 1) - double(j)) * delta[j] / 2.0});
}

}  // namespace

OmegaDifferential build_omega(const PeriodData& pd, const poly::Poly& P, const poly::Poly& Q) {
    const int g = pd.curve.genus();
    const auto& delta = pd.curve.spectral().coeffs;
    std::vector<std::pair<int, cplx>> at0, atinf;
    for (std::size_t k = 0; k < P.size(); ++k) add_exact_part(at0, delta, int(k), P[k]);
    for (std::size_t k = 0; k < Q.size(); ++k) add_exact_part(atinf, delta, g - 1 - int(k), std::conj(Q[k]));

    int lo = 0, hi = g - 1;
    for (auto& [p, v] : at0) lo = std::min(lo, p);
    for (auto& [p, v] : atinf) hi = std::max(hi, p);
    OmegaDifferential om;
    om.lo = lo;
    om.q.assign(hi - lo + 1, 0.0);
    for (auto& [p, v] : at0)
        if (p < 0) om.q[p - lo] += v;
    for (auto& [p, v] : atinf)
        if (p >= g) om.q[p - lo] += v;

    // holomorphic middle part fixed by vanishing α-periods
    const double tol = pd.curve.tolerances().quad;
    CVec rhs = CVec::Zero(g);
    for (int i = 0; i < g; ++i)
        for (int p = lo; p <= hi; ++p) {
            if (p >= 0 && p < g) continue;
            cplx v = om.coeff(p);
            if (v != 0.0) rhs(i) -= v * integrate_raw(pd.curve, pd.cycles.alpha[i], p + 1, tol);
        }
    Eigen::FullPivLU<CMat> lu(pd.C);
    CVec c = lu.solve(rhs);
    if (!(pd.C * c).isApprox(rhs, 1e-8) && rhs.norm() > 0) throw Error("matching failure");
    for (int p = 0; p < g; ++p) om.q[p - lo] = c(p);
    return om;
}

namespace {

CVec cycle_periods(const PeriodData& pd, const OmegaDifferential& om, const std::vector<Cycle>& cyc) {
    const int g = pd.curve.genus();
    const double tol = pd.curve.tolerances().quad;
    CVec out = CVec::Zero(g);
    for (int i = 0; i < g; ++i)
        for (std::size_t j = 0; j < om.q.size(); ++j)
            if (om.q[j] != 0.0) out(i) += om.q[j] * integrate_raw(pd.curve, cyc[i], om.lo + int(j) + 1, tol);
    return out;
}

}  // namespace

CVec alpha_periods(const PeriodData& pd, const OmegaDifferential& om) { return cycle_periods(pd, om, pd.cycles.alpha); }
CVec beta_periods(const PeriodData& pd, const OmegaDifferential& om) { return cycle_periods(pd, om, pd.cycles.beta); }

InjectivityReport injectivity_check(const PeriodData& pd) {
    const int g = pd.curve.genus();
    InjectivityReport r;
    r.columns.resize(g, g);
    for (int k = 0; k < g; ++k) {
        poly::Poly P(k + 1, 0.0);
        P[k] = 1.0;
        r.columns.col(k) = second_kind_V(pd, P, {});
    }
    Eigen::JacobiSVD<CMat> svd(r.columns);
    r.min_singular = svd.singularValues().minCoeff();
    return r;
}

}  // namespace strip
