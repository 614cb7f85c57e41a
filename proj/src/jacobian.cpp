#include "strip/jacobian.hpp"

#include <cmath>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace strip {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 21>;

// ∫ ω_m along λ = -s², s in [0, sqrt(r)] on the given sheet.
CVec radial_raw(const Curve& c, double r, Sheet sh, double tol) {
    const int g = c.genus();
    const double sg = sign_of(sh), smax = std::sqrt(r);
    CVec out(g);
    for (int m = 1; m <= g; ++m) {
        auto f = [&](double s) {
            const double lr = 2 * std::log(s);
            const cplx lam = -s * s;
            const cplx nu = sg * c.nu_polar(lr, pi);
            return std::pow(lam, m - 2) * (-2.0 * s) / nu;
        };
        out(m - 1) = GK::integrate(f, 0.0, smax, 18, tol);
    }
    return out;
}

// ∫ ω_m from λ = -1 to ∞ along the negative axis (λ = -1/s², s from 1 down to 0).
CVec radial_raw_tail(const Curve& c, Sheet sh, double tol) {
    const int g = c.genus();
    const double sg = sign_of(sh);
    CVec out(g);
    for (int m = 1; m <= g; ++m) {
        auto f = [&](double s) {
            const double lr = -2 * std::log(s);
            const cplx lam = -1.0 / (s * s);
            const cplx nu = sg * c.nu_polar(lr, pi);
            // dλ = 2 s^-3 ds, integrated from 1 to 0
            return -std::pow(lam, m - 2) * (2.0 / (s * s * s)) / nu;
        };
        out(m - 1) = GK::integrate(f, 0.0, 1.0, 18, tol);
    }
    return out;
}

CVec arc_raw(const Curve& c, double logr, double th0, double th1, Sheet sh, double tol) {
    const int g = c.genus();
    CVec out(g);
    if (th0 == th1) return CVec::Zero(g);
    Cycle seg;
    seg.segments = {{logr, th0, logr, th1, sh}};
    for (int m = 1; m <= g; ++m) out(m - 1) = integrate_raw(c, seg, m, tol);
    return out;
}

}  // namespace

Theta::Theta(const CMat& Pi, double tol, double radius_scale) : Pi_(Pi), g_(int(Pi.rows())) {
    Y_ = 0.5 * (Pi.imag() + Pi.imag().transpose());
    Eigen::LLT<RMat> llt(Y_);
    if (llt.info() != Eigen::Success) throw Error("theta", "Im Pi not positive definite");
    U_ = llt.matrixU();
    Yinv_ = Y_.inverse();
    R2_ = (-std::log(tol) + 3.0) * radius_scale * radius_scale;
    // rough lattice-point count of the ellipsoid
    const double vol = std::pow(pi, 0.5 * g_) / std::tgamma(0.5 * g_ + 1) * std::pow(R2_ / pi + 2.0, 0.5 * g_) /
                       std::sqrt(Y_.determinant());
    if (vol > 5e7) throw Error("truncation overflow");
}

cplx Theta::operator()(const CVec& z) const {
    const RVec y = z.imag();
    const RVec c = -Yinv_ * y;
    const double lim = R2_ / pi;
    Eigen::VectorXi n(g_);
    RVec v(g_);
    cplx sum = 0.0;
    // depth-first over coordinates g-1 .. 0 of the ellipsoid (n-c)ᵀ Y (n-c) <= lim
    std::function<void(int, double)> rec = [&](int i, double rem) {
        double s = 0;
        for (int j = i + 1; j < g_; ++j) s += U_(i, j) * v(j);
        s /= U_(i, i);
        const double w = std::sqrt(std::max(rem, 0.0)) / U_(i, i);
        const int lo = int(std::ceil(c(i) - s - w)), hi = int(std::floor(c(i) - s + w));
        for (int k = lo; k <= hi; ++k) {
            n(i) = k;
            v(i) = k - c(i);
            const double t = U_(i, i) * (v(i) + s);
            const double r2 = rem - t * t;
            if (r2 < 0) continue;
            if (i == 0) {
                const Eigen::VectorXd nd = n.cast<double>();
                const cplx q = (nd.transpose() * Pi_ * nd)(0, 0);
                const cplx lin = (nd.cast<cplx>().transpose() * z)(0, 0);
                sum += std::exp(I * pi * q + 2.0 * pi * I * lin);
            } else {
                rec(i - 1, r2);
            }
        }
    };
    rec(g_ - 1, lim);
    return sum;
}

Jacobian::Jacobian(PeriodData pd) : pd_(std::move(pd)), theta_(pd_.Pi, pd_.curve.tolerances().theta) {
    const Curve& c = pd_.curve;
    const double tol = c.tolerances().quad;
    CVec raw = radial_raw(c, 1.0, Sheet::upper, tol) + radial_raw_tail(c, Sheet::upper, tol);
    a_inf_ = pd_.Cinv.transpose() * raw;
    const int g = genus();
    CVec e(g);
    for (int i = 0; i < g; ++i) e(i) = (i % 2 == 1) ? 1.0 : 0.0;
    k_ = 0.5 * (e + pd_.Pi * CVec::Ones(g));
}

CVec Jacobian::abel(const SurfacePoint& p) const {
    const int g = genus();
    if (p.kind == SurfacePoint::Kind::zero) return CVec::Zero(g);
    if (p.kind == SurfacePoint::Kind::infinity) return a_inf_;
    const Curve& c = pd_.curve;
    const double tol = c.tolerances().quad;
    const double r = std::abs(p.lambda);
    if (r == 0) return CVec::Zero(g);
    const double th = arg_2pi(p.lambda);
    const Sheet sh = c.sheet_of(p.lambda, p.nu);
    CVec raw = radial_raw(c, r, sh, tol) + arc_raw(c, std::log(r), pi, th, sh, tol);
    return pd_.Cinv.transpose() * raw;
}

CVec Jacobian::abel(const Divisor& d) const {
    CVec acc = CVec::Zero(genus());
    for (std::size_t k = 0; k < d.points.size(); ++k) acc += double(d.mult[k]) * abel(d.points[k]);
    return acc;
}

Reduction Jacobian::reduce(const CVec& z) const {
    const int g = genus();
    const CMat& P = pd_.Pi;
    const RMat Y = P.imag();
    Reduction best;
    best.distance = INFINITY;
    const RVec mr = Y.fullPivLu().solve(z.imag());
    Eigen::VectorXi m0 = mr.array().round().cast<int>();
    // the rounded point plus its immediate neighbours in the Π-direction
    int combos = 1;
    for (int i = 0; i < g; ++i) combos *= 3;
    for (int code = 0; code < combos; ++code) {
        Eigen::VectorXi m = m0;
        int cc = code;
        for (int i = 0; i < g; ++i) {
            m(i) += cc % 3 - 1;
            cc /= 3;
        }
        CVec r = z - P * m.cast<cplx>();
        Eigen::VectorXi n = r.real().array().round().cast<int>();
        r -= n.cast<cplx>();
        double d = r.cwiseAbs().maxCoeff();
        if (d < best.distance) best = {r, n, m, d, false};
    }
    Eigen::JacobiSVD<RMat> svd(Y);
    const auto& sv = svd.singularValues();
    best.ill_conditioned = sv(0) / sv(g - 1) > 1e8;
    return best;
}

CVec Phi(const CVec& z) {
    const int g = int(z.size());
    CVec out(g);
    for (int i = 0; i < g; ++i) out(i) = z(i) - std::conj(z(g - 1 - i));
    return out;
}

CVec Psi(const CVec& z) {
    const int g = int(z.size());
    CVec out(g);
    for (int i = 0; i < g; ++i) out(i) = z(i) - z(g - 1 - i);
    return out;
}

RealLocusResult is_real_locus(const Jacobian& J, const CVec& z, double tol) {
    RealLocusResult r;
    r.residual = J.distance(Phi(z) - J.abel_infinity());
    r.real = r.residual < tol;
    return r;
}

InvolutionResiduals involution_identity_check(const Jacobian& J, const SurfacePoint& p) {
    const Curve& c = J.curve();
    const int g = J.genus();
    const CVec a = J.abel(p);
    InvolutionResiduals r;
    r.s1 = J.distance(J.abel(c.involution(1, p)) + a);
    r.s2 = J.distance(J.abel(c.involution(2, p)) - a.conjugate());
    CVec a3 = J.abel(c.involution(3, p));
    CVec rhs(g);
    for (int i = 0; i < g; ++i) rhs(i) = J.abel_infinity()(i) + std::conj(a(g - 1 - i));
    r.s3 = J.distance(a3 - rhs);
    return r;
}

double symmetry_preservation(const Jacobian& J) {
    const int g = J.genus();
    double worst = 0;
    for (int j = 0; j < g; ++j) {
        CVec e = CVec::Zero(g);
        e(j) = 1.0;
        CVec f = J.Pi().col(j);
        for (const CVec& v : {e, f}) {
            worst = std::max(worst, J.distance(Phi(v)));
            worst = std::max(worst, J.distance(Psi(v)));
        }
    }
    return worst;
}

}  // namespace strip
