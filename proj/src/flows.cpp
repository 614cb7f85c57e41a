#include "strip/flows.hpp"

#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace strip {

LaurentMatrix xi_hat(const Potential& xi, const poly::Poly& P, const poly::Poly& Q) {
    const LaurentMatrix L = to_laurent(xi);
    // P(1/λ) has powers 0, -1, ..., so reverse the coefficient list
    poly::Poly pr(P.rbegin(), P.rend());
    LaurentMatrix a = scalar_mul(pr, -int(P.size()) + 1, L);
    LaurentMatrix b = scalar_mul(poly::conj(Q), 1 - xi.g, L);
    return proj_minus(a) + proj_plus(b);
}

namespace {

using State = std::vector<double>;

State pack(const LaurentMatrix& L, int g) {
    State s;
    s.reserve(8 * (g + 2));
    for (int k = -1; k <= g; ++k) {
        const Eigen::Matrix2cd m = L.coeff(k);
        for (int i = 0; i < 4; ++i) {
            s.push_back(m(i / 2, i % 2).real());
            s.push_back(m(i / 2, i % 2).imag());
        }
    }
    return s;
}

LaurentMatrix unpack(const State& s, int g) {
    LaurentMatrix L;
    for (int k = -1; k <= g; ++k) {
        Eigen::Matrix2cd m;
        const std::size_t o = 8 * std::size_t(k + 1);
        for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = cplx(s[o + 2 * i], s[o + 2 * i + 1]);
        L.c[k] = m;
    }
    return L;
}

double det_distance(const poly::Poly& a, const poly::Poly& b) {
    double d = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        cplx x = i < a.size() ? a[i] : 0.0, y = i < b.size() ? b[i] : 0.0;
        d = std::max(d, std::abs(x - y));
    }
    return d;
}

}  // namespace

std::vector<FlowState> integrate_flow(const Potential& xi0, const poly::Poly& P, const poly::Poly& Q, double t,
                                      const FlowOptions& opt) {
    namespace ode = boost::numeric::odeint;
    const int g = xi0.g;
    const poly::Poly det0 = lambda_det(xi0);
    std::vector<FlowState> out{{0.0, xi0, 0.0}};
    if (t == 0) return out;

    auto rhs = [&](const State& s, State& ds, double) {
        const LaurentMatrix L = unpack(s, g);
        const Potential xi = from_laurent(L, g);
        ds = pack(commutator(xi_hat(xi, P, Q), L), g);
    };
    auto record = [&](const State& s, double tt) {
        double defect = 0;
        Potential xi = from_laurent(unpack(s, g), g, &defect);
        const double drift = std::max(det_distance(lambda_det(xi), det0), defect);
        if (drift > opt.drift_tol)
            throw Error("flow drift", "drift " + std::to_string(drift) + " at t = " + std::to_string(tt) +
                                          "; retry with smaller tolerances");
        return FlowState{tt, xi, drift};
    };

    State s = pack(to_laurent(xi0), g);
    auto stepper = ode::make_dense_output(opt.abs_tol, opt.rel_tol, ode::runge_kutta_dopri5<State>());
    const int n = std::max(1, opt.samples);
    double t0 = 0;
    for (int k = 1; k <= n; ++k) {
        const double t1 = t * k / n;
        ode::integrate_adaptive(stepper, rhs, s, t0, t1, (t1 - t0) / 20);
        out.push_back(record(s, t1));
        t0 = t1;
    }
    return out;
}

Potential flow_to(const Potential& xi0, const poly::Poly& P, const poly::Poly& Q, double t, const FlowOptions& opt) {
    return integrate_flow(xi0, P, Q, t, opt).back().xi;
}

cplx u_from_potential(const Potential& xi, std::optional<cplx> near) {
    const cplx e = 4.0 * I * xi.sigma_m1();
    if (std::abs(e) == 0) throw Error("degenerate potential", "sigma_{-1} = 0");
    cplx u = std::log(e);
    if (near) {
        const double k = std::round((near->imag() - u.imag()) / (2 * pi));
        u += cplx(0, 2 * pi * k);
    }
    return u;
}

LaurentMatrix xi_hat_x(cplx u, cplx u_y) {
    const cplx a = std::exp(u) / (4.0 * I), c = std::exp(-u) / (4.0 * I);
    LaurentMatrix L;
    Eigen::Matrix2cd m;
    m << 0, a, 0, 0;
    L.c[-1] = m;
    m << 0.5 * I * u_y, c, c, -0.5 * I * u_y;
    L.c[0] = m;
    m << 0, 0, a, 0;
    L.c[1] = m;
    return L;
}

LaurentMatrix xi_hat_y(cplx u, cplx u_x) {
    const cplx b = std::exp(u) / 4.0, d = std::exp(-u) / 4.0;
    LaurentMatrix L;
    Eigen::Matrix2cd m;
    m << 0, b, 0, 0;
    L.c[-1] = m;
    m << -0.5 * I * u_x, -d, d, 0.5 * I * u_x;
    L.c[0] = m;
    m << 0, 0, -b, 0;
    L.c[1] = m;
    return L;
}

double zero_curvature_residual(const ScalarField& u, const std::vector<std::pair<double, double>>& pts, double h) {
    double worst = 0;
    for (auto [x, y] : pts) {
        const cplx u0 = u(x, y);
        const cplx uxp = u(x + h, y), uxm = u(x - h, y), uyp = u(x, y + h), uym = u(x, y - h);
        const cplx ux = (uxp - uxm) / (2 * h), uy = (uyp - uym) / (2 * h);
        const cplx uxx = (uxp - 2.0 * u0 + uxm) / (h * h), uyy = (uyp - 2.0 * u0 + uym) / (h * h);
        // derivatives of the matrix entries by the chain rule
        const cplx a = std::exp(u0) / (4.0 * I), c = std::exp(-u0) / (4.0 * I);
        const cplx b = std::exp(u0) / 4.0, d = std::exp(-u0) / 4.0;
        LaurentMatrix dyx, dxy;
        Eigen::Matrix2cd m;
        m << 0, a * uy, 0, 0;
        dyx.c[-1] = m;
        m << 0.5 * I * uyy, -c * uy, -c * uy, -0.5 * I * uyy;
        dyx.c[0] = m;
        m << 0, 0, a * uy, 0;
        dyx.c[1] = m;
        m << 0, b * ux, 0, 0;
        dxy.c[-1] = m;
        m << -0.5 * I * uxx, d * ux, -d * ux, 0.5 * I * uxx;
        dxy.c[0] = m;
        m << 0, 0, -b * ux, 0;
        dxy.c[1] = m;
        const LaurentMatrix r = dyx - dxy + commutator(xi_hat_x(u0, uy), xi_hat_y(u0, ux));
        worst = std::max(worst, r.max_abs());
    }
    return worst;
}

}  // namespace strip
