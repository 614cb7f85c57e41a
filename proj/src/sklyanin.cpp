#include "strip/sklyanin.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/minima.hpp>

namespace strip {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::generic: return "generic";
        case Regime::a_eq_b: return "A=B";
        case Regime::a_eq_minus_b: return "A=-B";
        case Regime::neumann: return "neumann";
    }
    return "?";
}

KMatrix::KMatrix(double a, double b, double tol) : A(a), B(b) {
    if (std::abs(A) < tol && std::abs(B) < tol)
        regime = Regime::neumann;
    else if (std::abs(A - B) < tol)
        regime = Regime::a_eq_b;
    else if (std::abs(A + B) < tol)
        regime = Regime::a_eq_minus_b;
    else
        regime = Regime::generic;
}

Eigen::Matrix2cd KMatrix::at(cplx l) const {
    Eigen::Matrix2cd k;
    const cplx off = l - 1.0 / l;
    k << 4 * A - 4 * B * l, off, off, 4 * A - 4 * B / l;
    return k;
}

Eigen::Matrix2cd KMatrix::reduced(cplx l) const {
    Eigen::Matrix2cd k;
    switch (regime) {
        case Regime::a_eq_b: k << -4 * A * l, l + 1.0, l + 1.0, 4 * A; break;
        case Regime::a_eq_minus_b: k << 4 * A * l, l - 1.0, l - 1.0, 4 * A; break;
        case Regime::neumann: k << 0, 1, 1, 0; break;
        default: k = at(l);
    }
    return k;
}

LaurentMatrix KMatrix::laurent() const {
    LaurentMatrix L;
    Eigen::Matrix2cd m;
    m << 0, -1, -1, -4 * B;
    L.c[-1] = m;
    m << 4 * A, 0, 0, 4 * A;
    L.c[0] = m;
    m << -4 * B, 1, 1, 0;
    L.c[1] = m;
    return L;
}

cplx det_K(double A, double B, cplx l) {
    const cplx d = l - 1.0 / l;
    return 16 * A * A + 16 * B * B - 16 * A * B * (l + 1.0 / l) - d * d;
}

std::vector<double> det_K_roots(const KMatrix& K) {
    const double A = K.A, B = K.B;
    poly::Poly p;
    std::size_t expect = 0;
    switch (K.regime) {
        case Regime::generic:
            p = {-1.0, -16 * A * B, 16 * A * A + 16 * B * B + 2, -16 * A * B, -1.0};
            expect = 4;
            break;
        case Regime::a_eq_minus_b:  // Det K′ = 16A²λ - (λ-1)²
            p = {-1.0, 2 + 16 * A * A, -1.0};
            expect = 2;
            break;
        case Regime::a_eq_b:  // Det K′ = -16A²λ - (λ+1)²
            p = {-1.0, -2 - 16 * A * A, -1.0};
            expect = 2;
            break;
        case Regime::neumann: return {};
    }
    std::vector<double> out;
    for (cplx r : poly::roots(p))
        if (std::abs(r.imag()) < 1e-9 * std::max(1.0, std::abs(r))) out.push_back(r.real());
    if (out.size() != expect) throw Error("root isolation failure", std::to_string(out.size()) + " real roots");
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

int find_point(const std::vector<SurfacePoint>& pts, cplx l, cplx nu) {
    int best = -1;
    double bd = INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = std::abs(pts[i].lambda - l) + std::abs(pts[i].nu - nu);
        if (d < bd) {
            bd = d;
            best = int(i);
        }
    }
    if (bd > 1e-6 * (1 + std::abs(nu))) return -1;
    return best;
}

// (λ, ν) -> (1/λ, ν/λ^{g-1}) for real λ
SurfacePoint s23(const Curve& c, const SurfacePoint& p) { return c.involution(3, c.involution(2, p)); }

}  // namespace

SklyaninSet sklyanin_set(const Curve& c, double A, double B) {
    SklyaninSet S{KMatrix(A, B), {}, {}};
    for (double r : det_K_roots(S.K)) {
        S.points.push_back(c.point(r, Sheet::upper));
        S.points.push_back(c.point(r, Sheet::lower));
    }
    for (const auto& p : S.points) {
        const SurfacePoint q = s23(c, p);
        const int j = find_point(S.points, q.lambda, q.nu);
        if (j < 0) throw Error("root isolation failure", "S not closed under s2s3");
        S.partner.push_back(j);
    }
    return S;
}

namespace {

std::vector<Subset> transversals(const SklyaninSet& S) {
    // choose one element from each σ2σ3 orbit
    std::vector<std::pair<int, int>> orbits;
    for (int i = 0; i < int(S.points.size()); ++i)
        if (i < S.partner[i]) orbits.push_back({i, S.partner[i]});
    std::vector<Subset> out;
    const int n = int(orbits.size());
    for (int code = 0; code < (1 << n); ++code) {
        Subset s;
        for (int k = 0; k < n; ++k) s.push_back((code >> k) & 1 ? orbits[k].second : orbits[k].first);
        std::sort(s.begin(), s.end());
        out.push_back(s);
    }
    return out;
}

}  // namespace

int count_transversals(const SklyaninSet& S) { return int(transversals(S).size()); }

std::vector<Subset> enumerate_special_subsets(const Curve& c, const SklyaninSet& S) {
    std::vector<Subset> out;
    for (const Subset& s : transversals(S)) {
        bool ok = true;
        for (int i : s) {
            const SurfacePoint q = c.involution(1, s23(c, S.points[i]));
            const int j = find_point(S.points, q.lambda, q.nu);
            if (j < 0 || !std::binary_search(s.begin(), s.end(), j)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(s);
    }
    const std::size_t expect = S.K.regime == Regime::generic ? 4 : (S.K.regime == Regime::neumann ? 1 : 2);
    if (out.size() != expect) throw Error("enumeration anomaly", std::to_string(out.size()) + " subsets");
    return out;
}

Subset complement(const SklyaninSet& S, const Subset& s0) {
    Subset out;
    for (int i = 0; i < int(S.points.size()); ++i)
        if (!std::binary_search(s0.begin(), s0.end(), i)) out.push_back(i);
    return out;
}

cplx kernel_eigenline_value(double A, double B, cplx l) {
    const cplx d = l - 1.0 / l;
    if (std::abs(d) < 1e-12) throw Error("degenerate root", "lambda = +-1");
    return -(4 * A - 4 * B * l) / d;
}

cplx complementary_eigenline_value(double A, double B, cplx l) { return -kernel_eigenline_value(A, B, l); }

Subset special_points_of(const Potential& xi, const SklyaninSet& S, double tol) {
    Subset out;
    for (int i = 0; i < int(S.points.size()); ++i) {
        const auto& p = S.points[i];
        const cplx k = kernel_eigenline_value(S.K.A, S.K.B, p.lambda);
        // eigenvalue of ξ on (1, k)
        const cplx ev = xi.om(p.lambda) + xi.sg(p.lambda) * k;
        if (std::abs(ev - p.nu) < tol * (1 + std::abs(p.nu))) out.push_back(i);
    }
    return out;
}

double q_sklyanin_residual(const Potential& xi, int q, const KMatrix& K, int eps) {
    const LaurentMatrix L = to_laurent(xi), KL = K.laurent();
    LaurentMatrix Linv;  // ξ(1/λ) shifted by λ^q
    for (const auto& [k, m] : L.c) Linv.c[q - k] = m;
    const LaurentMatrix r = KL * L - (Linv * KL) * cplx(double(eps));
    return r.max_abs();
}

Potential potential_from_flat(int g, const CVec& v) {
    Potential xi = Potential::zero(g);
    for (int k = 0; k < g; ++k) xi.omega[k] = v(k);
    for (int k = 0; k <= g; ++k) xi.sigma[k] = v(g + k);
    for (int k = 0; k <= g; ++k) xi.tau[k] = v(2 * g + 1 + k);
    return xi;
}

namespace {

// anti-real potential from 3g+2 real parameters
Potential anti_real(int g, const RVec& p) {
    Potential xi = Potential::zero(g);
    for (int k = 0; k <= g; ++k) xi.sigma[k] = cplx(p(k), p(g + 1 + k));
    const int h = g / 2;
    for (int k = 0; k < h; ++k) {
        xi.omega[k] = cplx(p(2 * g + 2 + k), p(2 * g + 2 + h + k));
        xi.omega[g - 1 - k] = -std::conj(xi.omega[k]);
    }
    for (int k = 0; k <= g; ++k) xi.tau[k] = -std::conj(xi.sigma[g - k]);
    return xi;
}

RVec residual_vector(const Potential& xi, int q, const KMatrix& K) {
    const LaurentMatrix L = to_laurent(xi), KL = K.laurent();
    LaurentMatrix Linv;
    for (const auto& [k, m] : L.c) Linv.c[q - k] = m;
    const LaurentMatrix r = KL * L - Linv * KL;
    std::vector<double> out;
    for (int k = std::min(-2, q - xi.g - 1); k <= std::max(xi.g + 1, q + 2); ++k) {
        const Eigen::Matrix2cd m = r.coeff(k);
        for (int i = 0; i < 4; ++i) {
            out.push_back(m(i / 2, i % 2).real());
            out.push_back(m(i / 2, i % 2).imag());
        }
    }
    return Eigen::Map<RVec>(out.data(), Eigen::Index(out.size()));
}

}  // namespace

CMat sklyanin_potential_kernel(int g, int q, const KMatrix& K) {
    const int n = 3 * g + 2;
    RMat M;
    for (int j = 0; j < n; ++j) {
        RVec e = RVec::Zero(n);
        e(j) = 1;
        RVec col = residual_vector(anti_real(g, e), q, K);
        if (j == 0) M.resize(col.size(), n);
        M.col(j) = col;
    }
    Eigen::JacobiSVD<RMat> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double top = sv.size() ? sv(0) : 1.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-11 * top) ++rank;
    const RMat N = svd.matrixV().rightCols(n - rank);
    CMat out(3 * g + 2, N.cols());
    for (Eigen::Index j = 0; j < N.cols(); ++j) out.col(j) = anti_real(g, N.col(j)).flat();
    return out;
}

CVec abel_subset(const Jacobian& J, const SklyaninSet& S, const Subset& s) {
    Divisor d;
    for (int i : s) d.add(S.points[i]);
    return J.abel(d);
}

DurhamReport durham_membership(const Jacobian& J, const Potential& xi, const SklyaninSet& S, const Subset& s0,
                               bool complementary, double tol_lattice, double tol_eig) {
    DurhamReport r;
    const CVec aD = J.abel(divisor_of_potential(xi, J.curve()));
    const CVec target = abel_subset(J, S, s0);
    r.subspace_residual = J.distance(Psi(aD - J.riemann_offset()) - target);
    r.divisor_residual = J.distance(Psi(aD) - target);
    for (int i : s0) {
        const auto& p = S.points[i];
        const cplx want = complementary ? complementary_eigenline_value(S.K.A, S.K.B, p.lambda)
                                        : kernel_eigenline_value(S.K.A, S.K.B, p.lambda);
        const EigenlineValue phi = eigenline(xi, p);
        const double d = phi.pole ? INFINITY : std::abs(phi.value - want);
        r.eigenline_residuals.push_back(d);
        r.max_eigenline = std::max(r.max_eigenline, d);
    }
    r.verdict = r.subspace_residual < tol_lattice && r.max_eigenline < tol_eig;
    return r;
}

double rationality_residual(const Jacobian& J, const CVec& z0, const CVec& Uy, double L) {
    return J.distance(Psi(2.0 * z0 + L * Uy));
}

std::vector<RationalityCandidate> rationality_scan(const Jacobian& J, const CVec& z0, const CVec& Uy,
                                                   const CVec& abel_s0, double Lmin, double Lmax, double accept) {
    if (!(Lmin > 0) || !(Lmax > Lmin)) throw Error("invalid input", "need 0 < Lmin < Lmax");
    const int n = std::max(2000, int(1e4 * std::log10(Lmax / Lmin)));
    const double step = (Lmax - Lmin) / n;
    std::vector<double> r(n + 1);
    for (int k = 0; k <= n; ++k) r[k] = rationality_residual(J, z0, Uy, Lmin + k * step);

    std::vector<RationalityCandidate> out;
    for (int k = 1; k < n; ++k) {
        if (!(r[k] <= r[k - 1] && r[k] <= r[k + 1]) || r[k] > 0.05) continue;
        const double L0 = Lmin + k * step;
        auto f = [&](double L) { return rationality_residual(J, z0, Uy, L); };
        auto [L, v] = boost::math::tools::brent_find_minima(f, L0 - step, L0 + step, 52);
        // the residual is |affine(L) - lattice vector| near a zero: finish with least squares
        const CVec a = Psi(2.0 * z0), u = Psi(Uy);
        const Reduction red = J.reduce(a + L * u);
        const CVec lat = a + L * u - red.reduced;
        RMat M(2 * u.size(), 1);
        RVec rhs(2 * u.size());
        M << u.real(), u.imag();
        rhs << (lat - a).real(), (lat - a).imag();
        const double Lls = M.colPivHouseholderQr().solve(rhs)(0);
        if (std::abs(Lls - L) < step && f(Lls) < v) {
            L = Lls;
            v = f(Lls);
        }
        if (v > accept) continue;
        RationalityCandidate c;
        c.L = L;
        c.residual = v;
        c.z1 = z0 + L * Uy;
        c.z1_residual = J.distance(Psi(c.z1) + abel_s0);
        out.push_back(c);
    }
    return out;
}

}  // namespace strip
