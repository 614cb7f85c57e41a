#include "strip/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace strip::poly {

cplx eval(const Poly& p, cplx x) {
    cplx acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

cplx deriv_eval(const Poly& p, cplx x) {
    cplx acc = 0.0;
    for (std::size_t k = p.size(); k-- > 1;) acc = acc * x + double(k) * p[k];
    return acc;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Poly add(const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}

Poly scale(const Poly& a, cplx s) {
    Poly c = a;
    for (auto& v : c) v *= s;
    return c;
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {0.0};
    Poly d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = double(k) * p[k];
    return d;
}

Poly from_roots(const std::vector<cplx>& rts, cplx lead) {
    Poly p{lead};
    for (auto r : rts) p = mul(p, Poly{-r, 1.0});
    return p;
}

Poly conj(const Poly& p) {
    Poly c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = std::conj(p[i]);
    return c;
}

void trim(Poly& p, double tol) {
    while (p.size() > 1 && std::abs(p.back()) <= tol) p.pop_back();
}

int degree(const Poly& p) {
    for (std::size_t k = p.size(); k-- > 0;)
        if (p[k] != 0.0) return int(k);
    return -1;
}

Poly divide(const Poly& a, const Poly& b, Poly& rem) {
    const int db = degree(b);
    if (db < 0) throw Error("division by zero polynomial");
    rem = a;
    const int da = degree(a);
    if (da < db) return {0.0};
    Poly q(da - db + 1, 0.0);
    for (int k = da - db; k >= 0; --k) {
        cplx c = rem[k + db] / b[db];
        q[k] = c;
        for (int j = 0; j <= db; ++j) rem[k + j] -= c * b[j];
    }
    rem.resize(std::max(db, 1));
    return q;
}

std::vector<cplx> roots(const Poly& p_in) {
    Poly p = p_in;
    trim(p);
    const int n = degree(p);
    if (n < 1) throw Error("degenerate degree");
    CMat comp = CMat::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[i] / p[n];
    Eigen::ComplexEigenSolver<CMat> es(comp, false);
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);

    // one simultaneous (Weierstrass) sweep: refines all roots jointly, keeps clusters apart
    std::vector<cplx> w(n);
    for (int i = 0; i < n; ++i) {
        cplx den = p[n];
        for (int j = 0; j < n; ++j)
            if (j != i) den *= (r[i] - r[j]);
        w[i] = (den != 0.0) ? eval(p, r[i]) / den : 0.0;
    }
    for (int i = 0; i < n; ++i) r[i] -= w[i];

    for (auto& x : r) {
        for (int it = 0; it < 3; ++it) {
            cplx d = deriv_eval(p, x);
            if (std::abs(d) == 0.0) break;
            cplx step = eval(p, x) / d;
            if (!std::isfinite(std::abs(step))) break;
            x -= step;
            if (std::abs(step) < 1e-17 * (1.0 + std::abs(x))) break;
        }
    }
    return r;
}

Poly interpolate(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    const std::size_t n = x.size();
    Poly out(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        Poly basis{1.0};
        cplx den = 1.0;
        for (std::size_t m = 0; m < n; ++m) {
            if (m == j) continue;
            basis = mul(basis, Poly{-x[m], 1.0});
            den *= x[j] - x[m];
        }
        if (den == 0.0) throw Error("Hermite case unsupported", "repeated interpolation node");
        for (std::size_t k = 0; k < n; ++k) out[k] += y[j] / den * basis[k];
    }
    return out;
}

}  // namespace strip::poly
