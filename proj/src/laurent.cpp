#include "strip/laurent.hpp"

namespace strip {

Eigen::Matrix2cd LaurentMatrix::coeff(int k) const {
    auto it = c.find(k);
    return it == c.end() ? Eigen::Matrix2cd::Zero() : it->second;
}

Eigen::Matrix2cd LaurentMatrix::operator()(cplx lambda) const {
    Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
    for (const auto& [k, m] : c) acc += std::pow(lambda, k) * m;
    return acc;
}

double LaurentMatrix::max_abs() const {
    double r = 0;
    for (const auto& [k, m] : c) r = std::max(r, m.cwiseAbs().maxCoeff());
    return r;
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& o) {
    for (const auto& [k, m] : o.c) {
        auto it = c.find(k);
        if (it == c.end())
            c.emplace(k, m);
        else
            it->second += m;
    }
    return *this;
}

LaurentMatrix LaurentMatrix::operator+(const LaurentMatrix& o) const {
    LaurentMatrix r = *this;
    r += o;
    return r;
}

LaurentMatrix LaurentMatrix::operator-(const LaurentMatrix& o) const { return *this + o * cplx(-1.0); }

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix& o) const {
    LaurentMatrix r;
    for (const auto& [a, x] : c)
        for (const auto& [b, y] : o.c) {
            Eigen::Matrix2cd p = x * y;
            auto it = r.c.find(a + b);
            if (it == r.c.end())
                r.c.emplace(a + b, p);
            else
                it->second += p;
        }
    return r;
}

LaurentMatrix LaurentMatrix::operator*(cplx s) const {
    LaurentMatrix r = *this;
    for (auto& [k, m] : r.c) m *= s;
    return r;
}

LaurentMatrix commutator(const LaurentMatrix& a, const LaurentMatrix& b) { return a * b - b * a; }

LaurentMatrix scalar_mul(const poly::Poly& p, int shift, const LaurentMatrix& m) {
    LaurentMatrix r;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] == 0.0) continue;
        for (const auto& [k, x] : m.c) {
            const int e = shift + int(j) + k;
            auto it = r.c.find(e);
            if (it == r.c.end())
                r.c.emplace(e, p[j] * x);
            else
                it->second += p[j] * x;
        }
    }
    return r;
}

namespace {

LaurentMatrix project(const LaurentMatrix& m, bool minus) {
    LaurentMatrix r;
    for (const auto& [k, x] : m.c) {
        if ((k < 0 && minus) || (k > 0 && !minus)) {
            r.c[k] = x;
        } else if (k == 0) {
            Eigen::Matrix2cd n = Eigen::Matrix2cd::Zero();
            n(0, 0) = x(0, 0) / 2.0;
            n(1, 1) = x(1, 1) / 2.0;
            if (minus)
                n(1, 0) = x(1, 0);
            else
                n(0, 1) = x(0, 1);
            r.c[0] = n;
        }
    }
    return r;
}

}  // namespace

LaurentMatrix proj_minus(const LaurentMatrix& m) { return project(m, true); }
LaurentMatrix proj_plus(const LaurentMatrix& m) { return project(m, false); }

LaurentMatrix to_laurent(const Potential& xi) {
    LaurentMatrix r;
    const int g = xi.g;
    for (int k = -1; k <= g; ++k) {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        if (k >= 0 && k < g) {
            m(0, 0) = xi.omega[k];
            m(1, 1) = -xi.omega[k];
        }
        if (k + 1 <= g) m(0, 1) = xi.sigma[k + 1];
        if (k >= 0) m(1, 0) = xi.tau[k];
        r.c[k] = m;
    }
    return r;
}

Potential from_laurent(const LaurentMatrix& m, int g, double* shape_defect) {
    Potential xi = Potential::zero(g);
    double defect = 0;
    for (const auto& [k, x] : m.c) {
        if (k < -1 || k > g) {
            defect = std::max(defect, x.cwiseAbs().maxCoeff());
            continue;
        }
        if (k >= 0 && k < g)
            xi.omega[k] = 0.5 * (x(0, 0) - x(1, 1));
        defect = std::max(defect, std::abs(x(0, 0) + x(1, 1)));
        if (k == -1 || k == g) defect = std::max(defect, std::abs(x(0, 0)));
        if (k + 1 <= g)
            xi.sigma[k + 1] = x(0, 1);
        else
            defect = std::max(defect, std::abs(x(0, 1)));
        if (k >= 0)
            xi.tau[k] = x(1, 0);
        else
            defect = std::max(defect, std::abs(x(1, 0)));
    }
    if (shape_defect) *shape_defect = defect;
    return xi;
}

}  // namespace strip
