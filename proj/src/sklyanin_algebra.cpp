#include "strip/sklyanin_algebra.hpp"

#include <algorithm>
#include <random>

namespace strip {

void BandDiagonal::set(int m, cplx v) {
    if (c.empty()) {
        lo = m;
        c.assign(1, v);
        return;
    }
    if (m < lo) {
        c.insert(c.begin(), std::size_t(lo - m), cplx{});
        lo = m;
    } else if (m > hi()) {
        c.resize(std::size_t(m - lo + 1), cplx{});
    }
    c[m - lo] = v;
}

namespace {

int band_lo(const BandDiagonal& d, int fallback) { return d.c.empty() ? fallback : d.lo; }
int band_hi(const BandDiagonal& d, int fallback) { return d.c.empty() ? fallback : d.hi(); }

}  // namespace

int BiLaurentPotential::lo() const {
    const int big = 1 << 20;
    int r = std::min({band_lo(omega, big), band_lo(tau, big), band_lo(sigma, big)});
    return r == big ? 0 : r;
}

int BiLaurentPotential::hi() const {
    const int small = -(1 << 20);
    int r = std::max({band_hi(omega, small), band_hi(tau, small), band_hi(sigma, small)});
    return r == small ? 0 : r;
}

Eigen::Matrix2cd BiLaurentPotential::at(cplx lambda, cplx gamma) const {
    Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
    for (int m = omega.lo; m <= omega.hi(); ++m) {
        const cplx v = omega.at(m) * std::pow(lambda, m) * std::pow(gamma, -m);
        r(0, 0) += v;
        r(1, 1) -= v;
    }
    for (int m = tau.lo; m <= tau.hi(); ++m) r(1, 0) += tau.at(m) * std::pow(lambda, m) * std::pow(gamma, 1 - m);
    for (int m = sigma.lo; m <= sigma.hi(); ++m)
        r(0, 1) += sigma.at(m) * std::pow(lambda, m) * std::pow(gamma, -1 - m);
    return r;
}

CVec BiLaurentPotential::flat() const {
    CVec v(omega.c.size() + tau.c.size() + sigma.c.size());
    Eigen::Index k = 0;
    for (const auto* d : {&omega, &tau, &sigma})
        for (cplx x : d->c) v(k++) = x;
    return v;
}

double BiLaurentPotential::max_abs() const {
    double r = 0;
    for (const auto* d : {&omega, &tau, &sigma})
        for (cplx x : d->c) r = std::max(r, std::abs(x));
    return r;
}

BiLaurentPotential gauge_to_bilaurent(const Potential& xi) {
    BiLaurentPotential b;
    for (int k = 0; k < xi.g; ++k) b.omega.set(k, xi.omega[k]);
    for (int k = 0; k <= xi.g; ++k) b.tau.set(k, xi.tau[k]);
    for (int k = -1; k < xi.g; ++k) b.sigma.set(k, xi.sigma[k + 1]);
    return b;
}

BiLaurentPotential gauge_to_bilaurent(const LaurentMatrix& m) {
    BiLaurentPotential b;
    for (const auto& [k, M] : m.c) {
        b.omega.set(k, M(0, 0));
        b.sigma.set(k, M(0, 1));
        b.tau.set(k, M(1, 0));
    }
    return b;
}

Eigen::Matrix2cd gauged_value(const Potential& xi, cplx lambda, cplx gamma) {
    const cplx h = std::sqrt(gamma);
    Eigen::Matrix2cd left = Eigen::Matrix2cd::Zero(), right = Eigen::Matrix2cd::Zero();
    left(0, 0) = 1.0 / h;
    left(1, 1) = h;
    right(0, 0) = h;
    right(1, 1) = 1.0 / h;
    return left * xi.at(lambda / gamma) * right;
}

Potential bilaurent_to_potential(const BiLaurentPotential& b, int g, double* shape_defect) {
    Potential xi = Potential::zero(g);
    double defect = 0;
    for (int m = b.omega.lo; m <= b.omega.hi(); ++m) {
        if (m >= 0 && m < g) xi.omega[m] = b.omega.at(m);
        else defect = std::max(defect, std::abs(b.omega.at(m)));
    }
    for (int m = b.tau.lo; m <= b.tau.hi(); ++m) {
        if (m >= 0 && m <= g) xi.tau[m] = b.tau.at(m);
        else defect = std::max(defect, std::abs(b.tau.at(m)));
    }
    for (int m = b.sigma.lo; m <= b.sigma.hi(); ++m) {
        if (m >= -1 && m < g) xi.sigma[m + 1] = b.sigma.at(m);
        else defect = std::max(defect, std::abs(b.sigma.at(m)));
    }
    if (shape_defect) *shape_defect = defect;
    return xi;
}

Eigen::Matrix2cd K_bilaurent(double A, double B, cplx lambda, cplx gamma) {
    const cplx off = lambda / gamma - gamma / lambda;
    Eigen::Matrix2cd k;
    k << 4.0 * A * gamma - 4.0 * B * lambda, off, off, 4.0 * A / gamma - 4.0 * B / lambda;
    return k;
}

double bilaurent_sklyanin_residual(const BiLaurentPotential& b, int q, double A, double B, cplx lambda,
                                   cplx gamma) {
    const Eigen::Matrix2cd K = K_bilaurent(A, B, lambda, gamma);
    const Eigen::Matrix2cd lhs = K * b.at(lambda, gamma);
    const Eigen::Matrix2cd rhs = std::pow(lambda, q) * std::pow(gamma, -q) * b.at(1.0 / lambda, 1.0 / gamma) * K;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

const char* family_name(Family f) {
    switch (f) {
        case Family::A1: return "A1";
        case Family::A2: return "A2";
        case Family::A3: return "A3";
        case Family::B1: return "B1";
        case Family::B2: return "B2";
    }
    return "?";
}

namespace {

// the diagonal m+n on which a family can be nonzero
int family_diagonal(Family f) {
    switch (f) {
        case Family::A1: return 1;
        default: return 0;
    }
}

}  // namespace

cplx constraint(Family f, const BiLaurentPotential& x, int q, double A, double B, int m, int n) {
    const double a = 4 * A, b = 4 * B;
    auto w = [&](int i, int j) { return x.w(i, j); };
    auto t = [&](int i, int j) { return x.t(i, j); };
    auto s = [&](int i, int j) { return x.s(i, j); };
    switch (f) {
        case Family::A1:
            return t(m - 1, n + 1) - b * w(m - 1, n) + a * w(m, n - 1) - t(m + 1, n - 1) +
                   s(q - m - 1, -q - n + 1) - a * w(q - m, -q - n + 1) + b * w(q - m + 1, -q - n) -
                   s(q - m + 1, -q - n - 1);
        case Family::A2:
            return -w(m - 1, n + 1) - b * s(m - 1, n) + a * s(m, n - 1) + w(m + 1, n - 1) +
                   w(q - m - 1, -q - n + 1) + b * s(q - m - 1, -q - n) - a * s(q - m, -q - n - 1) -
                   w(q - m + 1, -q - n - 1);
        case Family::A3:
            return w(m - 1, n + 1) + a * t(m, n + 1) - b * t(m + 1, n) - w(m + 1, n - 1) -
                   w(q - m - 1, -q - n + 1) - a * t(q - m, -q - n + 1) + b * t(q - m + 1, -q - n) +
                   w(q - m + 1, -q - n - 1);
        case Family::B1:
            return -s(m - 1, n) + a * w(m, n) - t(m + 1, n) + t(q - m + 1, -q - n) - a * w(q - m, -q - n) +
                   s(q - m - 1, -q - n);
        case Family::B2:
            return t(m, n + 1) - b * w(m, n) + s(m, n - 1) - t(q - m, -q - n + 1) + b * w(q - m, -q - n) -
                   s(q - m, -q - n - 1);
    }
    return 0.0;
}

double ConstraintEvaluation::max_abs() const {
    double r = 0;
    for (const auto& kv : values) r = std::max(r, std::abs(kv.second));
    return r;
}

double ConstraintEvaluation::max_off_diagonal() const {
    double r = 0;
    const int d = family_diagonal(family);
    for (const auto& [mn, v] : values)
        if (mn.first + mn.second != d) r = std::max(r, std::abs(v));
    return r;
}

namespace {

void natural_range(const BiLaurentPotential& x, int q, int& mlo, int& mhi) {
    const int lo = x.lo(), hi = x.hi();
    mlo = std::min(lo - 1, q - hi - 1);
    mhi = std::max(hi + 1, q - lo + 1);
}

}  // namespace

ConstraintEvaluation evaluate_constraints(const BiLaurentPotential& xi, Family f, int q, double A, double B,
                                          int mlo, int mhi) {
    int need_lo = 0, need_hi = 0;
    natural_range(xi, q, need_lo, need_hi);
    if (mlo > need_lo || mhi < need_hi) throw Error("window too small");
    ConstraintEvaluation ev;
    ev.family = f;
    ev.q = q;
    for (int m = mlo; m <= mhi; ++m)
        for (int d = -2; d <= 2; ++d) ev.values[{m, d - m}] = constraint(f, xi, q, A, B, m, d - m);
    return ev;
}

ConstraintEvaluation evaluate_constraints(const BiLaurentPotential& xi, Family f, int q, double A, double B) {
    int lo = 0, hi = 0;
    natural_range(xi, q, lo, hi);
    return evaluate_constraints(xi, f, q, A, B, lo, hi);
}

BiLaurentPotential theta_projection(const BiLaurentPotential& x, int k, int q) {
    BiLaurentPotential r;
    const int lo = x.lo() - std::max(k, q - k) - 1, hi = x.hi() + std::max(k, q - k) + 1;
    for (int m = lo; m <= hi; ++m) {
        const int n = -m;
        // ω on the σ0 diagonal; the constant term averages the two halves
        if (m < 0) r.omega.set(m, x.w(m + k, n - k));
        else if (m > 0) r.omega.set(m, x.w(m + q - k, n - q + k));
        else r.omega.set(0, 0.5 * (x.w(k, -k) + x.w(q - k, -q + k)));
        // τ on m+n = 1
        if (m <= 0) r.tau.set(m, x.t(m + k, 1 - m - k));
        else r.tau.set(m, x.t(m + q - k, 1 - m - q + k));
        // σ on m+n = -1
        if (m < 0) r.sigma.set(m, x.s(m + k, -1 - m - k));
        else r.sigma.set(m, x.s(m + q - k, -1 - m - q + k));
    }
    return r;
}

KernelWindow KernelWindow::potential_shape(int g) { return {0, g - 1, 0, g, -1, g - 1}; }

KernelWindow KernelWindow::symmetric(int w) { return {-w, w, -w, w, -w, w}; }

namespace {

BiLaurentPotential from_unknowns(const KernelWindow& win, const CVec& x) {
    BiLaurentPotential b;
    Eigen::Index k = 0;
    for (int m = win.omega_lo; m <= win.omega_hi; ++m) b.omega.set(m, x(k++));
    for (int m = win.tau_lo; m <= win.tau_hi; ++m) b.tau.set(m, x(k++));
    for (int m = win.sigma_lo; m <= win.sigma_hi; ++m) b.sigma.set(m, x(k++));
    return b;
}

int unknown_count(const KernelWindow& w) {
    return (w.omega_hi - w.omega_lo + 1) + (w.tau_hi - w.tau_lo + 1) + (w.sigma_hi - w.sigma_lo + 1);
}

}  // namespace

KernelSample sample_kernel(const std::vector<Family>& families, int q, const KernelWindow& win, double A, double B,
                           std::uint64_t seed) {
    const int nu = unknown_count(win);
    if (nu <= 0) throw Error("no kernel sample", "empty window");
    // column j: all constraint values of the j-th unit potential
    std::vector<CVec> cols;
    int mlo = 0, mhi = 0;
    {
        BiLaurentPotential probe = from_unknowns(win, CVec::Ones(nu));
        natural_range(probe, q, mlo, mhi);
    }
    const int per = (mhi - mlo + 1) * 5;
    CMat M(per * int(families.size()), nu);
    for (int j = 0; j < nu; ++j) {
        CVec e = CVec::Zero(nu);
        e(j) = 1.0;
        const BiLaurentPotential b = from_unknowns(win, e);
        int row = 0;
        for (Family f : families)
            for (int m = mlo; m <= mhi; ++m)
                for (int d = -2; d <= 2; ++d) M(row++, j) = constraint(f, b, q, A, B, m, d - m);
    }
    Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-12 * std::max(1.0, smax)) ++rank;
    const int dim = nu - rank;
    if (dim == 0) throw Error("no kernel sample");
    const CMat N = svd.matrixV().rightCols(dim);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    CVec c(dim);
    for (int i = 0; i < dim; ++i) c(i) = cplx(nd(rng), nd(rng));
    CVec x = N * c;
    x /= x.cwiseAbs().maxCoeff();

    KernelSample out;
    out.xi = from_unknowns(win, x);
    out.null_dim = dim;
    for (Family f : families) out.residual = std::max(out.residual, evaluate_constraints(out.xi, f, q, A, B).max_abs());
    return out;
}

KernelSample sample_sklyanin_kernel(int q, const KernelWindow& win, double A, double B, std::uint64_t seed) {
    return sample_kernel({Family::A1, Family::A2, Family::A3}, q, win, A, B, seed);
}

namespace {

BiLaurentPotential random_bilaurent(int w, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    BiLaurentPotential b;
    for (int m = -w; m <= w; ++m) {
        b.omega.set(m, cplx(nd(rng), nd(rng)));
        b.tau.set(m, cplx(nd(rng), nd(rng)));
        b.sigma.set(m, cplx(nd(rng), nd(rng)));
    }
    return b;
}

double max_family(const BiLaurentPotential& b, std::initializer_list<Family> fs, int q, double A, double B) {
    double r = 0;
    for (Family f : fs) r = std::max(r, evaluate_constraints(b, f, q, A, B).max_abs());
    return r;
}

// One-sided ladder sums of A1 that telescope to B1.
cplx ladder_sum(const BiLaurentPotential& x, int q, double A, double B, int m, int n) {
    const int span = x.hi() - x.lo() + std::abs(q) + std::abs(m) + std::abs(n) + 8;
    cplx s = 0;
    for (int k = 0; k <= span; ++k) {
        s += constraint(Family::A1, x, q, A, B, m - 2 * k, n + 2 * k + 1);
        s += constraint(Family::A1, x, q, A, B, q - m + 2 * k + 2, -q - n - 2 * k - 1);
    }
    return s;
}

}  // namespace

std::vector<IdentityTally> algebra_selftest(int q, int window, int trials, std::uint64_t seed, double A, double B,
                                         double tol) {
    std::vector<IdentityTally> out;
    auto tally = [&](const std::string& name, auto&& check) {
        IdentityTally t{name};
        for (int i = 0; i < trials; ++i) {
            const double r = check(seed + 7919ull * std::uint64_t(i));
            ++t.trials;
            t.worst = std::max(t.worst, r);
            if (r < tol) ++t.passed;
        }
        out.push_back(t);
    };
    const KernelWindow win = KernelWindow::symmetric(window);
    auto scale = [](const BiLaurentPotential& b) { return std::max(1.0, b.max_abs()); };

    tally("a1_splits_into_b", [&](std::uint64_t s) {
        std::mt19937_64 rng(s);
        const BiLaurentPotential x = random_bilaurent(window, rng);
        double r = 0;
        for (int m = x.lo() - q - 3; m <= x.hi() + q + 3; ++m) {
            const int n = 1 - m;
            const cplx lhs = constraint(Family::A1, x, q, A, B, m, n);
            const cplx rhs = constraint(Family::B1, x, q, A, B, m, n - 1) + constraint(Family::B2, x, q, A, B, m - 1, n);
            r = std::max(r, std::abs(lhs - rhs));
        }
        return r / scale(x);
    });
    tally("a1_ladders_sum_to_b1", [&](std::uint64_t s) {
        std::mt19937_64 rng(s);
        const BiLaurentPotential x = random_bilaurent(window, rng);
        double r = 0;
        for (int m = x.lo() - q - 3; m <= x.hi() + q + 3; ++m)
            r = std::max(r, std::abs(ladder_sum(x, q, A, B, m, -m) - constraint(Family::B1, x, q, A, B, m, -m)));
        return r / scale(x);
    });
    tally("a1_kernel_has_b_zero", [&](std::uint64_t s) {
        const KernelSample k = sample_kernel({Family::A1}, q, win, A, B, s);
        return max_family(k.xi, {Family::B1, Family::B2}, q, A, B);
    });
    tally("b_kernel_has_a1_zero", [&](std::uint64_t s) {
        const KernelSample k = sample_kernel({Family::B1, Family::B2}, q, win, A, B, s);
        return max_family(k.xi, {Family::A1}, q, A, B);
    });
    tally("b_survives_projection", [&](std::uint64_t s) {
        double r = 0;
        for (Family f : {Family::B1, Family::B2}) {
            const KernelSample k = sample_kernel({f}, q, win, A, B, s);
            for (int kk = 0; kk <= q + 1; ++kk) r = std::max(r, max_family(theta_projection(k.xi, kk, q), {f}, 0, A, B));
        }
        return r;
    });
    tally("b1_vanishes_at_origin", [&](std::uint64_t s) {
        std::mt19937_64 rng(s);
        const BiLaurentPotential x = random_bilaurent(window, rng);
        return std::abs(constraint(Family::B1, x, 0, A, B, 0, 0)) / scale(x);
    });
    tally("a_survives_projection", [&](std::uint64_t s) {
        double r = 0;
        for (Family f : {Family::A2, Family::A3}) {
            const KernelSample k = sample_kernel({f}, q, win, A, B, s);
            for (int kk = 0; kk <= q + 1; ++kk) r = std::max(r, max_family(theta_projection(k.xi, kk, q), {f}, 0, A, B));
        }
        return r;
    });
    tally("a_vanishes_at_origin", [&](std::uint64_t s) {
        std::mt19937_64 rng(s);
        const BiLaurentPotential x = random_bilaurent(window, rng);
        return std::max(std::abs(constraint(Family::A2, x, 0, A, B, 0, 0)),
                        std::abs(constraint(Family::A3, x, 0, A, B, 0, 0))) /
               scale(x);
    });
    tally("a2_projection_corner", [&](std::uint64_t s) {
        std::mt19937_64 rng(s);
        const BiLaurentPotential x = random_bilaurent(window, rng);
        double r = 0;
        for (int kk = 0; kk <= q + 1; ++kk) {
            const cplx lhs = constraint(Family::A2, theta_projection(x, kk, q), 0, A, B, -1, 1);
            r = std::max(r, std::abs(lhs - constraint(Family::A2, x, q, A, B, kk - 1, 1 - kk)));
        }
        return r / scale(x);
    });
    tally("sklyanin_kernel_projects_into_kernel", [&](std::uint64_t s) {
        const KernelSample k = sample_sklyanin_kernel(q, win, A, B, s);
        double r = 0;
        for (int kk = 0; kk <= q + 1; ++kk)
            r = std::max(r, max_family(theta_projection(k.xi, kk, q), {Family::A1, Family::A2, Family::A3}, 0, A, B));
        return r;
    });
    return out;
}

}  // namespace strip
