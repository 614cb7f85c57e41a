#include "strip/io.hpp"

#include <fstream>

namespace strip::io {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
    return a;
}

json to_json(const CMat& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(CVec(m.row(i).transpose())));
    return a;
}

namespace {

json poly_json(const poly::Poly& p) {
    json a = json::array();
    for (cplx z : p) a.push_back(to_json(z));
    return a;
}

poly::Poly poly_from(const json& j) {
    if (!j.is_array()) throw Error("invalid input", "expected an array of [re, im]");
    poly::Poly p;
    for (const auto& e : j) p.push_back(complex_from(e));
    return p;
}

#define STRIP_TOL_FIELDS(X) \
    X(axis) X(root_sep) X(coeff) X(orbit) X(quad) X(lattice) X(theta) X(flow) X(flow_drift) X(remainder)

}  // namespace

json to_json(const Tolerances& t) {
    json j;
#define X(f) j[#f] = t.f;
    STRIP_TOL_FIELDS(X)
#undef X
    return j;
}

void apply_tolerance(Tolerances& t, const std::string& name, double value) {
#define X(f)             \
    if (name == #f) {    \
        t.f = value;     \
        return;          \
    }
    STRIP_TOL_FIELDS(X)
#undef X
    throw Error("invalid input", "unknown tolerance " + name);
}

Tolerances tolerances_from(const json& j, Tolerances base) {
    if (!j.is_object()) throw Error("invalid input", "tolerances must be an object");
    for (const auto& [k, v] : j.items()) {
        if (!v.is_number()) throw Error("invalid input", "tolerance " + k + " not a number");
        apply_tolerance(base, k, v.get<double>());
    }
    return base;
}

json to_json(const SpectralPolynomial& d) { return {{"genus", d.genus}, {"coeffs", poly_json(d.coeffs)}}; }

json to_json(const AdmissibilityReport& r) {
    json roots = json::array();
    for (cplx z : r.roots) roots.push_back(to_json(z));
    return {{"pass", r.pass()},
            {"even_genus", r.even_genus},
            {"real_symmetry", r.real_symmetry},
            {"circle_symmetry", r.circle_symmetry},
            {"normalized", r.normalized},
            {"simple_roots", r.simple_roots},
            {"off_axes", r.off_axes},
            {"orbit_closed", r.orbit_closed},
            {"roots", roots},
            {"min_separation", r.min_separation},
            {"min_axis_distance", r.min_axis_distance},
            {"failures", r.failures}};
}

json to_json(const PeriodData& pd) {
    const PeriodInvariants inv = period_invariants(pd);
    return {{"Pi", to_json(pd.Pi)},
            {"raw_alpha", to_json(pd.C)},
            {"raw_beta", to_json(pd.B)},
            {"invariants",
             {{"re_half", inv.re_half},
              {"symmetric", inv.symmetric},
              {"flip", inv.flip},
              {"min_im_eig", inv.min_im_eig},
              {"normalization", inv.normalization}}},
            {"tolerances", to_json(pd.curve.tolerances())}};
}

json to_json(const Potential& xi) {
    return {{"g", xi.g}, {"omega", poly_json(xi.omega)}, {"sigma", poly_json(xi.sigma)}, {"tau", poly_json(xi.tau)}};
}

json to_json(const Divisor& d) {
    json pts = json::array();
    for (std::size_t k = 0; k < d.points.size(); ++k)
        pts.push_back({{"lambda", to_json(d.points[k].lambda)},
                       {"nu", to_json(d.points[k].nu)},
                       {"sheet", d.points[k].sheet == Sheet::upper ? "upper" : "lower"},
                       {"mult", d.mult[k]}});
    return {{"points", pts}};
}

json cycles_to_json(const CycleBasis& b, int n) {
    auto one = [&](const Cycle& c) {
        json segs = json::array();
        for (const auto& s : c.segments) {
            json line = json::array();
            for (int k = 0; k <= n; ++k) {
                const double u = double(k) / n;
                const double lr = s.s0 + u * (s.s1 - s.s0), th = s.t0 + u * (s.t1 - s.t0);
                line.push_back(to_json(std::polar(std::exp(lr), th)));
            }
            segs.push_back({{"sheet", s.sheet == Sheet::upper ? "upper" : "lower"}, {"polyline", line}});
        }
        return json{{"kind", c.kind == Cycle::Kind::alpha ? "alpha" : "beta"}, {"index", c.index + 1}, {"segments", segs}};
    };
    json a = json::array();
    for (const auto& c : b.alpha) a.push_back(one(c));
    for (const auto& c : b.beta) a.push_back(one(c));
    return a;
}

cplx complex_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw Error("invalid input", "expected [re, im], got " + j.dump());
}

CVec vector_from(const json& j) {
    const poly::Poly p = poly_from(j);
    CVec v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v(i) = p[i];
    return v;
}

SpectralPolynomial curve_from(const json& j, const Tolerances& tol) {
    if (!j.is_object()) throw Error("invalid input", "curve must be an object");
    for (const auto& [k, v] : j.items())
        if (k != "genus" && k != "coeffs" && k != "seeds") throw Error("invalid input", "unknown key " + k);
    if (j.contains("seeds")) return from_root_quadruples(poly_from(j["seeds"]), tol);
    if (!j.contains("coeffs")) throw Error("invalid input", "curve needs coeffs or seeds");
    SpectralPolynomial d;
    d.coeffs = poly_from(j["coeffs"]);
    if (d.coeffs.size() % 2 == 0) throw Error("invalid input", "coefficient count must be odd");
    d.genus = int(d.coeffs.size() - 1) / 2;
    if (j.contains("genus") && j["genus"].get<int>() != d.genus) throw Error("invalid input", "genus/coeffs mismatch");
    return d;
}

Potential potential_from(const json& j) {
    if (!j.is_object() || !j.contains("omega") || !j.contains("sigma") || !j.contains("tau"))
        throw Error("invalid input", "potential needs omega, sigma, tau");
    Potential xi;
    xi.omega = poly_from(j["omega"]);
    xi.sigma = poly_from(j["sigma"]);
    xi.tau = poly_from(j["tau"]);
    xi.g = int(xi.omega.size());
    if (j.contains("g") && j["g"].get<int>() != xi.g) throw Error("invalid input", "g/omega mismatch");
    if (int(xi.sigma.size()) != xi.g + 1 || int(xi.tau.size()) != xi.g + 1)
        throw Error("invalid input", "sigma and tau need g+1 coefficients");
    return xi;
}

json read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("invalid input", "cannot open " + path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw Error("invalid input", e.what());
    }
}

}  // namespace strip::io
