#pragma once

#include <map>

#include "strip/potential.hpp"

namespace strip {

// Finite Laurent polynomial in λ with 2×2 complex coefficients.
struct LaurentMatrix {
    std::map<int, Eigen::Matrix2cd> c;

    Eigen::Matrix2cd coeff(int k) const;
    Eigen::Matrix2cd operator()(cplx lambda) const;
    int lo() const { return c.empty() ? 0 : c.begin()->first; }
    int hi() const { return c.empty() ? 0 : c.rbegin()->first; }
    double max_abs() const;

    LaurentMatrix& operator+=(const LaurentMatrix& o);
    LaurentMatrix operator+(const LaurentMatrix& o) const;
    LaurentMatrix operator-(const LaurentMatrix& o) const;
    LaurentMatrix operator*(const LaurentMatrix& o) const;
    LaurentMatrix operator*(cplx s) const;
};

LaurentMatrix commutator(const LaurentMatrix& a, const LaurentMatrix& b);

// Multiply by the scalar Laurent polynomial Σ p_k λ^(shift + k).
LaurentMatrix scalar_mul(const poly::Poly& p, int shift, const LaurentMatrix& m);

// Π₋ keeps negative powers, the strictly lower part of the constant term and half its
// diagonal; Π₊ is the mirror image. Π₋ + Π₊ is the identity.
LaurentMatrix proj_minus(const LaurentMatrix& m);
LaurentMatrix proj_plus(const LaurentMatrix& m);

LaurentMatrix to_laurent(const Potential& xi);
// Inverse of to_laurent; entries outside the potential shape go into the returned defect.
Potential from_laurent(const LaurentMatrix& m, int g, double* shape_defect = nullptr);

}  // namespace strip
