#pragma once

#include "strip/common.hpp"

// Dense complex polynomials stored lowest degree first.
namespace strip::poly {

using Poly = std::vector<cplx>;

cplx eval(const Poly& p, cplx x);
cplx deriv_eval(const Poly& p, cplx x);
Poly mul(const Poly& a, const Poly& b);
Poly add(const Poly& a, const Poly& b);
Poly scale(const Poly& a, cplx s);
Poly derivative(const Poly& p);
Poly from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);
Poly conj(const Poly& p);
void trim(Poly& p, double tol = 0.0);
int degree(const Poly& p);

// Quotient of a / b; the remainder is returned through rem.
Poly divide(const Poly& a, const Poly& b, Poly& rem);

// Companion-matrix eigenvalues, then one Weierstrass (simultaneous) correction and
// a couple of Newton steps per root.
std::vector<cplx> roots(const Poly& p);

// Lagrange interpolation through (x_j, y_j); degree n-1 result.
Poly interpolate(const std::vector<cplx>& x, const std::vector<cplx>& y);

}  // namespace strip::poly
