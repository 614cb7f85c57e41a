#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace strip {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Every recoverable failure carries a short machine-readable code, e.g. "invalid seed".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail = {})
        : std::runtime_error(detail.empty() ? code : code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// One record for every tunable threshold; the CLI overrides fields via --tol-<name>.
struct Tolerances {
    double axis = 1e-8;        // distance below which a root counts as on R or the unit circle
    double root_sep = 1e-6;    // minimal pairwise root separation for "simple"
    double coeff = 1e-10;      // symmetry / normalization checks on coefficients
    double orbit = 1e-9;       // root orbit matching
    double quad = 1e-13;       // relative tolerance per quadrature segment
    double lattice = 1e-7;     // "equal mod lattice"
    double theta = 1e-15;      // theta series truncation (relative to the dominant term)
    double flow = 1e-11;       // ODE absolute tolerance per coefficient
    double flow_drift = 1e-7;  // allowed drift of the spectral invariant along a flow
    double remainder = 1e-9;   // synthetic-division remainder
};

}  // namespace strip
