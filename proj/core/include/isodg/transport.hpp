#pragma once

#include <functional>

#include <Eigen/Dense>

#include "isodg/errors.hpp"

namespace isodg {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;
using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Data of the steady transport equation  Omega . grad I + sigma I = f  with
/// inflow boundary value g. When a closed-form exact solution is attached the
/// problem is "manufactured": f and g are derived from it and error norms are
/// available.
struct TransportProblem {
    Eigen::VectorXd direction; // unit vector Omega
    ScalarField sigma;
    ScalarField source;  // f
    ScalarField inflow;  // g
    ScalarField exact;       // optional
    VectorField exact_grad;  // optional, required with `exact`

    bool has_exact() const { return static_cast<bool>(exact); }

    /// Checks ||Omega|| = 1 (1e-14) and, for manufactured problems, that
    /// f = Omega . grad I + sigma I at sampled points (1e-10).
    void validate() const;
};

/// sigma = 1, f = 1, g = 1; exact solution identically 1.
TransportProblem make_constant_problem(int dim, const Eigen::VectorXd& direction);

/// Manufactured problem from a closed-form solution: f and g are derived.
TransportProblem make_manufactured_problem(const Eigen::VectorXd& direction,
                                           ScalarField sigma, ScalarField exact,
                                           VectorField exact_grad);

/// 2D benchmark: Omega = (sqrt(3)/2, 1/2), sigma = 1,
/// I = sin(pi x + pi y) + x^2 + y^2 + x y + 5.
TransportProblem make_disc2d_problem();

/// 3D benchmark: Omega = (1,1,1)/sqrt(3), sigma = 1,
/// I = sin(pi(x+y+z)) + x^2 + y^2 + z^2 + x y z + 5.
TransportProblem make_ball3d_problem();

/// Fixed polynomial exact solution of total degree `degree` (<= 4), sigma = 1.
TransportProblem make_polynomial_problem(int dim, int degree,
                                         const Eigen::VectorXd& direction);

} // namespace isodg
