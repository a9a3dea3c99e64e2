#pragma once

#include <vector>

#include "isodg/dg_space.hpp"
#include "isodg/transport.hpp"

namespace isodg {

/// L2 norm of (u_h - I) over the mapped mesh, with the exact solution
/// evaluated at physical quadrature points. Throws MissingExactSolution.
double l2_error(const DGSpace& space, const TransportProblem& problem,
                const Eigen::VectorXd& solution, int quadrature_exactness = -1);

/// Error in the upwind energy norm: sigma-weighted L2 part, half-weighted
/// boundary flux part, and half-weighted interior jumps. The exact solution
/// is continuous, so the jump of the error equals minus the discrete jump.
double dg_error(const DGSpace& space, const TransportProblem& problem,
                const Eigen::VectorXd& solution, int quadrature_exactness = -1);

/// Elementwise L2 projection in reference coordinates (no Jacobian weight):
/// the isoparametric auxiliary projection of a scalar field into the space.
Eigen::VectorXd project_to_space(const DGSpace& space, const ScalarField& field,
                                 int quadrature_exactness = -1);

/// Successive convergence rates from the mesh-size proxy h ~ Ndof^{-1/d}.
/// Entry 0 is NaN; entry i >= 1 is ln(e_i/e_{i-1}) / ln(h_i/h_{i-1}).
std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<int>& ndofs, int dim);

/// Least-squares slope of ln(error) against ln(h) for h halved per level.
double fitted_order(const std::vector<double>& errors);

} // namespace isodg
