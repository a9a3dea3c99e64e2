#pragma once

#include <Eigen/Dense>

#include "isodg/errors.hpp"

namespace isodg {

/// Quadrature rule on a reference simplex (or on one of its faces, with
/// points embedded in the simplex). Weights are positive and sum to the
/// measure of the integration domain.
struct QuadratureRule {
    Eigen::MatrixXd points;  // n x embedding-dimension
    Eigen::VectorXd weights;
    int exactness = 0;

    int size() const { return static_cast<int>(weights.size()); }
};

/// Rule on the unit d-simplex exact for all polynomials of total degree
/// <= exactness. d = 1 is the unit interval; d = 2, 3 use collapsed
/// tensor-product Gauss rules, so any requested degree up to the cap works.
QuadratureRule volume_quadrature(int dim, int exactness);

/// Rule on local face `face` of the reference d-simplex: points are embedded
/// d-dimensional coordinates lying on the face, weights sum to the reference
/// face measure.
QuadratureRule face_quadrature(int dim, int exactness, int face);

/// Gauss-Legendre rule on [0, 1] with n points (exact through degree 2n-1).
QuadratureRule gauss_legendre_unit(int n);

} // namespace isodg
