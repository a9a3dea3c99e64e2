#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "isodg/errors.hpp"

namespace isodg {

/// Nodal Lagrange basis of total degree k on the unit reference simplex,
/// with equally spaced nodes. Degree 0 (single node at the barycenter) is
/// supported for test purposes; the isoparametric geometry uses k >= 1.
///
/// Basis functions are represented in the monomial basis through the inverse
/// of the node Vandermonde matrix; conditioning is unproblematic for k <= 4.
class ReferenceElement {
public:
    ReferenceElement(int dim, int degree);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    int size() const { return static_cast<int>(bary_.size()); }

    /// Node coordinates in the reference simplex, one row per basis function.
    const Eigen::MatrixXd& nodes() const { return nodes_; }

    /// Barycentric exponent tuple of node i (entries sum to the degree).
    const std::array<int, 4>& node_multi_index(int i) const { return bary_[i]; }

    /// Barycentric support of node i: reference vertex indices with nonzero
    /// weight. A vertex node has support size 1, an edge node 2, etc.
    std::vector<int> node_support(int i) const;

    /// Values of all basis functions at a reference point.
    Eigen::VectorXd eval(const Eigen::VectorXd& x) const;

    /// Reference gradients, one row per basis function.
    Eigen::MatrixXd grad(const Eigen::VectorXd& x) const;

    /// Vertices of the unit reference simplex, one row per vertex.
    static Eigen::MatrixXd simplex_vertices(int dim);

    /// Outward unit normal of local face f (the face opposite vertex f).
    static Eigen::VectorXd face_normal(int dim, int face);

    /// Measure of local face f of the reference simplex.
    static double face_measure(int dim, int face);

private:
    int dim_;
    int degree_;
    std::vector<std::array<int, 4>> bary_;       // barycentric exponents per node
    std::vector<std::array<int, 3>> monomials_;  // monomial exponents
    Eigen::MatrixXd nodes_;                      // size() x dim
    Eigen::MatrixXd coeffs_;                     // inverse Vandermonde, psi = C^T m(x)
};

} // namespace isodg
