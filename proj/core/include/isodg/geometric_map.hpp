#pragma once

#include <vector>

#include <Eigen/Dense>

#include "isodg/domain_geometry.hpp"
#include "isodg/mesh.hpp"
#include "isodg/reference_element.hpp"

namespace isodg {

/// Physical frame of a face point: outward unit normal, the reference normal
/// it was pulled from, and the surface area scale relating reference and
/// physical surface measures (ds = scale * ds_ref).
struct SurfaceFrame {
    Eigen::VectorXd ref_normal;  // unit outward normal of the reference face
    Eigen::VectorXd normal;      // unit outward physical normal
    double scale = 0.0;          // detJ * ||J^{-T} n_ref||
};

/// Degree-k Lagrange geometric map, one set of control points per element.
///
/// Control points start as the affine images of the reference Lagrange nodes.
/// Nodes whose barycentric support lies inside a boundary sub-simplex (a
/// boundary face, or in 3D also a boundary edge) are projected onto the exact
/// boundary, so the global map is continuous across interior faces: shared
/// nodes are accumulated in ascending global-vertex order and projected
/// identically from every adjacent element, hence agree bitwise.
///
/// Vertex control points always equal the straight mesh vertices.
class GeometricMap {
public:
    /// Builds the map and verifies det J > 0 on the quadrature points of
    /// exactness `check_exactness` (defaults to 3k) in every element.
    GeometricMap(const Mesh& mesh, int degree, const DomainGeometry& geometry,
                 int check_exactness = -1);

    int degree() const { return basis_.degree(); }
    int dim() const { return mesh_->dim; }
    const Mesh& mesh() const { return *mesh_; }
    const DomainGeometry& geometry() const { return geometry_; }
    const ReferenceElement& basis() const { return basis_; }

    /// True when the element's map coincides with the straight affine map.
    bool element_affine(int e) const { return affine_[e] != 0; }

    /// Control points of element e, one row per geometry node.
    const Eigen::MatrixXd& control_points(int e) const { return control_[e]; }

    /// F_h(x̂) for element e.
    Eigen::VectorXd map_point(int e, const Eigen::VectorXd& xhat) const;

    /// Jacobian matrix of F_h at x̂. Throws DegenerateMap if det <= 0.
    Eigen::MatrixXd jacobian(int e, const Eigen::VectorXd& xhat, double* det = nullptr) const;

    /// Frame of a point on local face `face` of element e; `xhat` must lie on
    /// that face of the reference simplex.
    SurfaceFrame surface_frame(int e, int face, const Eigen::VectorXd& xhat) const;

private:
    const Mesh* mesh_;
    DomainGeometry geometry_;
    ReferenceElement basis_;
    std::vector<Eigen::MatrixXd> control_;
    std::vector<char> affine_;
};

/// Convenience builder mirroring the library's named operations.
GeometricMap build_isoparametric_map(const Mesh& mesh, int degree,
                                     const DomainGeometry& geometry);

/// Total measure of the mapped domain: sum over elements of the Jacobian
/// determinant integrated with a rule of the given exactness.
double mapped_measure(const GeometricMap& map, int quadrature_exactness);

} // namespace isodg
