#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "isodg/domain_geometry.hpp"
#include "isodg/errors.hpp"

namespace isodg {

/// One codimension-1 face of the mesh together with its incidence data.
///
/// `vertices` holds the global vertex ids in ascending order (the canonical
/// face key); entry [2] is -1 for 2D edges. The orientation permutation maps
/// the canonical tuple back into the element-local face ordering:
/// local_face_vertices(elem, local)[perm[m]] == vertices[m].
struct Face {
    std::array<int, 3> vertices{-1, -1, -1};
    int left_elem = -1;
    int left_local = -1;
    int right_elem = -1;   // -1 marks a boundary face
    int right_local = -1;
    std::array<int, 3> left_perm{0, 0, 0};
    std::array<int, 3> right_perm{0, 0, 0};

    bool boundary() const { return right_elem < 0; }
};

/// Straight simplicial mesh with full face connectivity.
///
/// Elements are (d+1)-tuples of vertex ids with positive affine Jacobian
/// determinant; entry [3] is -1 in 2D. The mesh is immutable after
/// construction (generators and refinement return new meshes).
struct Mesh {
    int dim = 2;
    Eigen::MatrixXd vertices;                 // num_vertices x dim
    std::vector<std::array<int, 4>> elements; // [3] == -1 in 2D
    std::vector<Face> faces;
    std::vector<int> boundary_faces;          // indices into `faces`

    int num_vertices() const { return static_cast<int>(vertices.rows()); }
    int num_elements() const { return static_cast<int>(elements.size()); }
    int num_faces() const { return static_cast<int>(faces.size()); }
    int verts_per_elem() const { return dim + 1; }

    Eigen::VectorXd vertex(int v) const { return vertices.row(v).transpose(); }

    /// Global vertex ids of local face `f` of element `e`, in increasing
    /// local-index order (local face f omits local vertex f).
    std::array<int, 3> local_face_vertices(int e, int f) const;

    /// Affine Jacobian matrix of the straight vertex map of element `e`.
    Eigen::MatrixXd affine_jacobian(int e) const;
    double affine_det(int e) const;

    double element_diameter(int e) const;
};

/// Rebuilds `faces` and `boundary_faces` from the element list.
/// Throws InvalidMesh if a face is shared by more than two elements.
void build_connectivity(Mesh& mesh);

/// Reorders element vertices so every affine determinant is positive.
void fix_orientation(Mesh& mesh);

/// Checks the structural mesh invariants: positive orientation, face
/// handshake, no duplicate vertices (1e-12), connectedness, and (for curved
/// geometries) boundary vertices on the exact boundary. Throws InvalidMesh.
void validate_mesh(const Mesh& mesh, const DomainGeometry* geometry = nullptr);

/// Ratio of the largest to the smallest element diameter.
double diameter_ratio(const Mesh& mesh);

/// Uniform red refinement: each triangle splits into 4, each tetrahedron into
/// 8 (corner cut plus shortest-diagonal octahedron split). New vertices
/// created on boundary edges are projected onto the exact boundary.
Mesh refine_mesh(const Mesh& mesh, const DomainGeometry& geometry);

/// Built-in deterministic mesh families. Level 0 is a fixed coarse mesh with
/// all boundary vertices on the exact boundary; level n applies refine_mesh
/// n times.
Mesh generate_disc_mesh(int level, const DomainGeometry& geometry);
Mesh generate_ball_mesh(int level, const DomainGeometry& geometry);

/// Unit square [0,1]^2, polygonal geometry (no boundary projection).
Mesh generate_square_mesh(int level);

/// Convex polyhedron inscribed in the unit ball, refined without boundary
/// projection, so the domain stays polyhedral at every level.
Mesh generate_polyhedron_mesh(int level);

} // namespace isodg
