#pragma once

#include <Eigen/Sparse>

#include "isodg/dg_space.hpp"
#include "isodg/transport.hpp"

namespace isodg {

enum class FacePointKind { Inflow, Outflow, Characteristic };

/// Pointwise classification against the upwind direction, with a 1e-14 dead
/// band for characteristic points. On curved faces the sign of Omega . n can
/// change within a single face, so classification is per quadrature point.
FacePointKind classify_face_point(const Eigen::VectorXd& direction, const SurfaceFrame& frame);

/// Assembled upwind DG system in compressed-row storage.
struct SparseSystem {
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
    Eigen::VectorXd rhs;
    int block_size = 0;
    long coupled_faces = 0; // interior faces with at least one strictly upwinded point
};

struct AssemblyOptions {
    int volume_exactness = -1; // default 3k
    int face_exactness = -1;   // default 3k + 1
    int threads = 1;           // 1 = reference single-threaded mode

    /// When set, the problem data (sigma, f, g) is evaluated at the image of
    /// the reference quadrature point under this map instead of the space's
    /// own geometric map. This realizes the "straight mesh on a curved
    /// domain" configuration: the problem lives on the curved domain, while
    /// the discretization approximates its geometry with the affine map.
    const GeometricMap* data_map = nullptr;
};

/// One quadrature point of a mesh face, with the traces prepared from both
/// sides. The frame (outward normal, surface scale) is taken from the left
/// element; `weight` already contains the facet weight, the reference-face
/// embedding factor and the physical surface scale.
struct FacePoint {
    Eigen::VectorXd xhat_left;
    Eigen::VectorXd xhat_right; // size 0 on boundary faces
    Eigen::VectorXd xphys;
    SurfaceFrame frame;
    double weight = 0.0;
};

/// Evaluates the face point for the facet barycentric coordinates `mu`
/// (size d-1, coordinates after the first canonical face vertex) carrying the
/// facet quadrature weight `w` (on the unit (d-1)-simplex).
FacePoint evaluate_face_point(const GeometricMap& map, const Face& face,
                              const Eigen::VectorXd& mu, double w);

/// Assembles the upwind DG bilinear form and right-hand side: volume
/// advection-reaction terms, upwinded interior jumps, and weak inflow
/// boundary data. Data functions are evaluated at mapped physical points.
SparseSystem assemble(const DGSpace& space, const TransportProblem& problem,
                      const AssemblyOptions& options = {});

/// Evaluates the integrated-by-parts form of the bilinear operator on two
/// coefficient vectors; cross-check for the assembled matrix.
double apply_bilinear(const DGSpace& space, const TransportProblem& problem,
                      const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                      const AssemblyOptions& options = {});

/// Discrete stability balance: energy-type functional of the solution vs the
/// data functional. The ratio stays bounded under refinement.
struct StabilityReport {
    double solution_energy = 0.0; // sigma L2 + inflow + jump + outflow terms
    double data_energy = 0.0;     // f L2 + inflow g L2
    double ratio = 0.0;
};

StabilityReport stability_check(const DGSpace& space, const TransportProblem& problem,
                                const Eigen::VectorXd& solution,
                                const AssemblyOptions& options = {});

} // namespace isodg
