#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "isodg/analysis.hpp"
#include "isodg/solver.hpp"

namespace isodg {

enum class ProblemId { Disc2d, Ball3d, Square2d, Polyhedron3d };
enum class GeometryKind { Curved, Straight };

/// One convergence-study run: a problem family, a field degree, a mesh source
/// (built-in refinement levels or mesh files), and the geometric-map kind.
/// `Straight` keeps the affine (degree-1) map while the fields stay degree k,
/// which isolates the geometric consistency error on curved domains.
struct StudyConfig {
    ProblemId problem = ProblemId::Disc2d;
    int degree = 2;
    std::vector<int> levels;             // built-in mesh levels
    std::vector<std::string> mesh_files; // alternative: meshes from disk
    GeometryKind geometry = GeometryKind::Curved;
    int quadrature_override = -1; // -1 = module defaults
    SolverConfig solver;
    int threads = 1;

    /// Number of study levels (built-in or file-based).
    int num_levels() const;

    /// Throws Error unless there are at least 2 levels and degree >= 1.
    void validate() const;
};

struct StudyRow {
    int level = 0;
    int nelem = 0;
    int ndof = 0;
    double l2_error = 0.0;
    double l2_rate = 0.0; // NaN on the first level
    double dg_error = 0.0;
    double dg_rate = 0.0; // NaN on the first level
};

struct StudyResult {
    std::vector<StudyRow> rows;
    std::vector<double> stability_ratios; // solution/data energy ratio per level
};

/// Runs the full study: per level build mesh, map, assemble, solve, measure
/// both error norms; rates follow the Ndof^{-1/d} mesh-size proxy.
/// Errors from any level are rethrown with the level prepended.
StudyResult run_study(const StudyConfig& config);

/// CSV emission, schema: level,nelem,ndof,l2_error,l2_rate,dg_error,dg_rate.
/// Floats in scientific notation with 6 significant digits; rates are empty
/// on the first level. Deterministic byte-for-byte for identical inputs.
void write_csv(const std::vector<StudyRow>& rows, std::ostream& out);

/// Fixed-width human-readable table of the same rows.
std::string format_table(const std::vector<StudyRow>& rows);

/// Interpolation-error counterpart of the study: project the exact solution
/// into the space (reference-coordinate L2 projection) and measure both norms
/// of the projection error per level.
struct ProjectionRow {
    int level = 0;
    int ndof = 0;
    double l2_error = 0.0;
    double dg_error = 0.0;
};

struct ProjectionStudyResult {
    std::vector<ProjectionRow> rows;
    std::vector<double> l2_rates; // NaN on the first level
    std::vector<double> dg_rates;
    double l2_order = 0.0; // least-squares slopes over all levels
    double dg_order = 0.0;
};

ProjectionStudyResult run_projection_study(const StudyConfig& config);

/// Geometry diagnostics per level: worst boundary distance of the mapped
/// boundary quadrature points, and the mapped-measure error against the exact
/// domain measure. Orders are least-squares slopes; NaN when the errors sit
/// at rounding level (affine-exact geometries).
struct GeometryCheckRow {
    int level = 0;
    int nelem = 0;
    double boundary_distance = 0.0;
    double measure_error = 0.0;
};

struct GeometryCheckResult {
    std::vector<GeometryCheckRow> rows;
    double exact_measure = 0.0;
    double boundary_order = 0.0;
    double measure_order = 0.0;
};

GeometryCheckResult run_geometry_check(const StudyConfig& config);

/// Built-in mesh/geometry factory shared by the study entry points.
DomainGeometry domain_for(ProblemId problem);
Mesh build_study_mesh(const StudyConfig& config, int index);

const char* to_string(ProblemId problem);
const char* to_string(GeometryKind kind);

} // namespace isodg
