#include "isodg/study.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <limits>
#include <ostream>
#include <sstream>

#include "isodg/assembly.hpp"
#include "isodg/gmsh_io.hpp"
#include "isodg/quadrature.hpp"

namespace isodg {

namespace {

constexpr double kPi = 3.14159265358979323846;

TransportProblem problem_for(ProblemId problem) {
    switch (problem) {
    case ProblemId::Disc2d:
    case ProblemId::Square2d:
        return make_disc2d_problem();
    case ProblemId::Ball3d:
    case ProblemId::Polyhedron3d:
        return make_ball3d_problem();
    }
    throw Error("unknown problem id");
}

int map_degree(const StudyConfig& config) {
    return config.geometry == GeometryKind::Straight ? 1 : config.degree;
}

/// Measure of the straight (affine) mesh: exact for polygonal domains.
double affine_measure(const Mesh& mesh) {
    double factorial = 1.0;
    for (int c = 2; c <= mesh.dim; ++c) factorial *= c;
    double total = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) total += mesh.affine_det(e) / factorial;
    return total;
}

// Prefix the failing level while keeping the exception type, so callers can
// still classify the failure (I/O vs numerical).
[[noreturn]] void rethrow_with_level(int level, const Error& err) {
    const std::string msg = "level " + std::to_string(level) + ": " + err.what();
    if (dynamic_cast<const DegenerateMap*>(&err)) throw DegenerateMap(msg);
    if (dynamic_cast<const SingularMatrix*>(&err)) throw SingularMatrix(msg);
    if (dynamic_cast<const MaxIterationsExceeded*>(&err)) throw MaxIterationsExceeded(msg);
    if (dynamic_cast<const IoError*>(&err)) throw IoError(msg);
    if (dynamic_cast<const UnsupportedFormat*>(&err)) throw UnsupportedFormat(msg);
    if (dynamic_cast<const InvalidMesh*>(&err)) throw InvalidMesh(msg);
    throw Error(msg);
}

} // namespace

const char* to_string(ProblemId problem) {
    switch (problem) {
    case ProblemId::Disc2d: return "disc2d";
    case ProblemId::Ball3d: return "ball3d";
    case ProblemId::Square2d: return "square2d";
    case ProblemId::Polyhedron3d: return "polyhedron3d";
    }
    return "?";
}

const char* to_string(GeometryKind kind) {
    return kind == GeometryKind::Curved ? "curved" : "straight";
}

int StudyConfig::num_levels() const {
    return static_cast<int>(mesh_files.empty() ? levels.size() : mesh_files.size());
}

void StudyConfig::validate() const {
    if (degree < 1) throw Error("study: degree must be at least 1");
    if (num_levels() < 2) throw Error("study: need at least 2 levels");
    if (!mesh_files.empty() && !levels.empty()) {
        throw Error("study: give either levels or mesh files, not both");
    }
}

DomainGeometry domain_for(ProblemId problem) {
    switch (problem) {
    case ProblemId::Disc2d:
        return DomainGeometry::circle(Eigen::Vector2d::Zero(), 0.5);
    case ProblemId::Ball3d:
        return DomainGeometry::sphere(Eigen::Vector3d::Zero(), 1.0);
    case ProblemId::Square2d:
        return DomainGeometry::polygonal(2);
    case ProblemId::Polyhedron3d:
        return DomainGeometry::polygonal(3);
    }
    throw Error("unknown problem id");
}

Mesh build_study_mesh(const StudyConfig& config, int index) {
    const DomainGeometry geometry = domain_for(config.problem);
    if (!config.mesh_files.empty()) {
        Mesh mesh = load_gmsh(config.mesh_files[index]);
        validate_mesh(mesh, &geometry);
        return mesh;
    }
    const int level = config.levels[index];
    switch (config.problem) {
    case ProblemId::Disc2d: return generate_disc_mesh(level, geometry);
    case ProblemId::Ball3d: return generate_ball_mesh(level, geometry);
    case ProblemId::Square2d: return generate_square_mesh(level);
    case ProblemId::Polyhedron3d: return generate_polyhedron_mesh(level);
    }
    throw Error("unknown problem id");
}

StudyResult run_study(const StudyConfig& config) {
    config.validate();
    const DomainGeometry geometry = domain_for(config.problem);
    const TransportProblem problem = problem_for(config.problem);
    problem.validate();

    AssemblyOptions options;
    options.threads = config.threads;
    if (config.quadrature_override >= 0) {
        options.volume_exactness = config.quadrature_override;
        options.face_exactness = config.quadrature_override + 1;
    }

    StudyResult result;
    std::vector<double> l2_errors, dg_errors;
    std::vector<int> ndofs;

    for (int i = 0; i < config.num_levels(); ++i) {
        const int level = config.mesh_files.empty() ? config.levels[i] : i;
        try {
            const Mesh mesh = build_study_mesh(config, i);
            const GeometricMap map = build_isoparametric_map(mesh, map_degree(config), geometry);
            const DGSpace space(mesh, map, config.degree);

            // With a straight solve map on a curved geometry the mesh only
            // approximates the domain: the problem itself lives on the curved
            // domain, so its data (f, g) is evaluated through the degree-k
            // curved map, and the errors are measured against the exact
            // solution pulled back through the same map. The mismatch between
            // the two maps is exactly the geometric error of the straight
            // configuration.
            std::optional<GeometricMap> curved_map;
            std::optional<DGSpace> curved_space;
            const DGSpace* measure = &space;
            AssemblyOptions level_options = options;
            if (config.geometry == GeometryKind::Straight && geometry.curved()) {
                curved_map.emplace(
                    build_isoparametric_map(mesh, config.degree, geometry));
                curved_space.emplace(mesh, *curved_map, config.degree);
                measure = &*curved_space;
                level_options.data_map = &*curved_map;
            }

            const SparseSystem system = assemble(space, problem, level_options);
            const SolveResult solved = solve(system, config.solver);
            if (!solved.converged) {
                throw MaxIterationsExceeded(
                    "solver stalled at relative residual " +
                    std::to_string(solved.relative_residual));
            }

            StudyRow row;
            row.level = level;
            row.nelem = mesh.num_elements();
            row.ndof = space.ndof();
            row.l2_error =
                l2_error(*measure, problem, solved.solution, config.quadrature_override);
            row.dg_error =
                dg_error(*measure, problem, solved.solution, config.quadrature_override);
            row.l2_rate = row.dg_rate = std::numeric_limits<double>::quiet_NaN();
            result.rows.push_back(row);

            result.stability_ratios.push_back(
                stability_check(space, problem, solved.solution, level_options).ratio);

            l2_errors.push_back(row.l2_error);
            dg_errors.push_back(row.dg_error);
            ndofs.push_back(row.ndof);
        } catch (const Error& err) {
            rethrow_with_level(level, err);
        }
    }

    const int dim = config.problem == ProblemId::Disc2d || config.problem == ProblemId::Square2d
                        ? 2
                        : 3;
    const std::vector<double> l2_rates = convergence_rates(l2_errors, ndofs, dim);
    const std::vector<double> dg_rates = convergence_rates(dg_errors, ndofs, dim);
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        result.rows[i].l2_rate = l2_rates[i];
        result.rows[i].dg_rate = dg_rates[i];
    }
    return result;
}

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5e", v);
    return buf;
}

std::string rate_field(double v) { return std::isnan(v) ? std::string() : sci(v); }

} // namespace

void write_csv(const std::vector<StudyRow>& rows, std::ostream& out) {
    out << "level,nelem,ndof,l2_error,l2_rate,dg_error,dg_rate\n";
    for (const StudyRow& row : rows) {
        out << row.level << ',' << row.nelem << ',' << row.ndof << ','
            << sci(row.l2_error) << ',' << rate_field(row.l2_rate) << ','
            << sci(row.dg_error) << ',' << rate_field(row.dg_rate) << '\n';
    }
}

std::string format_table(const std::vector<StudyRow>& rows) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%5s %8s %9s %13s %8s %13s %8s\n", "level", "nelem",
                  "ndof", "l2_error", "l2_rate", "dg_error", "dg_rate");
    out << line;
    for (const StudyRow& row : rows) {
        std::snprintf(line, sizeof(line), "%5d %8d %9d %13s %8s %13s %8s\n", row.level,
                      row.nelem, row.ndof, sci(row.l2_error).c_str(),
                      std::isnan(row.l2_rate) ? "-" : sci(row.l2_rate).substr(0, 7).c_str(),
                      sci(row.dg_error).c_str(),
                      std::isnan(row.dg_rate) ? "-" : sci(row.dg_rate).substr(0, 7).c_str());
        out << line;
    }
    return out.str();
}

ProjectionStudyResult run_projection_study(const StudyConfig& config) {
    config.validate();
    const DomainGeometry geometry = domain_for(config.problem);
    const TransportProblem problem = problem_for(config.problem);
    if (!problem.has_exact()) {
        throw MissingExactSolution("projection study needs an exact solution");
    }

    ProjectionStudyResult result;
    std::vector<double> l2_errors, dg_errors;
    std::vector<int> ndofs;
    for (int i = 0; i < config.num_levels(); ++i) {
        const int level = config.mesh_files.empty() ? config.levels[i] : i;
        try {
            const Mesh mesh = build_study_mesh(config, i);
            const GeometricMap map = build_isoparametric_map(mesh, map_degree(config), geometry);
            const DGSpace space(mesh, map, config.degree);
            const Eigen::VectorXd proj =
                project_to_space(space, problem.exact, config.quadrature_override);

            ProjectionRow row;
            row.level = level;
            row.ndof = space.ndof();
            row.l2_error = l2_error(space, problem, proj, config.quadrature_override);
            row.dg_error = dg_error(space, problem, proj, config.quadrature_override);
            result.rows.push_back(row);
            l2_errors.push_back(row.l2_error);
            dg_errors.push_back(row.dg_error);
            ndofs.push_back(row.ndof);
        } catch (const Error& err) {
            rethrow_with_level(level, err);
        }
    }
    const int dim = domain_for(config.problem).dim();
    result.l2_rates = convergence_rates(l2_errors, ndofs, dim);
    result.dg_rates = convergence_rates(dg_errors, ndofs, dim);
    result.l2_order = fitted_order(l2_errors);
    result.dg_order = fitted_order(dg_errors);
    return result;
}

GeometryCheckResult run_geometry_check(const StudyConfig& config) {
    config.validate();
    const DomainGeometry geometry = domain_for(config.problem);
    const int k = map_degree(config);

    GeometryCheckResult result;
    std::vector<double> boundary_errs, measure_errs;
    for (int i = 0; i < config.num_levels(); ++i) {
        const int level = config.mesh_files.empty() ? config.levels[i] : i;
        try {
            const Mesh mesh = build_study_mesh(config, i);
            const GeometricMap map = build_isoparametric_map(mesh, k, geometry);

            switch (config.problem) {
            case ProblemId::Disc2d: result.exact_measure = kPi * 0.5 * 0.5; break;
            case ProblemId::Ball3d: result.exact_measure = 4.0 / 3.0 * kPi; break;
            default: result.exact_measure = affine_measure(mesh); break;
            }

            const int exactness = config.quadrature_override >= 0 ? config.quadrature_override
                                                                  : 3 * k + 2;
            GeometryCheckRow row;
            row.level = level;
            row.nelem = mesh.num_elements();
            row.measure_error = std::abs(mapped_measure(map, exactness) - result.exact_measure);

            const QuadratureRule facet = volume_quadrature(mesh.dim - 1, exactness);
            double worst = 0.0;
            for (int bf : mesh.boundary_faces) {
                const Face& face = mesh.faces[bf];
                for (int q = 0; q < facet.size(); ++q) {
                    const FacePoint fp = evaluate_face_point(
                        map, face, facet.points.row(q).transpose(), facet.weights(q));
                    worst = std::max(worst, std::abs(geometry.phi(fp.xphys)));
                }
            }
            row.boundary_distance = worst;
            result.rows.push_back(row);
            boundary_errs.push_back(row.boundary_distance);
            measure_errs.push_back(row.measure_error);
        } catch (const Error& err) {
            rethrow_with_level(level, err);
        }
    }

    const auto safe_order = [](const std::vector<double>& errs) {
        for (double e : errs) {
            if (!(e > 1e-14)) return std::numeric_limits<double>::quiet_NaN();
        }
        return fitted_order(errs);
    };
    result.boundary_order = safe_order(boundary_errs);
    result.measure_order = safe_order(measure_errs);
    return result;
}

} // namespace isodg
