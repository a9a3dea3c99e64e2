#include "isodg/analysis.hpp"

#include <cmath>
#include <limits>

#include "isodg/assembly.hpp"
#include "isodg/quadrature.hpp"

namespace isodg {

namespace {

constexpr double kCharacteristicEps = 1e-14;

int error_exactness(const DGSpace& space, int requested) {
    if (requested >= 0) return requested;
    return 3 * std::max(space.degree(), space.map().degree()) + 2;
}

} // namespace

double l2_error(const DGSpace& space, const TransportProblem& problem,
                const Eigen::VectorXd& solution, int quadrature_exactness) {
    if (!problem.has_exact()) {
        throw MissingExactSolution("l2_error: problem has no exact solution");
    }
    const Mesh& mesh = space.mesh();
    const GeometricMap& map = space.map();
    const ReferenceElement& basis = space.basis();
    const int n = space.block_size();
    const QuadratureRule vol = volume_quadrature(mesh.dim, error_exactness(space, quadrature_exactness));

    double err2 = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto coeffs = solution.segment(space.offset(e), n);
        for (int q = 0; q < vol.size(); ++q) {
            const Eigen::VectorXd xhat = vol.points.row(q).transpose();
            double det = 0.0;
            map.jacobian(e, xhat, &det);
            const double diff =
                basis.eval(xhat).dot(coeffs) - problem.exact(map.map_point(e, xhat));
            err2 += vol.weights(q) * det * diff * diff;
        }
    }
    return std::sqrt(err2);
}

double dg_error(const DGSpace& space, const TransportProblem& problem,
                const Eigen::VectorXd& solution, int quadrature_exactness) {
    if (!problem.has_exact()) {
        throw MissingExactSolution("dg_error: problem has no exact solution");
    }
    const Mesh& mesh = space.mesh();
    const GeometricMap& map = space.map();
    const ReferenceElement& basis = space.basis();
    const int n = space.block_size();
    const int vol_ex = error_exactness(space, quadrature_exactness);
    const QuadratureRule vol = volume_quadrature(mesh.dim, vol_ex);
    const QuadratureRule facet = volume_quadrature(mesh.dim - 1, vol_ex + 1);

    double err2 = 0.0;

    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto coeffs = solution.segment(space.offset(e), n);
        for (int q = 0; q < vol.size(); ++q) {
            const Eigen::VectorXd xhat = vol.points.row(q).transpose();
            double det = 0.0;
            map.jacobian(e, xhat, &det);
            const Eigen::VectorXd x = map.map_point(e, xhat);
            const double diff = basis.eval(xhat).dot(coeffs) - problem.exact(x);
            err2 += vol.weights(q) * det * problem.sigma(x) * diff * diff;
        }
    }

    for (const Face& face : mesh.faces) {
        for (int q = 0; q < facet.size(); ++q) {
            const FacePoint fp =
                evaluate_face_point(map, face, facet.points.row(q).transpose(), facet.weights(q));
            const double wn = problem.direction.dot(fp.frame.normal);
            if (std::abs(wn) <= kCharacteristicEps) continue;

            const Eigen::VectorXd psi_l = basis.eval(fp.xhat_left);
            const double el =
                psi_l.dot(solution.segment(space.offset(face.left_elem), n)) -
                problem.exact(fp.xphys);
            if (face.boundary()) {
                err2 += 0.5 * fp.weight * std::abs(wn) * el * el;
                continue;
            }
            const Eigen::VectorXd psi_r = basis.eval(fp.xhat_right);
            const double er =
                psi_r.dot(solution.segment(space.offset(face.right_elem), n)) -
                problem.exact(fp.xphys);
            const double jump = el - er;
            err2 += 0.5 * fp.weight * std::abs(wn) * jump * jump;
        }
    }
    return std::sqrt(err2);
}

Eigen::VectorXd project_to_space(const DGSpace& space, const ScalarField& field,
                                 int quadrature_exactness) {
    const Mesh& mesh = space.mesh();
    const GeometricMap& map = space.map();
    const ReferenceElement& basis = space.basis();
    const int n = space.block_size();
    const QuadratureRule vol =
        volume_quadrature(mesh.dim, error_exactness(space, quadrature_exactness));

    // Reference mass matrix, shared by all elements.
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n, n);
    std::vector<Eigen::VectorXd> psi(vol.size());
    for (int q = 0; q < vol.size(); ++q) {
        psi[q] = basis.eval(vol.points.row(q).transpose());
        mass.noalias() += vol.weights(q) * psi[q] * psi[q].transpose();
    }
    const Eigen::LLT<Eigen::MatrixXd> chol(mass);

    Eigen::VectorXd coeffs(space.ndof());
    for (int e = 0; e < mesh.num_elements(); ++e) {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        for (int q = 0; q < vol.size(); ++q) {
            const Eigen::VectorXd x = map.map_point(e, vol.points.row(q).transpose());
            b.noalias() += (vol.weights(q) * field(x)) * psi[q];
        }
        coeffs.segment(space.offset(e), n) = chol.solve(b);
    }
    return coeffs;
}

std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<int>& ndofs, int dim) {
    if (errors.size() != ndofs.size()) {
        throw LengthMismatch("convergence_rates: errors and ndofs differ in length");
    }
    if (errors.size() < 2) {
        throw LengthMismatch("convergence_rates: need at least two levels");
    }
    for (double e : errors) {
        if (!(e > 0.0)) throw NonpositiveError("convergence_rates: errors must be positive");
    }
    for (int nd : ndofs) {
        if (nd <= 0) throw NonpositiveError("convergence_rates: ndofs must be positive");
    }

    std::vector<double> rates(errors.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 1; i < errors.size(); ++i) {
        const double log_h_ratio =
            -std::log(static_cast<double>(ndofs[i]) / ndofs[i - 1]) / dim;
        rates[i] = std::log(errors[i] / errors[i - 1]) / log_h_ratio;
    }
    return rates;
}

double fitted_order(const std::vector<double>& errors) {
    const int n = static_cast<int>(errors.size());
    if (n < 2) throw LengthMismatch("fitted_order: need at least two levels");
    // h = C 2^{-level}; least squares slope of ln(e) vs ln(h).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        if (!(errors[i] > 0.0)) throw NonpositiveError("fitted_order: errors must be positive");
        const double x = -i * std::log(2.0);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace isodg
