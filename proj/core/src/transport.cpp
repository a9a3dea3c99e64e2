#include "isodg/transport.hpp"

#include <cmath>
#include <random>

namespace isodg {

void TransportProblem::validate() const {
    if (std::abs(direction.norm() - 1.0) > 1e-14) {
        throw NonUnitDirection("TransportProblem: direction must be a unit vector");
    }
    if (has_exact()) {
        if (!exact_grad) {
            throw MissingExactSolution("TransportProblem: exact solution without gradient");
        }
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> dist(-0.4, 0.4);
        const int d = static_cast<int>(direction.size());
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::VectorXd x(d);
            for (int c = 0; c < d; ++c) x(c) = dist(rng);
            const double lhs = direction.dot(exact_grad(x)) + sigma(x) * exact(x);
            const double rhs = source(x);
            if (std::abs(lhs - rhs) > 1e-10 * (1.0 + std::abs(rhs))) {
                throw Error("TransportProblem: source inconsistent with exact solution");
            }
        }
    }
}

TransportProblem make_constant_problem(int dim, const Eigen::VectorXd& direction) {
    TransportProblem p;
    p.direction = direction;
    p.sigma = [](const Eigen::VectorXd&) { return 1.0; };
    p.source = [](const Eigen::VectorXd&) { return 1.0; };
    p.inflow = [](const Eigen::VectorXd&) { return 1.0; };
    p.exact = [](const Eigen::VectorXd&) { return 1.0; };
    p.exact_grad = [dim](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(dim).eval(); };
    return p;
}

TransportProblem make_manufactured_problem(const Eigen::VectorXd& direction,
                                           ScalarField sigma, ScalarField exact,
                                           VectorField exact_grad) {
    TransportProblem p;
    p.direction = direction;
    p.sigma = sigma;
    p.exact = exact;
    p.exact_grad = exact_grad;
    p.source = [direction, sigma, exact, exact_grad](const Eigen::VectorXd& x) {
        return direction.dot(exact_grad(x)) + sigma(x) * exact(x);
    };
    p.inflow = exact;
    return p;
}

TransportProblem make_disc2d_problem() {
    Eigen::VectorXd omega(2);
    omega << std::sqrt(3.0) / 2.0, 0.5;
    auto sol = [](const Eigen::VectorXd& x) {
        return std::sin(M_PI * (x(0) + x(1))) + x(0) * x(0) + x(1) * x(1) + x(0) * x(1) + 5.0;
    };
    auto grad = [](const Eigen::VectorXd& x) {
        const double c = M_PI * std::cos(M_PI * (x(0) + x(1)));
        Eigen::VectorXd g(2);
        g << c + 2.0 * x(0) + x(1), c + 2.0 * x(1) + x(0);
        return g;
    };
    return make_manufactured_problem(
        omega, [](const Eigen::VectorXd&) { return 1.0; }, sol, grad);
}

TransportProblem make_ball3d_problem() {
    Eigen::VectorXd omega = Eigen::VectorXd::Constant(3, 1.0 / std::sqrt(3.0));
    auto sol = [](const Eigen::VectorXd& x) {
        return std::sin(M_PI * (x(0) + x(1) + x(2))) + x.squaredNorm() +
               x(0) * x(1) * x(2) + 5.0;
    };
    auto grad = [](const Eigen::VectorXd& x) {
        const double c = M_PI * std::cos(M_PI * (x(0) + x(1) + x(2)));
        Eigen::VectorXd g(3);
        g << c + 2.0 * x(0) + x(1) * x(2), c + 2.0 * x(1) + x(0) * x(2),
            c + 2.0 * x(2) + x(0) * x(1);
        return g;
    };
    return make_manufactured_problem(
        omega, [](const Eigen::VectorXd&) { return 1.0; }, sol, grad);
}

TransportProblem make_polynomial_problem(int dim, int degree,
                                         const Eigen::VectorXd& direction) {
    // A full-degree polynomial with all coordinates coupled, so the test does
    // not accidentally pass through symmetry.
    auto sol = [dim, degree](const Eigen::VectorXd& x) {
        double s = 1.0;
        for (int c = 0; c < dim; ++c) s += (c + 1) * x(c);
        double value = 2.0;
        double term = 1.0;
        for (int p = 1; p <= degree; ++p) {
            term *= s;
            value += term / (p + 1.0);
        }
        return value;
    };
    auto grad = [dim, degree](const Eigen::VectorXd& x) {
        double s = 1.0;
        for (int c = 0; c < dim; ++c) s += (c + 1) * x(c);
        double ds = 0.0;
        double term = 1.0;
        for (int p = 1; p <= degree; ++p) {
            ds += p * term / (p + 1.0);
            term *= s;
        }
        Eigen::VectorXd g(dim);
        for (int c = 0; c < dim; ++c) g(c) = (c + 1) * ds;
        return g;
    };
    return make_manufactured_problem(
        direction, [](const Eigen::VectorXd&) { return 1.0; }, sol, grad);
}

} // namespace isodg
