#include <doctest.h>

#include <cmath>

#include <isodg/transport.hpp>

using namespace isodg;

TEST_SUITE("transport") {

TEST_CASE("constant problem is internally consistent") {
    Eigen::VectorXd omega(2);
    omega << 1.0, 0.0;
    const TransportProblem problem = make_constant_problem(2, omega);
    CHECK_NOTHROW(problem.validate());
    Eigen::VectorXd x(2);
    x << 0.2, 0.7;
    CHECK(problem.sigma(x) == doctest::Approx(1.0));
    CHECK(problem.source(x) == doctest::Approx(1.0));
    CHECK(problem.inflow(x) == doctest::Approx(1.0));
    CHECK(problem.exact(x) == doctest::Approx(1.0));
}

TEST_CASE("2D benchmark problem satisfies its own equation") {
    const TransportProblem problem = make_disc2d_problem();
    CHECK_NOTHROW(problem.validate());
    CHECK(problem.direction.size() == 2);
    CHECK(problem.direction.norm() == doctest::Approx(1.0).epsilon(1e-14));
    // spot check: f = Omega . grad I + sigma I at one point
    Eigen::VectorXd x(2);
    x << 0.1, -0.2;
    const double manual =
        problem.direction.dot(problem.exact_grad(x)) + problem.sigma(x) * problem.exact(x);
    CHECK(problem.source(x) == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("3D benchmark problem satisfies its own equation") {
    const TransportProblem problem = make_ball3d_problem();
    CHECK_NOTHROW(problem.validate());
    CHECK(problem.direction.size() == 3);
    Eigen::VectorXd x(3);
    x << 0.3, -0.1, 0.4;
    const double manual =
        problem.direction.dot(problem.exact_grad(x)) + problem.sigma(x) * problem.exact(x);
    CHECK(problem.source(x) == doctest::Approx(manual).epsilon(1e-12));
    // inflow data agrees with the exact solution trace
    CHECK(problem.inflow(x) == doctest::Approx(problem.exact(x)));
}

TEST_CASE("polynomial problems validate for all supported degrees") {
    Eigen::VectorXd omega2(2);
    omega2 << std::sqrt(3.0) / 2.0, 0.5;
    Eigen::VectorXd omega3 = Eigen::VectorXd::Constant(3, 1.0 / std::sqrt(3.0));
    for (int degree = 0; degree <= 4; ++degree) {
        CHECK_NOTHROW(make_polynomial_problem(2, degree, omega2).validate());
        CHECK_NOTHROW(make_polynomial_problem(3, degree, omega3).validate());
    }
}

TEST_CASE("non-unit directions are rejected") {
    Eigen::VectorXd omega(2);
    omega << 1.0, 1.0;
    const TransportProblem problem = make_constant_problem(2, omega.normalized());
    CHECK_NOTHROW(problem.validate());
    TransportProblem bad = problem;
    bad.direction = omega;
    CHECK_THROWS_AS(bad.validate(), NonUnitDirection);
}

TEST_CASE("manufactured builder derives source and inflow from the solution") {
    Eigen::VectorXd omega(2);
    omega << 0.0, 1.0;
    const TransportProblem problem = make_manufactured_problem(
        omega, [](const Eigen::VectorXd&) { return 2.0; },
        [](const Eigen::VectorXd& x) { return x(0) * x(0) + 3.0 * x(1); },
        [](const Eigen::VectorXd& x) {
            Eigen::VectorXd g(2);
            g << 2.0 * x(0), 3.0;
            return g;
        });
    CHECK_NOTHROW(problem.validate());
    Eigen::VectorXd x(2);
    x << 0.5, -0.25;
    // f = dI/dy + 2 I
    CHECK(problem.source(x) == doctest::Approx(3.0 + 2.0 * (0.25 - 0.75)));
    CHECK(problem.inflow(x) == doctest::Approx(problem.exact(x)));
}

} // TEST_SUITE
