#include <doctest.h>

#include <cmath>

#include <isodg/analysis.hpp>
#include <isodg/study.hpp>

using namespace isodg;

TEST_SUITE("analysis") {

TEST_CASE("rates recover the order for exactly halved errors") {
    // dim 2: quadrupling ndof halves h; errors falling by 4 mean order 2
    const std::vector<double> errors = {1.0, 0.25, 0.0625};
    const std::vector<int> ndofs = {100, 400, 1600};
    const std::vector<double> rates = convergence_rates(errors, ndofs, 2);
    REQUIRE(rates.size() == 3);
    CHECK(std::isnan(rates[0]));
    CHECK(rates[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rates[2] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("reference row pair reproduces the expected rate") {
    const std::vector<double> errors = {3.3747e-3, 4.5822e-4};
    const std::vector<int> ndofs = {192, 714};
    const std::vector<double> rates = convergence_rates(errors, ndofs, 2);
    CHECK(std::abs(rates[1] - 3.04) <= 0.01);
}

TEST_CASE("rates are invariant under error rescaling") {
    const std::vector<double> errors = {2.0e-1, 3.1e-2, 4.7e-3};
    const std::vector<int> ndofs = {64, 256, 1024};
    const std::vector<double> base = convergence_rates(errors, ndofs, 2);
    std::vector<double> scaled = errors;
    for (double& e : scaled) e *= 7.25;
    const std::vector<double> again = convergence_rates(scaled, ndofs, 2);
    for (std::size_t i = 1; i < base.size(); ++i) {
        CHECK(again[i] == doctest::Approx(base[i]).epsilon(1e-12));
    }
}

TEST_CASE("mismatched or nonpositive inputs are rejected") {
    CHECK_THROWS_AS(convergence_rates({1.0, 0.5}, {10, 20, 40}, 2), LengthMismatch);
    CHECK_THROWS_AS(convergence_rates({1.0, 0.0}, {10, 20}, 2), NonpositiveError);
    CHECK_THROWS_AS(convergence_rates({1.0, -0.5}, {10, 20}, 2), NonpositiveError);
}

TEST_CASE("fitted order recovers the slope of a clean decay") {
    CHECK(fitted_order({1.0, 0.125, 0.015625}) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fitted_order({4.0, 2.0, 1.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("projection reproduces polynomials of the space's own degree") {
    const Mesh mesh = generate_square_mesh(1);
    const GeometricMap map = build_isoparametric_map(mesh, 1, DomainGeometry::polygonal(2));
    for (int degree : {1, 2, 3}) {
        const DGSpace space(mesh, map, degree);
        Eigen::VectorXd omega(2);
        omega << 1.0, 0.0;
        const TransportProblem problem = make_polynomial_problem(2, degree, omega);
        const Eigen::VectorXd coeffs = project_to_space(space, problem.exact);
        CHECK(l2_error(space, problem, coeffs) <= 1e-11);
        CHECK(dg_error(space, problem, coeffs) <= 1e-10);
    }
}

TEST_CASE("error norms require an exact solution") {
    const Mesh mesh = generate_square_mesh(0);
    const GeometricMap map = build_isoparametric_map(mesh, 1, DomainGeometry::polygonal(2));
    const DGSpace space(mesh, map, 1);
    Eigen::VectorXd omega(2);
    omega << 1.0, 0.0;
    TransportProblem problem = make_constant_problem(2, omega);
    problem.exact = nullptr;
    problem.exact_grad = nullptr;
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(space.ndof());
    CHECK_THROWS_AS(l2_error(space, problem, zero), MissingExactSolution);
    CHECK_THROWS_AS(dg_error(space, problem, zero), MissingExactSolution);
}

TEST_CASE("dg error dominates the weighted l2 error") {
    // the DG norm contains the sigma-weighted L2 norm as one of its terms
    const DomainGeometry geometry = DomainGeometry::circle(Eigen::Vector2d::Zero(), 0.5);
    const Mesh mesh = generate_disc_mesh(1, geometry);
    const GeometricMap map = build_isoparametric_map(mesh, 2, geometry);
    const DGSpace space(mesh, map, 2);
    const TransportProblem problem = make_disc2d_problem();
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(space.ndof());
    CHECK(dg_error(space, problem, zero) >= l2_error(space, problem, zero));
}

} // TEST_SUITE
