#include <doctest.h>

#include <cmath>

#include <isodg/assembly.hpp>
#include <isodg/geometric_map.hpp>
#include <isodg/mesh.hpp>
#include <isodg/study.hpp>

using namespace isodg;

namespace {

DomainGeometry disc_geometry() {
    return DomainGeometry::circle(Eigen::Vector2d::Zero(), 0.5);
}

// Element-local vertex index of canonical face vertex m for one side, per the
// documented Face orientation contract.
int side_local_vertex(const Face& face, bool left, int m) {
    const int local_face = left ? face.left_local : face.right_local;
    const int p = left ? face.left_perm[m] : face.right_perm[m];
    return p < local_face ? p : p + 1;
}

Eigen::VectorXd embed(const Mesh& mesh, const Face& face, bool left,
                      const Eigen::VectorXd& bary) {
    const Eigen::MatrixXd verts = ReferenceElement::simplex_vertices(mesh.dim);
    Eigen::VectorXd xhat = Eigen::VectorXd::Zero(mesh.dim);
    for (int m = 0; m < mesh.dim; ++m) {
        xhat += bary(m) * verts.row(side_local_vertex(face, left, m)).transpose();
    }
    return xhat;
}

} // namespace

TEST_SUITE("geometric_map") {

TEST_CASE("polygonal geometry yields the affine map for any degree") {
    const Mesh mesh = generate_square_mesh(1);
    const GeometricMap map = build_isoparametric_map(mesh, 3, DomainGeometry::polygonal(2));
    Eigen::VectorXd xhat(2);
    xhat << 0.3, 0.4;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        CHECK(map.element_affine(e));
        // map agrees with the straight vertex interpolation
        const Eigen::MatrixXd J = mesh.affine_jacobian(e);
        const Eigen::VectorXd expected =
            mesh.vertex(mesh.elements[e][0]) + J * xhat;
        CHECK((map.map_point(e, xhat) - expected).norm() < 1e-14);
        double det = 0.0;
        const Eigen::MatrixXd Jm = map.jacobian(e, xhat, &det);
        CHECK((Jm - J).norm() < 1e-14);
        CHECK(det == doctest::Approx(mesh.affine_det(e)));
    }
}

TEST_CASE("vertex control points equal the straight mesh vertices") {
    const DomainGeometry geometry = disc_geometry();
    const Mesh mesh = generate_disc_mesh(1, geometry);
    const GeometricMap map = build_isoparametric_map(mesh, 3, geometry);
    const Eigen::MatrixXd verts = ReferenceElement::simplex_vertices(2);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        for (int v = 0; v < 3; ++v) {
            const Eigen::VectorXd image = map.map_point(e, verts.row(v).transpose());
            CHECK((image - mesh.vertex(mesh.elements[e][v])).norm() < 1e-13);
        }
    }
}

TEST_CASE("elements without boundary faces stay affine, boundary elements curve") {
    const DomainGeometry geometry = disc_geometry();
    const Mesh mesh = generate_disc_mesh(2, geometry);
    const GeometricMap map = build_isoparametric_map(mesh, 2, geometry);

    std::vector<bool> touches_boundary(mesh.num_elements(), false);
    for (int bf : mesh.boundary_faces) touches_boundary[mesh.faces[bf].left_elem] = true;

    int curved = 0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        if (!touches_boundary[e]) CHECK(map.element_affine(e));
        if (!map.element_affine(e)) ++curved;
    }
    CHECK(curved == static_cast<int>(mesh.boundary_faces.size()));
}

TEST_CASE("mapped boundary nodes sit on the exact circle") {
    const DomainGeometry geometry = disc_geometry();
    const Mesh mesh = generate_disc_mesh(1, geometry);
    const GeometricMap map = build_isoparametric_map(mesh, 3, geometry);
    const ReferenceElement& basis = map.basis();
    for (int bf : mesh.boundary_faces) {
        const Face& face = mesh.faces[bf];
        // every geometry node supported on the boundary face must be projected
        for (int i = 0; i < basis.size(); ++i) {
            const Eigen::VectorXd node = basis.nodes().row(i).transpose();
            const Eigen::VectorXd n = ReferenceElement::face_normal(2, face.left_local);
            const double offset = face.left_local == 0 ? 1.0 / std::sqrt(2.0) : 0.0;
            if (std::abs(n.dot(node) - offset) > 1e-12) continue; // not on the face
            const Eigen::VectorXd image = map.map_point(face.left_elem, node);
            CHECK(std::abs(geometry.phi(image)) < 1e-12);
        }
    }
}

TEST_CASE("the global map is continuous across interior faces to rounding") {
    // The two sides share bitwise-identical control points; only the basis
    // evaluation order differs, so the images agree to a few ulp.
    const DomainGeometry geometry = disc_geometry();
    const Mesh mesh = generate_disc_mesh(1, geometry);
    for (int degree : {2, 3}) {
        const GeometricMap map = build_isoparametric_map(mesh, degree, geometry);
        for (const Face& face : mesh.faces) {
            if (face.boundary()) continue;
            for (double t : {0.0, 0.125, 1.0 / 3.0, 0.5, 0.75, 1.0}) {
                Eigen::VectorXd bary(2);
                bary << 1.0 - t, t;
                const Eigen::VectorXd xl = embed(mesh, face, true, bary);
                const Eigen::VectorXd xr = embed(mesh, face, false, bary);
                const Eigen::VectorXd pl = map.map_point(face.left_elem, xl);
                const Eigen::VectorXd pr = map.map_point(face.right_elem, xr);
                CHECK((pl - pr).cwiseAbs().maxCoeff() < 1e-14);
            }
        }
    }
}

TEST_CASE("the 3D map is continuous across interior faces to rounding") {
    const DomainGeometry geometry = DomainGeometry::sphere(Eigen::Vector3d::Zero(), 1.0);
    const Mesh mesh = generate_ball_mesh(1, geometry);
    const GeometricMap map = build_isoparametric_map(mesh, 3, geometry);
    const double samples[4][3] = {
        {0.2, 0.3, 0.5}, {1.0, 0.0, 0.0}, {0.0, 0.5, 0.5}, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    for (const Face& face : mesh.faces) {
        if (face.boundary()) continue;
        for (const auto& s : samples) {
            Eigen::VectorXd bary(3);
            bary << s[0], s[1], s[2];
            const Eigen::VectorXd pl = map.map_point(face.left_elem, embed(mesh, face, true, bary));
            const Eigen::VectorXd pr =
                map.map_point(face.right_elem, embed(mesh, face, false, bary));
            CHECK((pl - pr).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("Jacobians match central finite differences on curved elements") {
    const DomainGeometry geometry = disc_geometry();
    const Mesh mesh = generate_disc_mesh(1, geometry);
    const GeometricMap map = build_isoparametric_map(mesh, 2, geometry);
    const int e = mesh.faces[mesh.boundary_faces[0]].left_elem;
    Eigen::VectorXd xhat(2);
    xhat << 0.3, 0.3;
    const Eigen::MatrixXd J = map.jacobian(e, xhat);
    const double h = 1e-6;
    for (int c = 0; c < 2; ++c) {
        Eigen::VectorXd xp = xhat, xm = xhat;
        xp(c) += h;
        xm(c) -= h;
        const Eigen::VectorXd fd = (map.map_point(e, xp) - map.map_point(e, xm)) / (2.0 * h);
        CHECK((J.col(c) - fd).norm() < 1e-6 * std::max(1.0, J.col(c).norm()));
    }
}

TEST_CASE("Jacobian determinants are positive at quadrature points") {
    const DomainGeometry geometry = disc_geometry();
    const Mesh mesh = generate_disc_mesh(2, geometry);
    const GeometricMap map = build_isoparametric_map(mesh, 3, geometry);
    Eigen::VectorXd xhat(2);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        for (double a : {0.1, 0.45}) {
            for (double b : {0.1, 0.45}) {
                xhat << a, b;
                double det = 0.0;
                map.jacobian(e, xhat, &det);
                CHECK(det > 0.0);
            }
        }
    }
}

TEST_CASE("affine surface frames match the straight face geometry") {
    const Mesh mesh = generate_square_mesh(1);
    const GeometricMap map = build_isoparametric_map(mesh, 2, DomainGeometry::polygonal(2));
    for (const Face& face : mesh.faces) {
        Eigen::VectorXd bary(2);
        bary << 0.5, 0.5;
        const FacePoint fp = evaluate_face_point(map, face, bary.tail(1), 1.0);
        // outward normal from the straight face tangent, rotated to point away
        const Eigen::VectorXd a = mesh.vertex(face.vertices[0]);
        const Eigen::VectorXd b = mesh.vertex(face.vertices[1]);
        Eigen::VectorXd n(2);
        n << (b - a)(1), -(b - a)(0);
        n.normalize();
        const Eigen::VectorXd centroid =
            (mesh.vertex(mesh.elements[face.left_elem][0]) +
             mesh.vertex(mesh.elements[face.left_elem][1]) +
             mesh.vertex(mesh.elements[face.left_elem][2])) /
            3.0;
        if (n.dot((a + b) / 2.0 - centroid) < 0.0) n = -n;
        CHECK((fp.frame.normal - n).norm() < 1e-12);
        CHECK(fp.frame.normal.norm() == doctest::Approx(1.0));
    }
}

TEST_CASE("mapped measure of the straight disc mesh stays below the disc area") {
    const DomainGeometry geometry = disc_geometry();
    const Mesh mesh = generate_disc_mesh(3, geometry);
    const GeometricMap straight = build_isoparametric_map(mesh, 1, geometry);
    const double area = mapped_measure(straight, 6);
    const double pi_quarter = std::acos(-1.0) / 4.0;
    CHECK(area < pi_quarter);                 // inscribed polygon
    CHECK(area > pi_quarter - 5e-3);          // but close at level 3
    // the curved map closes most of the remaining gap
    const GeometricMap curved = build_isoparametric_map(mesh, 2, geometry);
    CHECK(std::abs(mapped_measure(curved, 8) - pi_quarter) <
          0.01 * (pi_quarter - area));
}

} // TEST_SUITE
