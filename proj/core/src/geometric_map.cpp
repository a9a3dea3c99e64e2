#include "isodg/geometric_map.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "isodg/quadrature.hpp"

namespace isodg {

namespace {

// Canonical (ascending global id) boundary edges and, in 3D, boundary faces.
struct BoundarySimplices {
    std::set<std::array<int, 2>> edges;
    std::set<std::array<int, 3>> faces;
};

BoundarySimplices boundary_subsimplices(const Mesh& mesh) {
    BoundarySimplices out;
    for (int bf : mesh.boundary_faces) {
        const auto& fv = mesh.faces[bf].vertices; // already ascending
        if (mesh.dim == 2) {
            out.edges.insert({fv[0], fv[1]});
        } else {
            out.faces.insert({fv[0], fv[1], fv[2]});
            out.edges.insert({fv[0], fv[1]});
            out.edges.insert({fv[0], fv[2]});
            out.edges.insert({fv[1], fv[2]});
        }
    }
    return out;
}

double pow_int(double base, int exponent) {
    double out = 1.0;
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

// Polynomial boundary displacement of one edge (a, b):
//
//   D_e(lambda) = sum_p  c_p * lambda_a * lambda_b^{p+1},   p = 0 .. k-2,
//
// the minimal-degree homogeneous extension of the degree-k interpolant of
// the exact edge displacement d(t) = P(chord(t)) - chord(t), written in the
// basis t^{p+1}(1-t). Minimal-degree homogenization matters: extending each
// basis monomial at its own degree keeps every derivative of the blend the
// same size as the corresponding derivative of the exact displacement, so
// the mapped elements form a regular isoparametric family. (Curving only
// the boundary nodes, or extending with one uniform degree-k prefactor,
// loses half an order of convergence for k >= 3.)
//
// The field vanishes identically when lambda_a or lambda_b is zero, so
// interior faces shared between elements stay bitwise consistent, and it
// reduces to the interpolated boundary curve on the edge itself.
struct EdgeBlend {
    std::vector<Eigen::VectorXd> coeffs; // c_p, p = 0 .. k-2

    Eigen::VectorXd eval(double la, double lb, int dim) const {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
        double factor = la * lb;
        for (const Eigen::VectorXd& c : coeffs) {
            out += factor * c;
            factor *= lb;
        }
        return out;
    }
};

EdgeBlend make_edge_blend(const DomainGeometry& geometry, int degree,
                          const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const int n = degree - 1; // interior edge nodes
    Eigen::MatrixXd basis(n, n);
    Eigen::MatrixXd disp(n, a.size());
    for (int j = 1; j <= n; ++j) {
        const double t = static_cast<double>(j) / degree;
        for (int p = 0; p < n; ++p) basis(j - 1, p) = pow_int(t, p + 1) * (1.0 - t);
        const Eigen::VectorXd node = (1.0 - t) * a + t * b;
        disp.row(j - 1) = (geometry.project(node) - node).transpose();
    }
    const Eigen::MatrixXd solved = basis.fullPivLu().solve(disp);
    EdgeBlend blend;
    for (int p = 0; p < n; ++p) blend.coeffs.push_back(solved.row(p).transpose());
    return blend;
}

// Face counterpart (3D): the residual displacement of the face-interior
// Lagrange nodes (projection minus what the three edge blends already
// supply), extended in the minimal-degree basis
// lambda_a lambda_b^{p+1} lambda_c^{q+1}, p + q <= k - 3.
struct FaceBlend {
    std::vector<std::pair<std::array<int, 2>, Eigen::VectorXd>> terms; // ((p,q), c)

    Eigen::VectorXd eval(double la, double lb, double lc, int dim) const {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
        for (const auto& [pq, c] : terms) {
            out += la * pow_int(lb, pq[0] + 1) * pow_int(lc, pq[1] + 1) * c;
        }
        return out;
    }
};

FaceBlend make_face_blend(const DomainGeometry& geometry, int degree,
                          const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& c, const EdgeBlend& eab,
                          const EdgeBlend& eac, const EdgeBlend& ebc) {
    FaceBlend blend;
    if (degree < 3) return blend; // no face-interior nodes

    std::vector<std::array<int, 2>> powers;
    for (int p = 0; p <= degree - 3; ++p) {
        for (int q = 0; p + q <= degree - 3; ++q) powers.push_back({p, q});
    }
    const int n = static_cast<int>(powers.size()); // = #face-interior nodes

    Eigen::MatrixXd basis(n, n);
    Eigen::MatrixXd residual(n, a.size());
    int row = 0;
    for (int ib = 1; ib <= degree - 2; ++ib) {
        for (int ic = 1; ib + ic <= degree - 1; ++ic) {
            const double mb = static_cast<double>(ib) / degree;
            const double mc = static_cast<double>(ic) / degree;
            const double ma = 1.0 - mb - mc;
            for (int col = 0; col < n; ++col) {
                basis(row, col) =
                    ma * pow_int(mb, powers[col][0] + 1) * pow_int(mc, powers[col][1] + 1);
            }
            const Eigen::VectorXd node = ma * a + mb * b + mc * c;
            Eigen::VectorXd delta = geometry.project(node) - node;
            delta -= eab.eval(ma, mb, static_cast<int>(a.size()));
            delta -= eac.eval(ma, mc, static_cast<int>(a.size()));
            delta -= ebc.eval(mb, mc, static_cast<int>(a.size()));
            residual.row(row++) = delta.transpose();
        }
    }
    const Eigen::MatrixXd solved = basis.fullPivLu().solve(residual);
    for (int col = 0; col < n; ++col) {
        blend.terms.emplace_back(powers[col], solved.row(col).transpose());
    }
    return blend;
}

} // namespace

GeometricMap::GeometricMap(const Mesh& mesh, int degree, const DomainGeometry& geometry,
                           int check_exactness)
    : mesh_(&mesh), geometry_(geometry), basis_(mesh.dim, degree) {
    if (degree < 1 || degree > 4) {
        throw UnsupportedDegree("GeometricMap: degree must be in [1, 4]");
    }

    const int d = mesh.dim;
    const int n = basis_.size();
    const bool curved = geometry.curved() && degree > 1;
    const BoundarySimplices bset =
        curved ? boundary_subsimplices(mesh) : BoundarySimplices{};

    control_.resize(mesh.num_elements());
    affine_.assign(mesh.num_elements(), 1);

    for (int e = 0; e < mesh.num_elements(); ++e) {
        // The element's boundary edges and faces in canonical (ascending
        // global id) order: local vertex indices plus the blend computed from
        // the canonical vertex ordering, so shared nodes agree bitwise.
        std::vector<std::pair<std::array<int, 2>, EdgeBlend>> bedges;
        std::vector<std::pair<std::array<int, 3>, FaceBlend>> bfaces;
        if (curved) {
            std::vector<std::pair<std::array<int, 2>, std::array<int, 2>>> edge_list;
            for (int u = 0; u <= d; ++u) {
                for (int v = u + 1; v <= d; ++v) {
                    std::array<int, 2> local{u, v};
                    std::array<int, 2> global{mesh.elements[e][u], mesh.elements[e][v]};
                    if (global[0] > global[1]) {
                        std::swap(global[0], global[1]);
                        std::swap(local[0], local[1]);
                    }
                    if (bset.edges.count(global)) edge_list.emplace_back(global, local);
                }
            }
            std::sort(edge_list.begin(), edge_list.end());
            for (const auto& [global, local] : edge_list) {
                bedges.emplace_back(local,
                                    make_edge_blend(geometry_, degree, mesh.vertex(global[0]),
                                                    mesh.vertex(global[1])));
            }

            if (d == 3) {
                std::vector<std::pair<std::array<int, 3>, std::array<int, 3>>> face_list;
                for (int f = 0; f < 4; ++f) {
                    std::array<int, 3> local{(f + 1) % 4, (f + 2) % 4, (f + 3) % 4};
                    std::array<int, 3> global{};
                    for (int m = 0; m < 3; ++m) global[m] = mesh.elements[e][local[m]];
                    for (int a = 0; a < 3; ++a) {
                        for (int b = a + 1; b < 3; ++b) {
                            if (global[a] > global[b]) {
                                std::swap(global[a], global[b]);
                                std::swap(local[a], local[b]);
                            }
                        }
                    }
                    if (bset.faces.count(global)) face_list.emplace_back(global, local);
                }
                std::sort(face_list.begin(), face_list.end());
                for (const auto& [global, local] : face_list) {
                    const Eigen::VectorXd a = mesh.vertex(global[0]);
                    const Eigen::VectorXd b = mesh.vertex(global[1]);
                    const Eigen::VectorXd c = mesh.vertex(global[2]);
                    bfaces.emplace_back(
                        local, make_face_blend(geometry_, degree, a, b, c,
                                               make_edge_blend(geometry_, degree, a, b),
                                               make_edge_blend(geometry_, degree, a, c),
                                               make_edge_blend(geometry_, degree, b, c)));
                }
            }
        }

        Eigen::MatrixXd pts(n, d);
        for (int i = 0; i < n; ++i) {
            const auto& mi = basis_.node_multi_index(i); // integers summing to k

            // Affine node position, accumulated in ascending global-vertex
            // order so shared nodes agree bitwise across elements.
            std::vector<std::pair<int, int>> terms; // (global id, local vertex)
            for (int v = 0; v <= d; ++v) {
                if (mi[v] > 0) terms.emplace_back(mesh.elements[e][v], v);
            }
            std::sort(terms.begin(), terms.end());
            Eigen::VectorXd pos = Eigen::VectorXd::Zero(d);
            for (const auto& [g, v] : terms) {
                pos += (static_cast<double>(mi[v]) / degree) * mesh.vertex(g);
            }

            // Transfinite boundary displacement: edge blends plus face
            // corrections. Curving only the boundary nodes is not enough for
            // k >= 3 (the interior nodes of boundary elements must follow),
            // and the blend reduces to the interpolated exact boundary on the
            // boundary sub-simplices themselves.
            Eigen::VectorXd disp = Eigen::VectorXd::Zero(d);
            for (const auto& [local, blend] : bedges) {
                disp += blend.eval(static_cast<double>(mi[local[0]]) / degree,
                                   static_cast<double>(mi[local[1]]) / degree, d);
            }
            for (const auto& [local, blend] : bfaces) {
                disp += blend.eval(static_cast<double>(mi[local[0]]) / degree,
                                   static_cast<double>(mi[local[1]]) / degree,
                                   static_cast<double>(mi[local[2]]) / degree, d);
            }
            if (disp.squaredNorm() > 0.0) {
                pos += disp;
                affine_[e] = 0;
            }
            pts.row(i) = pos.transpose();
        }
        control_[e] = std::move(pts);
    }

    // Positivity check on the assembly quadrature point set.
    const int exact = check_exactness >= 0 ? check_exactness : 3 * degree;
    const QuadratureRule rule = volume_quadrature(d, exact);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        for (int q = 0; q < rule.size(); ++q) {
            double det = 0.0;
            jacobian(e, rule.points.row(q).transpose(), &det);
            (void)det; // jacobian() throws on det <= 0
        }
    }
}

Eigen::VectorXd GeometricMap::map_point(int e, const Eigen::VectorXd& xhat) const {
    return control_[e].transpose() * basis_.eval(xhat);
}

Eigen::MatrixXd GeometricMap::jacobian(int e, const Eigen::VectorXd& xhat, double* det) const {
    const Eigen::MatrixXd J = control_[e].transpose() * basis_.grad(xhat);
    const double d = J.determinant();
    if (d <= 0.0) {
        throw DegenerateMap("GeometricMap: nonpositive Jacobian determinant in element " +
                            std::to_string(e));
    }
    if (det) *det = d;
    return J;
}

SurfaceFrame GeometricMap::surface_frame(int e, int face, const Eigen::VectorXd& xhat) const {
    double det = 0.0;
    const Eigen::MatrixXd J = jacobian(e, xhat, &det);

    SurfaceFrame frame;
    frame.ref_normal = ReferenceElement::face_normal(mesh_->dim, face);
    const Eigen::VectorXd w = J.transpose().partialPivLu().solve(frame.ref_normal);
    const double wn = w.norm();
    frame.normal = w / wn;
    frame.scale = det * wn;
    return frame;
}

GeometricMap build_isoparametric_map(const Mesh& mesh, int degree,
                                     const DomainGeometry& geometry) {
    return GeometricMap(mesh, degree, geometry);
}

double mapped_measure(const GeometricMap& map, int quadrature_exactness) {
    const QuadratureRule rule = volume_quadrature(map.dim(), quadrature_exactness);
    double total = 0.0;
    for (int e = 0; e < map.mesh().num_elements(); ++e) {
        for (int q = 0; q < rule.size(); ++q) {
            double det = 0.0;
            map.jacobian(e, rule.points.row(q).transpose(), &det);
            total += rule.weights(q) * det;
        }
    }
    return total;
}

} // namespace isodg
