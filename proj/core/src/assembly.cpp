#include "isodg/assembly.hpp"

#include <thread>
#include <vector>

#include "isodg/quadrature.hpp"

namespace isodg {

namespace {

constexpr double kCharacteristicEps = 1e-14;

int default_volume_exactness(const DGSpace& space) {
    return 3 * std::max(space.degree(), space.map().degree());
}

// Element-local vertex index of canonical face vertex m for the given side.
int side_local_vertex(const Face& face, bool left, int m, int dim) {
    const int local_face = left ? face.left_local : face.right_local;
    const int p = left ? face.left_perm[m] : face.right_perm[m];
    (void)dim;
    return p < local_face ? p : p + 1;
}

Eigen::VectorXd embed_facet_point(const Mesh& mesh, const Face& face, bool left,
                                  const Eigen::VectorXd& mu) {
    const int d = mesh.dim;
    const Eigen::MatrixXd verts = ReferenceElement::simplex_vertices(d);
    Eigen::VectorXd xhat = Eigen::VectorXd::Zero(d);
    double lambda0 = 1.0;
    for (int m = 1; m < d; ++m) {
        lambda0 -= mu(m - 1);
        xhat += mu(m - 1) * verts.row(side_local_vertex(face, left, m, d)).transpose();
    }
    xhat += lambda0 * verts.row(side_local_vertex(face, left, 0, d)).transpose();
    return xhat;
}

double facet_embedding_scale(int dim, int local_face) {
    // unit (d-1)-simplex measure is 1/(d-1)!
    double factorial = 1.0;
    for (int k = 2; k <= dim - 1; ++k) factorial *= k;
    return ReferenceElement::face_measure(dim, local_face) * factorial;
}

void parallel_for(int count, int threads, const std::function<void(int, int)>& body) {
    if (threads <= 1 || count < 2 * threads) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int begin = t * chunk;
        const int end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(body, begin, end);
    }
    for (auto& th : pool) th.join();
}

// Per-face contribution buffers; merged serially so assembly stays
// deterministic under any thread count.
struct FaceContrib {
    Eigen::MatrixXd ll, lr, rr, rl;
    Eigen::VectorXd rhs_left;
    bool coupled = false;

    void ensure(Eigen::MatrixXd& m, int n) {
        if (m.size() == 0) m = Eigen::MatrixXd::Zero(n, n);
    }
};

} // namespace

FacePointKind classify_face_point(const Eigen::VectorXd& direction, const SurfaceFrame& frame) {
    const double wn = direction.dot(frame.normal);
    if (wn < -kCharacteristicEps) return FacePointKind::Inflow;
    if (wn > kCharacteristicEps) return FacePointKind::Outflow;
    return FacePointKind::Characteristic;
}

FacePoint evaluate_face_point(const GeometricMap& map, const Face& face,
                              const Eigen::VectorXd& mu, double w) {
    const Mesh& mesh = map.mesh();
    FacePoint fp;
    fp.xhat_left = embed_facet_point(mesh, face, true, mu);
    if (!face.boundary()) fp.xhat_right = embed_facet_point(mesh, face, false, mu);
    fp.frame = map.surface_frame(face.left_elem, face.left_local, fp.xhat_left);
    fp.xphys = map.map_point(face.left_elem, fp.xhat_left);
    fp.weight = w * facet_embedding_scale(mesh.dim, face.left_local) * fp.frame.scale;
    return fp;
}

SparseSystem assemble(const DGSpace& space, const TransportProblem& problem,
                      const AssemblyOptions& options) {
    problem.validate();

    const Mesh& mesh = space.mesh();
    const GeometricMap& map = space.map();
    const GeometricMap& data = options.data_map ? *options.data_map : map;
    const ReferenceElement& basis = space.basis();
    const int d = mesh.dim;
    const int n = space.block_size();
    const Eigen::VectorXd& omega = problem.direction;

    const int vol_ex = options.volume_exactness >= 0 ? options.volume_exactness
                                                     : default_volume_exactness(space);
    const int face_ex = options.face_exactness >= 0 ? options.face_exactness : vol_ex + 1;

    const QuadratureRule vol = volume_quadrature(d, vol_ex);
    const QuadratureRule facet = volume_quadrature(d - 1, face_ex);

    // Basis tables at the volume points.
    std::vector<Eigen::VectorXd> psi(vol.size());
    std::vector<Eigen::MatrixXd> gpsi(vol.size());
    for (int q = 0; q < vol.size(); ++q) {
        const Eigen::VectorXd x = vol.points.row(q).transpose();
        psi[q] = basis.eval(x);
        gpsi[q] = basis.grad(x);
    }

    // Volume terms: each element writes only its own block.
    std::vector<Eigen::MatrixXd> vol_blocks(mesh.num_elements());
    std::vector<Eigen::VectorXd> vol_rhs(mesh.num_elements());
    parallel_for(mesh.num_elements(), options.threads, [&](int begin, int end) {
        for (int e = begin; e < end; ++e) {
            Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
            for (int q = 0; q < vol.size(); ++q) {
                const Eigen::VectorXd xhat = vol.points.row(q).transpose();
                double det = 0.0;
                const Eigen::MatrixXd J = map.jacobian(e, xhat, &det);
                const Eigen::VectorXd omega_hat = J.partialPivLu().solve(omega);
                const Eigen::VectorXd advect = gpsi[q] * omega_hat;
                const Eigen::VectorXd x = data.map_point(e, xhat);
                const double w = vol.weights(q) * det;
                block.noalias() +=
                    w * psi[q] * (advect + problem.sigma(x) * psi[q]).transpose();
                rhs.noalias() += (w * problem.source(x)) * psi[q];
            }
            vol_blocks[e] = std::move(block);
            vol_rhs[e] = std::move(rhs);
        }
    });

    // Face terms: per-face buffers, merged afterwards.
    std::vector<FaceContrib> contribs(mesh.num_faces());
    parallel_for(mesh.num_faces(), options.threads, [&](int begin, int end) {
        for (int fi = begin; fi < end; ++fi) {
            const Face& face = mesh.faces[fi];
            FaceContrib& fc = contribs[fi];
            for (int q = 0; q < facet.size(); ++q) {
                const FacePoint fp = evaluate_face_point(map, face,
                                                         facet.points.row(q).transpose(),
                                                         facet.weights(q));
                const double wn = omega.dot(fp.frame.normal);
                if (std::abs(wn) <= kCharacteristicEps) continue;

                const Eigen::VectorXd psi_l = basis.eval(fp.xhat_left);
                if (face.boundary()) {
                    if (wn < 0.0) {
                        fc.ensure(fc.ll, n);
                        fc.ll.noalias() += (-wn * fp.weight) * psi_l * psi_l.transpose();
                        if (fc.rhs_left.size() == 0) fc.rhs_left = Eigen::VectorXd::Zero(n);
                        fc.rhs_left.noalias() +=
                            (-wn * fp.weight *
                             problem.inflow(data.map_point(face.left_elem, fp.xhat_left))) *
                            psi_l;
                    }
                    continue;
                }

                const Eigen::VectorXd psi_r = basis.eval(fp.xhat_right);
                fc.coupled = true;
                if (wn < 0.0) {
                    // face is upwinded from the right: left element takes the jump
                    fc.ensure(fc.ll, n);
                    fc.ensure(fc.lr, n);
                    fc.ll.noalias() += (-wn * fp.weight) * psi_l * psi_l.transpose();
                    fc.lr.noalias() += (wn * fp.weight) * psi_l * psi_r.transpose();
                } else {
                    fc.ensure(fc.rr, n);
                    fc.ensure(fc.rl, n);
                    fc.rr.noalias() += (wn * fp.weight) * psi_r * psi_r.transpose();
                    fc.rl.noalias() += (-wn * fp.weight) * psi_r * psi_l.transpose();
                }
            }
        }
    });

    // Deterministic merge.
    SparseSystem system;
    system.block_size = n;
    system.rhs = Eigen::VectorXd::Zero(space.ndof());

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(mesh.num_elements() + mesh.num_faces()) * n * n);

    auto push_block = [&](int row_elem, int col_elem, const Eigen::MatrixXd& block) {
        const int r0 = space.offset(row_elem);
        const int c0 = space.offset(col_elem);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                triplets.emplace_back(r0 + i, c0 + j, block(i, j));
            }
        }
    };

    for (int e = 0; e < mesh.num_elements(); ++e) {
        push_block(e, e, vol_blocks[e]);
        system.rhs.segment(space.offset(e), n) += vol_rhs[e];
    }
    for (int fi = 0; fi < mesh.num_faces(); ++fi) {
        const Face& face = mesh.faces[fi];
        const FaceContrib& fc = contribs[fi];
        if (fc.ll.size()) push_block(face.left_elem, face.left_elem, fc.ll);
        if (fc.lr.size()) push_block(face.left_elem, face.right_elem, fc.lr);
        if (fc.rr.size()) push_block(face.right_elem, face.right_elem, fc.rr);
        if (fc.rl.size()) push_block(face.right_elem, face.left_elem, fc.rl);
        if (fc.rhs_left.size()) system.rhs.segment(space.offset(face.left_elem), n) += fc.rhs_left;
        if (fc.coupled) ++system.coupled_faces;
    }

    system.matrix.resize(space.ndof(), space.ndof());
    system.matrix.setFromTriplets(triplets.begin(), triplets.end());
    system.matrix.makeCompressed();
    return system;
}

double apply_bilinear(const DGSpace& space, const TransportProblem& problem,
                      const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                      const AssemblyOptions& options) {
    const Mesh& mesh = space.mesh();
    const GeometricMap& map = space.map();
    const ReferenceElement& basis = space.basis();
    const int d = mesh.dim;
    const int n = space.block_size();
    const Eigen::VectorXd& omega = problem.direction;

    const int vol_ex = options.volume_exactness >= 0 ? options.volume_exactness
                                                     : default_volume_exactness(space);
    const int face_ex = options.face_exactness >= 0 ? options.face_exactness : vol_ex + 1;
    const QuadratureRule vol = volume_quadrature(d, vol_ex);
    const QuadratureRule facet = volume_quadrature(d - 1, face_ex);

    double value = 0.0;

    // Volume: (sigma v - Omega . grad v) u
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto ue = u.segment(space.offset(e), n);
        const auto ve = v.segment(space.offset(e), n);
        for (int q = 0; q < vol.size(); ++q) {
            const Eigen::VectorXd xhat = vol.points.row(q).transpose();
            double det = 0.0;
            const Eigen::MatrixXd J = map.jacobian(e, xhat, &det);
            const Eigen::VectorXd omega_hat = J.partialPivLu().solve(omega);
            const Eigen::VectorXd psi = basis.eval(xhat);
            const Eigen::VectorXd advect = basis.grad(xhat) * omega_hat;
            const Eigen::VectorXd x = map.map_point(e, xhat);
            const double uval = psi.dot(ue);
            value += vol.weights(q) * det *
                     (problem.sigma(x) * psi.dot(ve) - advect.dot(ve)) * uval;
        }
    }

    // Faces: outflow boundary term and the upwinded interior jump of v.
    for (const Face& face : mesh.faces) {
        for (int q = 0; q < facet.size(); ++q) {
            const FacePoint fp =
                evaluate_face_point(map, face, facet.points.row(q).transpose(), facet.weights(q));
            const double wn = omega.dot(fp.frame.normal);
            if (std::abs(wn) <= kCharacteristicEps) continue;

            const Eigen::VectorXd psi_l = basis.eval(fp.xhat_left);
            const double ul = psi_l.dot(u.segment(space.offset(face.left_elem), n));
            const double vl = psi_l.dot(v.segment(space.offset(face.left_elem), n));

            if (face.boundary()) {
                if (wn > 0.0) value += fp.weight * wn * ul * vl;
                continue;
            }

            const Eigen::VectorXd psi_r = basis.eval(fp.xhat_right);
            const double ur = psi_r.dot(u.segment(space.offset(face.right_elem), n));
            const double vr = psi_r.dot(v.segment(space.offset(face.right_elem), n));
            if (wn < 0.0) {
                // inflow for the left element: (Omega . n)[v] u^-
                value += fp.weight * wn * (vl - vr) * ur;
            } else {
                value += fp.weight * (-wn) * (vr - vl) * ul;
            }
        }
    }
    return value;
}

StabilityReport stability_check(const DGSpace& space, const TransportProblem& problem,
                                const Eigen::VectorXd& solution,
                                const AssemblyOptions& options) {
    const Mesh& mesh = space.mesh();
    const GeometricMap& map = space.map();
    const GeometricMap& data = options.data_map ? *options.data_map : map;
    const ReferenceElement& basis = space.basis();
    const int d = mesh.dim;
    const int n = space.block_size();
    const Eigen::VectorXd& omega = problem.direction;

    const int vol_ex = options.volume_exactness >= 0 ? options.volume_exactness
                                                     : default_volume_exactness(space) + 2;
    const int face_ex = options.face_exactness >= 0 ? options.face_exactness : vol_ex + 1;
    const QuadratureRule vol = volume_quadrature(d, vol_ex);
    const QuadratureRule facet = volume_quadrature(d - 1, face_ex);

    StabilityReport report;

    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto coeffs = solution.segment(space.offset(e), n);
        for (int q = 0; q < vol.size(); ++q) {
            const Eigen::VectorXd xhat = vol.points.row(q).transpose();
            double det = 0.0;
            map.jacobian(e, xhat, &det);
            const Eigen::VectorXd x = data.map_point(e, xhat);
            const double ih = basis.eval(xhat).dot(coeffs);
            const double f = problem.source(x);
            const double w = vol.weights(q) * det;
            report.solution_energy += w * problem.sigma(x) * ih * ih;
            report.data_energy += w * f * f;
        }
    }

    for (const Face& face : mesh.faces) {
        for (int q = 0; q < facet.size(); ++q) {
            const FacePoint fp =
                evaluate_face_point(map, face, facet.points.row(q).transpose(), facet.weights(q));
            const double wn = omega.dot(fp.frame.normal);
            if (std::abs(wn) <= kCharacteristicEps) continue;

            const Eigen::VectorXd psi_l = basis.eval(fp.xhat_left);
            const double il = psi_l.dot(solution.segment(space.offset(face.left_elem), n));

            if (face.boundary()) {
                if (wn < 0.0) {
                    report.solution_energy += fp.weight * (-wn) * il * il;
                    const double g = problem.inflow(data.map_point(face.left_elem, fp.xhat_left));
                    report.data_energy += fp.weight * g * g;
                } else {
                    report.solution_energy += fp.weight * wn * il * il;
                }
                continue;
            }

            const Eigen::VectorXd psi_r = basis.eval(fp.xhat_right);
            const double ir = psi_r.dot(solution.segment(space.offset(face.right_elem), n));
            const double jump = il - ir;
            report.solution_energy += fp.weight * std::abs(wn) * jump * jump;
        }
    }

    report.ratio = report.data_energy > 0.0 ? report.solution_energy / report.data_energy : 0.0;
    return report;
}

} // namespace isodg
