#include "isodg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

namespace isodg {

namespace {

std::array<int, 3> sorted_key(std::array<int, 3> v) {
    std::sort(v.begin(), v.end(), [](int a, int b) {
        if (a < 0) return false; // keep -1 padding at the end
        if (b < 0) return true;
        return a < b;
    });
    return v;
}

struct KeyHash {
    std::size_t operator()(const std::array<int, 3>& k) const {
        std::size_t h = 1469598103934665603ull;
        for (int v : k) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace

std::array<int, 3> Mesh::local_face_vertices(int e, int f) const {
    std::array<int, 3> out{-1, -1, -1};
    int n = 0;
    for (int i = 0; i <= dim; ++i) {
        if (i == f) continue;
        out[n++] = elements[e][i];
    }
    return out;
}

Eigen::MatrixXd Mesh::affine_jacobian(int e) const {
    Eigen::MatrixXd J(dim, dim);
    const Eigen::VectorXd v0 = vertex(elements[e][0]);
    for (int j = 0; j < dim; ++j) {
        J.col(j) = vertex(elements[e][j + 1]) - v0;
    }
    return J;
}

double Mesh::affine_det(int e) const { return affine_jacobian(e).determinant(); }

double Mesh::element_diameter(int e) const {
    double d2 = 0.0;
    for (int i = 0; i <= dim; ++i) {
        for (int j = i + 1; j <= dim; ++j) {
            d2 = std::max(d2, (vertex(elements[e][i]) - vertex(elements[e][j])).squaredNorm());
        }
    }
    return std::sqrt(d2);
}

void build_connectivity(Mesh& mesh) {
    mesh.faces.clear();
    mesh.boundary_faces.clear();

    std::unordered_map<std::array<int, 3>, int, KeyHash> index;
    index.reserve(mesh.elements.size() * (mesh.dim + 1));

    for (int e = 0; e < mesh.num_elements(); ++e) {
        for (int f = 0; f <= mesh.dim; ++f) {
            const std::array<int, 3> local = mesh.local_face_vertices(e, f);
            const std::array<int, 3> key = sorted_key(local);

            // face.vertices[m] == local[perm[m]]
            std::array<int, 3> perm{0, 0, 0};
            for (int m = 0; m < mesh.dim; ++m) {
                for (int p = 0; p < mesh.dim; ++p) {
                    if (local[p] == key[m]) { perm[m] = p; break; }
                }
            }

            auto it = index.find(key);
            if (it == index.end()) {
                Face face;
                face.vertices = key;
                face.left_elem = e;
                face.left_local = f;
                face.left_perm = perm;
                index.emplace(key, static_cast<int>(mesh.faces.size()));
                mesh.faces.push_back(face);
            } else {
                Face& face = mesh.faces[it->second];
                if (face.right_elem >= 0) {
                    throw InvalidMesh("build_connectivity: face shared by more than two elements");
                }
                face.right_elem = e;
                face.right_local = f;
                face.right_perm = perm;
            }
        }
    }

    for (int i = 0; i < mesh.num_faces(); ++i) {
        if (mesh.faces[i].boundary()) mesh.boundary_faces.push_back(i);
    }
}

void fix_orientation(Mesh& mesh) {
    for (int e = 0; e < mesh.num_elements(); ++e) {
        if (mesh.affine_det(e) < 0.0) {
            std::swap(mesh.elements[e][mesh.dim - 1], mesh.elements[e][mesh.dim]);
        }
    }
}

void validate_mesh(const Mesh& mesh, const DomainGeometry* geometry) {
    if (mesh.dim != 2 && mesh.dim != 3) throw InvalidMesh("validate_mesh: dim must be 2 or 3");
    if (mesh.num_elements() == 0) throw InvalidMesh("validate_mesh: empty element list");

    for (const auto& elem : mesh.elements) {
        for (int i = 0; i <= mesh.dim; ++i) {
            if (elem[i] < 0 || elem[i] >= mesh.num_vertices()) {
                throw DanglingVertexReference("validate_mesh: element references missing vertex");
            }
        }
    }

    for (int e = 0; e < mesh.num_elements(); ++e) {
        if (mesh.affine_det(e) <= 0.0) {
            throw InvalidMesh("validate_mesh: nonpositive affine Jacobian determinant");
        }
    }

    // Duplicate vertices within 1e-12: bucket by rounded coordinates and
    // compare within neighboring buckets.
    {
        const double cell = 1e-9;
        std::map<std::array<std::int64_t, 3>, std::vector<int>> buckets;
        for (int v = 0; v < mesh.num_vertices(); ++v) {
            std::array<std::int64_t, 3> key{0, 0, 0};
            for (int c = 0; c < mesh.dim; ++c) {
                key[c] = static_cast<std::int64_t>(std::floor(mesh.vertices(v, c) / cell));
            }
            buckets[key].push_back(v);
        }
        for (const auto& [key, ids] : buckets) {
            (void)key;
            for (std::size_t i = 0; i < ids.size(); ++i) {
                for (std::size_t j = i + 1; j < ids.size(); ++j) {
                    if ((mesh.vertex(ids[i]) - mesh.vertex(ids[j])).norm() <= 1e-12) {
                        throw InvalidMesh("validate_mesh: duplicate vertices");
                    }
                }
            }
        }
    }

    // Face handshake comes for free from the canonical key; still verify the
    // stored permutations reproduce the canonical tuple.
    for (const Face& face : mesh.faces) {
        const auto lv = mesh.local_face_vertices(face.left_elem, face.left_local);
        for (int m = 0; m < mesh.dim; ++m) {
            if (lv[face.left_perm[m]] != face.vertices[m]) {
                throw InvalidMesh("validate_mesh: left orientation permutation mismatch");
            }
        }
        if (!face.boundary()) {
            const auto rv = mesh.local_face_vertices(face.right_elem, face.right_local);
            for (int m = 0; m < mesh.dim; ++m) {
                if (rv[face.right_perm[m]] != face.vertices[m]) {
                    throw InvalidMesh("validate_mesh: right orientation permutation mismatch");
                }
            }
        }
    }

    // Connectedness via element adjacency.
    {
        std::vector<std::vector<int>> adj(mesh.num_elements());
        for (const Face& face : mesh.faces) {
            if (!face.boundary()) {
                adj[face.left_elem].push_back(face.right_elem);
                adj[face.right_elem].push_back(face.left_elem);
            }
        }
        std::vector<char> seen(mesh.num_elements(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int count = 0;
        while (!q.empty()) {
            const int e = q.front();
            q.pop();
            ++count;
            for (int n : adj[e]) {
                if (!seen[n]) { seen[n] = 1; q.push(n); }
            }
        }
        if (count != mesh.num_elements()) throw InvalidMesh("validate_mesh: mesh is not connected");
    }

    if (geometry != nullptr && geometry->curved()) {
        std::set<int> bverts;
        for (int bf : mesh.boundary_faces) {
            for (int m = 0; m < mesh.dim; ++m) bverts.insert(mesh.faces[bf].vertices[m]);
        }
        for (int v : bverts) {
            if (std::abs(geometry->phi(mesh.vertex(v))) > 1e-12) {
                throw InvalidMesh("validate_mesh: boundary vertex off the exact boundary");
            }
        }
    }
}

double diameter_ratio(const Mesh& mesh) {
    double lo = std::numeric_limits<double>::max();
    double hi = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double d = mesh.element_diameter(e);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return hi / lo;
}

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// Set of boundary edges: all vertex pairs contained in some boundary face.
std::set<EdgeKey> boundary_edges(const Mesh& mesh) {
    std::set<EdgeKey> edges;
    for (int bf : mesh.boundary_faces) {
        const auto& fv = mesh.faces[bf].vertices;
        if (mesh.dim == 2) {
            edges.insert(edge_key(fv[0], fv[1]));
        } else {
            edges.insert(edge_key(fv[0], fv[1]));
            edges.insert(edge_key(fv[0], fv[2]));
            edges.insert(edge_key(fv[1], fv[2]));
        }
    }
    return edges;
}

} // namespace

Mesh refine_mesh(const Mesh& mesh, const DomainGeometry& geometry) {
    const int d = mesh.dim;
    const std::set<EdgeKey> bedges = boundary_edges(mesh);

    Mesh fine;
    fine.dim = d;

    std::vector<Eigen::VectorXd> verts;
    verts.reserve(mesh.num_vertices() * 4);
    for (int v = 0; v < mesh.num_vertices(); ++v) verts.push_back(mesh.vertex(v));

    std::map<EdgeKey, int> midpoint;
    auto mid = [&](int a, int b) {
        const EdgeKey key = edge_key(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        Eigen::VectorXd m = 0.5 * (verts[key.first] + verts[key.second]);
        if (geometry.curved() && bedges.count(key)) {
            m = geometry.project(m);
        }
        const int id = static_cast<int>(verts.size());
        verts.push_back(m);
        midpoint.emplace(key, id);
        return id;
    };

    if (d == 2) {
        for (const auto& t : mesh.elements) {
            const int a = t[0], b = t[1], c = t[2];
            const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
            fine.elements.push_back({a, ab, ca, -1});
            fine.elements.push_back({ab, b, bc, -1});
            fine.elements.push_back({ca, bc, c, -1});
            fine.elements.push_back({ab, bc, ca, -1});
        }
    } else {
        for (const auto& t : mesh.elements) {
            const int v0 = t[0], v1 = t[1], v2 = t[2], v3 = t[3];
            const int m01 = mid(v0, v1), m02 = mid(v0, v2), m03 = mid(v0, v3);
            const int m12 = mid(v1, v2), m13 = mid(v1, v3), m23 = mid(v2, v3);

            fine.elements.push_back({v0, m01, m02, m03});
            fine.elements.push_back({v1, m01, m12, m13});
            fine.elements.push_back({v2, m02, m12, m23});
            fine.elements.push_back({v3, m03, m13, m23});

            // Interior octahedron, split along the shortest diagonal.
            const std::array<std::pair<int, int>, 3> diags{{{m01, m23}, {m02, m13}, {m03, m12}}};
            const std::array<std::array<int, 4>, 3> rings{{
                {m02, m03, m13, m12},  // ring for diagonal (m01, m23)
                {m01, m03, m23, m12},  // ring for diagonal (m02, m13)
                {m01, m02, m23, m13},  // ring for diagonal (m03, m12)
            }};
            int best = 0;
            double best_len = std::numeric_limits<double>::max();
            for (int k = 0; k < 3; ++k) {
                const double len = (verts[diags[k].first] - verts[diags[k].second]).squaredNorm();
                if (len < best_len - 1e-15 * (1.0 + best_len)) {
                    best_len = len;
                    best = k;
                }
            }
            const auto [da, db] = diags[best];
            const auto& ring = rings[best];
            for (int k = 0; k < 4; ++k) {
                fine.elements.push_back({da, db, ring[k], ring[(k + 1) % 4]});
            }
        }
    }

    fine.vertices.resize(static_cast<int>(verts.size()), d);
    for (std::size_t v = 0; v < verts.size(); ++v) {
        fine.vertices.row(static_cast<int>(v)) = verts[v].transpose();
    }

    fix_orientation(fine);
    build_connectivity(fine);
    validate_mesh(fine, &geometry);
    return fine;
}

Mesh generate_disc_mesh(int level, const DomainGeometry& geometry) {
    if (geometry.kind() != DomainGeometry::Kind::Circle) {
        throw InvalidMesh("generate_disc_mesh: geometry must be a circle");
    }
    const double r = geometry.radius();
    const Eigen::VectorXd c = geometry.center();

    // Fan of 8 sectors around the center, boundary vertices on the circle.
    constexpr int n = 8;
    Mesh mesh;
    mesh.dim = 2;
    mesh.vertices.resize(n + 1, 2);
    mesh.vertices.row(0) = c.transpose();
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * M_PI * i / n;
        mesh.vertices(i + 1, 0) = c(0) + r * std::cos(theta);
        mesh.vertices(i + 1, 1) = c(1) + r * std::sin(theta);
    }
    for (int i = 0; i < n; ++i) {
        mesh.elements.push_back({0, i + 1, 1 + (i + 1) % n, -1});
    }
    fix_orientation(mesh);
    build_connectivity(mesh);
    validate_mesh(mesh, &geometry);

    for (int l = 0; l < level; ++l) mesh = refine_mesh(mesh, geometry);
    return mesh;
}

namespace {

// Coarse 48-tet tetrahedralization of the ball: per octant, the wedge
// O-A-B-C-D (axis points A,B,C and octant corner D on the sphere) splits into
// three tets around the axis O-D, and each of those is bisected on its
// axis-axis edge, whose midpoint is pushed onto the sphere.
Mesh coarse_ball(const DomainGeometry& geometry) {
    const double r = geometry.radius();
    const Eigen::VectorXd c = geometry.center();

    std::vector<Eigen::Vector3d> verts;
    auto add = [&](const Eigen::Vector3d& p) {
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if ((verts[i] - p).norm() < 1e-14) return static_cast<int>(i);
        }
        verts.push_back(p);
        return static_cast<int>(verts.size() - 1);
    };

    Mesh mesh;
    mesh.dim = 3;
    const int O = add(Eigen::Vector3d::Zero());

    for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
            for (int sz : {1, -1}) {
                const Eigen::Vector3d A(sx, 0, 0), B(0, sy, 0), C(0, 0, sz);
                const Eigen::Vector3d D = Eigen::Vector3d(sx, sy, sz).normalized();
                const int a = add(A), b = add(B), cc = add(C), dd = add(D);
                const std::array<std::pair<int, int>, 3> pairs{{{a, b}, {b, cc}, {cc, a}}};
                for (const auto& [p, q] : pairs) {
                    const int m = add((verts[p] + verts[q]).normalized());
                    mesh.elements.push_back({O, p, m, dd});
                    mesh.elements.push_back({O, m, q, dd});
                }
            }
        }
    }

    mesh.vertices.resize(static_cast<int>(verts.size()), 3);
    for (std::size_t v = 0; v < verts.size(); ++v) {
        mesh.vertices.row(static_cast<int>(v)) = (c + r * verts[v]).transpose();
    }
    fix_orientation(mesh);
    build_connectivity(mesh);
    return mesh;
}

} // namespace

Mesh generate_ball_mesh(int level, const DomainGeometry& geometry) {
    if (geometry.kind() != DomainGeometry::Kind::Sphere) {
        throw InvalidMesh("generate_ball_mesh: geometry must be a sphere");
    }
    Mesh mesh = coarse_ball(geometry);
    validate_mesh(mesh, &geometry);
    for (int l = 0; l < level; ++l) mesh = refine_mesh(mesh, geometry);
    return mesh;
}

Mesh generate_square_mesh(int level) {
    Mesh mesh;
    mesh.dim = 2;
    mesh.vertices.resize(5, 2);
    mesh.vertices << 0, 0, 1, 0, 1, 1, 0, 1, 0.5, 0.5;
    mesh.elements = {{0, 1, 4, -1}, {1, 2, 4, -1}, {2, 3, 4, -1}, {3, 0, 4, -1}};
    fix_orientation(mesh);
    build_connectivity(mesh);
    const DomainGeometry flat = DomainGeometry::polygonal(2);
    validate_mesh(mesh, &flat);
    for (int l = 0; l < level; ++l) mesh = refine_mesh(mesh, flat);
    return mesh;
}

Mesh generate_polyhedron_mesh(int level) {
    // Same coarse polyhedron as the ball mesh, but refined without boundary
    // projection: the domain stays the level-0 convex polyhedron.
    const DomainGeometry unit = DomainGeometry::sphere(Eigen::Vector3d::Zero(), 1.0);
    Mesh mesh = coarse_ball(unit);
    const DomainGeometry flat = DomainGeometry::polygonal(3);
    validate_mesh(mesh, &flat);
    for (int l = 0; l < level; ++l) mesh = refine_mesh(mesh, flat);
    return mesh;
}

} // namespace isodg
