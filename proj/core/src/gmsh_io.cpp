#include "isodg/gmsh_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace isodg {

namespace {

struct RawNode {
    long id;
    double x, y, z;
};

std::string next_nonempty_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        // strip trailing CR from DOS files
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (!line.empty()) return line;
    }
    return {};
}

void skip_section(std::istream& in, const std::string& name) {
    const std::string end = "$End" + name.substr(1);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && line.back() == '\r') line.pop_back();
        if (line == end) return;
    }
    throw UnsupportedFormat("load_gmsh: unterminated section " + name);
}

Mesh finish(std::vector<RawNode> nodes, std::vector<std::array<long, 4>> tris,
            std::vector<std::array<long, 4>> tets) {
    if (!tris.empty() && !tets.empty()) {
        throw MixedElementTypes("load_gmsh: file mixes triangles and tetrahedra");
    }
    if (tris.empty() && tets.empty()) {
        throw UnsupportedFormat("load_gmsh: no simplicial volume elements found");
    }
    const int dim = tets.empty() ? 2 : 3;
    const auto& elems = tets.empty() ? tris : tets;

    std::unordered_map<long, int> remap;
    remap.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        remap.emplace(nodes[i].id, static_cast<int>(i));
    }

    Mesh mesh;
    mesh.dim = dim;
    mesh.vertices.resize(static_cast<int>(nodes.size()), dim);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        mesh.vertices(static_cast<int>(i), 0) = nodes[i].x;
        mesh.vertices(static_cast<int>(i), 1) = nodes[i].y;
        if (dim == 3) mesh.vertices(static_cast<int>(i), 2) = nodes[i].z;
    }

    for (const auto& elem : elems) {
        std::array<int, 4> out{-1, -1, -1, -1};
        for (int k = 0; k <= dim; ++k) {
            auto it = remap.find(elem[k]);
            if (it == remap.end()) {
                throw DanglingVertexReference("load_gmsh: element references node id " +
                                              std::to_string(elem[k]));
            }
            out[k] = it->second;
        }
        mesh.elements.push_back(out);
    }

    fix_orientation(mesh);
    build_connectivity(mesh);
    validate_mesh(mesh);
    return mesh;
}

Mesh load_v2(std::istream& in, int* ignored) {
    std::vector<RawNode> nodes;
    std::vector<std::array<long, 4>> tris, tets;
    int skipped = 0;

    std::string line;
    while (!(line = next_nonempty_line(in)).empty()) {
        if (line == "$Nodes") {
            long n = 0;
            in >> n;
            nodes.resize(n);
            for (long i = 0; i < n; ++i) {
                in >> nodes[i].id >> nodes[i].x >> nodes[i].y >> nodes[i].z;
            }
            in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
            skip_section(in, "$Nodes");
        } else if (line == "$Elements") {
            long n = 0;
            in >> n;
            in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
            std::string row;
            for (long i = 0; i < n; ++i) {
                if (!std::getline(in, row)) {
                    throw UnsupportedFormat("load_gmsh: truncated $Elements section");
                }
                std::istringstream ss(row);
                long id, type, ntags;
                if (!(ss >> id >> type >> ntags)) {
                    throw UnsupportedFormat("load_gmsh: malformed element line");
                }
                long tag;
                for (long t = 0; t < ntags; ++t) ss >> tag;
                if (type != 2 && type != 4) {
                    ++skipped; // non-volume or unsupported type, ignored
                    continue;
                }
                const int nn = type == 2 ? 3 : 4;
                std::array<long, 4> conn{0, 0, 0, 0};
                for (int k = 0; k < nn; ++k) {
                    if (!(ss >> conn[k])) {
                        throw UnsupportedFormat("load_gmsh: malformed element connectivity");
                    }
                }
                if (type == 2) tris.push_back(conn);
                else tets.push_back(conn);
            }
            skip_section(in, "$Elements");
        } else if (line[0] == '$' && line.rfind("$End", 0) != 0) {
            skip_section(in, line);
        }
    }
    if (ignored) *ignored = skipped;
    return finish(std::move(nodes), std::move(tris), std::move(tets));
}

Mesh load_v4(std::istream& in, int* ignored) {
    std::vector<RawNode> nodes;
    std::vector<std::array<long, 4>> tris, tets;
    int skipped = 0;

    std::string line;
    while (!(line = next_nonempty_line(in)).empty()) {
        if (line == "$Nodes") {
            long nblocks, nnodes, mintag, maxtag;
            in >> nblocks >> nnodes >> mintag >> maxtag;
            nodes.reserve(nnodes);
            for (long b = 0; b < nblocks; ++b) {
                long edim, etag, parametric, nin;
                in >> edim >> etag >> parametric >> nin;
                std::vector<long> tags(nin);
                for (long i = 0; i < nin; ++i) in >> tags[i];
                for (long i = 0; i < nin; ++i) {
                    RawNode node;
                    node.id = tags[i];
                    in >> node.x >> node.y >> node.z;
                    nodes.push_back(node);
                }
            }
            in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
            skip_section(in, "$Nodes");
        } else if (line == "$Elements") {
            long nblocks, nelems, mintag, maxtag;
            in >> nblocks >> nelems >> mintag >> maxtag;
            in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
            std::string row;
            for (long b = 0; b < nblocks; ++b) {
                if (!std::getline(in, row)) {
                    throw UnsupportedFormat("load_gmsh: truncated $Elements section");
                }
                std::istringstream hs(row);
                long edim, etag, type, nin;
                if (!(hs >> edim >> etag >> type >> nin)) {
                    throw UnsupportedFormat("load_gmsh: malformed element block header");
                }
                for (long i = 0; i < nin; ++i) {
                    if (!std::getline(in, row)) {
                        throw UnsupportedFormat("load_gmsh: truncated element block");
                    }
                    if (type != 2 && type != 4) {
                        ++skipped;
                        continue;
                    }
                    std::istringstream ss(row);
                    long id;
                    ss >> id;
                    std::array<long, 4> conn{0, 0, 0, 0};
                    const int nn = type == 2 ? 3 : 4;
                    for (int k = 0; k < nn; ++k) {
                        if (!(ss >> conn[k])) {
                            throw UnsupportedFormat("load_gmsh: malformed element connectivity");
                        }
                    }
                    if (type == 2) tris.push_back(conn);
                    else tets.push_back(conn);
                }
            }
            skip_section(in, "$Elements");
        } else if (line[0] == '$' && line.rfind("$End", 0) != 0) {
            skip_section(in, line);
        }
    }
    if (ignored) *ignored = skipped;
    return finish(std::move(nodes), std::move(tris), std::move(tets));
}

} // namespace

Mesh load_gmsh(std::istream& in, int* ignored) {
    const std::string head = next_nonempty_line(in);
    if (head != "$MeshFormat") {
        throw UnsupportedFormat("load_gmsh: missing $MeshFormat header");
    }
    std::string version;
    int file_type = 0, data_size = 0;
    in >> version >> file_type >> data_size;
    in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    skip_section(in, "$MeshFormat");

    if (file_type != 0) {
        throw UnsupportedFormat("load_gmsh: binary MSH files are not supported");
    }
    if (version == "2.2") return load_v2(in, ignored);
    if (version == "4.1") return load_v4(in, ignored);
    throw UnsupportedFormat("load_gmsh: unsupported MSH version " + version);
}

Mesh load_gmsh(const std::string& path, int* ignored) {
    std::ifstream in(path);
    if (!in) throw IoError("load_gmsh: cannot open " + path);
    return load_gmsh(in, ignored);
}

void write_gmsh(const Mesh& mesh, std::ostream& out) {
    out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";
    out << "$Nodes\n" << mesh.num_vertices() << "\n";
    out << std::setprecision(17);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        out << (v + 1);
        for (int c = 0; c < mesh.dim; ++c) out << ' ' << mesh.vertices(v, c);
        if (mesh.dim == 2) out << " 0";
        out << '\n';
    }
    out << "$EndNodes\n$Elements\n" << mesh.num_elements() << "\n";
    const int type = mesh.dim == 2 ? 2 : 4;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        out << (e + 1) << ' ' << type << " 2 0 0";
        for (int k = 0; k <= mesh.dim; ++k) out << ' ' << (mesh.elements[e][k] + 1);
        out << '\n';
    }
    out << "$EndElements\n";
}

void write_gmsh(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_gmsh: cannot open " + path);
    write_gmsh(mesh, out);
}

} // namespace isodg
