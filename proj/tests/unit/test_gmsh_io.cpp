#include <doctest.h>

#include <sstream>

#include <isodg/gmsh_io.hpp>
#include <isodg/mesh.hpp>

using namespace isodg;

namespace {

const char* kV22TwoTriangles =
    "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
    "$Nodes\n4\n"
    "1 0 0 0\n2 1 0 0\n3 1 1 0\n4 0 1 0\n"
    "$EndNodes\n"
    "$Elements\n5\n"
    "1 15 2 0 1 1\n"     // point element, ignored
    "2 1 2 0 1 1 2\n"    // line element, ignored
    "3 1 2 0 1 2 3\n"    // line element, ignored
    "4 2 2 0 2 1 2 3\n"  // triangle
    "5 2 2 0 2 1 3 4\n"  // triangle
    "$EndElements\n";

const char* kV41TwoTriangles =
    "$MeshFormat\n4.1 0 8\n$EndMeshFormat\n"
    "$Nodes\n1 4 1 4\n"
    "2 1 0 4\n1\n2\n3\n4\n"
    "0 0 0\n1 0 0\n1 1 0\n0 1 0\n"
    "$EndNodes\n"
    "$Elements\n2 3 1 3\n"
    "1 1 1 1\n1 1 2\n"
    "2 1 2 2\n2 1 2 3\n3 1 3 4\n"
    "$EndElements\n";

} // namespace

TEST_SUITE("gmsh_io") {

TEST_CASE("MSH 2.2 parse keeps triangles and counts ignored elements") {
    std::istringstream in(kV22TwoTriangles);
    int ignored = -1;
    const Mesh mesh = load_gmsh(in, &ignored);
    CHECK(mesh.dim == 2);
    CHECK(mesh.num_vertices() == 4);
    CHECK(mesh.num_elements() == 2);
    CHECK(ignored == 3);
    CHECK(mesh.num_faces() == 5);
    CHECK(mesh.boundary_faces.size() == 4);
}

TEST_CASE("MSH 4.1 parse produces the same mesh") {
    std::istringstream in(kV41TwoTriangles);
    int ignored = -1;
    const Mesh mesh = load_gmsh(in, &ignored);
    CHECK(mesh.dim == 2);
    CHECK(mesh.num_vertices() == 4);
    CHECK(mesh.num_elements() == 2);
    CHECK(ignored == 1);
}

TEST_CASE("round trip through write_gmsh preserves the mesh") {
    std::istringstream in(kV22TwoTriangles);
    const Mesh mesh = load_gmsh(in);

    std::ostringstream out;
    write_gmsh(mesh, out);
    std::istringstream back(out.str());
    const Mesh again = load_gmsh(back);

    REQUIRE(again.num_vertices() == mesh.num_vertices());
    REQUIRE(again.num_elements() == mesh.num_elements());
    CHECK((again.vertices - mesh.vertices).cwiseAbs().maxCoeff() == 0.0);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        CHECK(again.elements[e] == mesh.elements[e]);
    }
}

TEST_CASE("writer output is byte stable") {
    std::istringstream in(kV22TwoTriangles);
    const Mesh mesh = load_gmsh(in);
    std::ostringstream a, b;
    write_gmsh(mesh, a);
    write_gmsh(mesh, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("binary files are rejected") {
    std::istringstream in("$MeshFormat\n2.2 1 8\n$EndMeshFormat\n");
    CHECK_THROWS_AS(load_gmsh(in), UnsupportedFormat);
}

TEST_CASE("unknown versions are rejected") {
    std::istringstream in("$MeshFormat\n3.0 0 8\n$EndMeshFormat\n");
    CHECK_THROWS_AS(load_gmsh(in), UnsupportedFormat);
}

TEST_CASE("dangling vertex references are rejected") {
    const std::string text =
        "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
        "$Nodes\n3\n1 0 0 0\n2 1 0 0\n3 0 1 0\n$EndNodes\n"
        "$Elements\n1\n1 2 2 0 2 1 2 9\n$EndElements\n";
    std::istringstream in(text);
    CHECK_THROWS_AS(load_gmsh(in), DanglingVertexReference);
}

TEST_CASE("mixed triangles and tetrahedra are rejected") {
    const std::string text =
        "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
        "$Nodes\n5\n1 0 0 0\n2 1 0 0\n3 0 1 0\n4 0 0 1\n5 1 1 0\n$EndNodes\n"
        "$Elements\n2\n"
        "1 4 2 0 2 1 2 3 4\n"
        "2 2 2 0 2 2 5 3\n"
        "$EndElements\n";
    std::istringstream in(text);
    CHECK_THROWS_AS(load_gmsh(in), MixedElementTypes);
}

TEST_CASE("missing files raise IoError") {
    CHECK_THROWS_AS(load_gmsh("/nonexistent/path/mesh.msh"), IoError);
}

} // TEST_SUITE
