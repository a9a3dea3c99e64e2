#pragma once

#include <iosfwd>
#include <string>

#include "isodg/mesh.hpp"

namespace isodg {

/// Reads a Gmsh MSH ASCII file, version 2.2 or 4.1. Only 3-node triangles
/// (type 2) and 4-node tetrahedra (type 4) are kept as volume elements; lower
/// dimensional elements are ignored. The mesh dimension is the highest
/// simplex dimension present; mixing triangles and tetrahedra is an error.
///
/// Returns the mesh with connectivity built and orientation fixed. The number
/// of ignored elements, if requested, is written to `ignored`.
Mesh load_gmsh(const std::string& path, int* ignored = nullptr);
Mesh load_gmsh(std::istream& in, int* ignored = nullptr);

/// Writes the MSH 2.2 ASCII subset: $MeshFormat, $Nodes, $Elements with
/// ascending 1-based ids, vertices before elements. Byte-stable for a given
/// mesh.
void write_gmsh(const Mesh& mesh, const std::string& path);
void write_gmsh(const Mesh& mesh, std::ostream& out);

} // namespace isodg
