#pragma once

#include "isodg/geometric_map.hpp"
#include "isodg/mesh.hpp"
#include "isodg/reference_element.hpp"

namespace isodg {

/// Element-blocked broken polynomial space of degree k on the mapped mesh.
/// Dof layout: element e owns the contiguous block [e*block_size, (e+1)*block_size).
class DGSpace {
public:
    DGSpace(const Mesh& mesh, const GeometricMap& map, int degree)
        : mesh_(&mesh), map_(&map), basis_(mesh.dim, degree) {}

    const Mesh& mesh() const { return *mesh_; }
    const GeometricMap& map() const { return *map_; }
    const ReferenceElement& basis() const { return basis_; }

    int degree() const { return basis_.degree(); }
    int block_size() const { return basis_.size(); }
    int ndof() const { return mesh_->num_elements() * block_size(); }
    int offset(int elem) const { return elem * block_size(); }

private:
    const Mesh* mesh_;
    const GeometricMap* map_;
    ReferenceElement basis_;
};

} // namespace isodg
