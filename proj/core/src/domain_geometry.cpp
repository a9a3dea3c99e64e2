#include "isodg/domain_geometry.hpp"

namespace isodg {

DomainGeometry DomainGeometry::circle(const Eigen::Vector2d& center, double radius) {
    return DomainGeometry(Kind::Circle, 2, center, radius);
}

DomainGeometry DomainGeometry::sphere(const Eigen::Vector3d& center, double radius) {
    return DomainGeometry(Kind::Sphere, 3, center, radius);
}

DomainGeometry DomainGeometry::polygonal(int dim) {
    return DomainGeometry(Kind::Polygonal, dim, Eigen::VectorXd::Zero(dim), 0.0);
}

double DomainGeometry::phi(const Eigen::VectorXd& x) const {
    if (kind_ == Kind::Polygonal) return 0.0;
    return (x - center_).norm() - radius_;
}

Eigen::VectorXd DomainGeometry::project(const Eigen::VectorXd& x) const {
    if (kind_ == Kind::Polygonal) return x;
    const Eigen::VectorXd r = x - center_;
    const double len = r.norm();
    if (len <= 1e-300) {
        throw ProjectionFailure("DomainGeometry::project: point coincides with the center");
    }
    return center_ + (radius_ / len) * r;
}

} // namespace isodg
