#pragma once

#include <Eigen/Dense>

#include "isodg/errors.hpp"

namespace isodg {

/// Exact description of the physical domain: an implicit boundary function
/// phi (phi = 0 on the boundary, phi < 0 inside) together with a closest-point
/// projection onto the boundary.
///
/// Circles and spheres use the closed-form radial projection; the polygonal
/// kind has no curvature (projection is the identity and phi vanishes), which
/// makes every derived map affine.
class DomainGeometry {
public:
    enum class Kind { Circle, Sphere, Polygonal };

    static DomainGeometry circle(const Eigen::Vector2d& center, double radius);
    static DomainGeometry sphere(const Eigen::Vector3d& center, double radius);
    static DomainGeometry polygonal(int dim);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double radius() const { return radius_; }
    const Eigen::VectorXd& center() const { return center_; }
    bool curved() const { return kind_ != Kind::Polygonal; }

    /// Signed distance-like function: zero on the boundary, negative inside.
    double phi(const Eigen::VectorXd& x) const;

    /// Closest point on the boundary. Idempotent to machine precision.
    /// For circle/sphere the projection is radial from the center; a point at
    /// the center itself has no projection and raises ProjectionFailure.
    Eigen::VectorXd project(const Eigen::VectorXd& x) const;

private:
    DomainGeometry(Kind kind, int dim, Eigen::VectorXd center, double radius)
        : kind_(kind), dim_(dim), center_(std::move(center)), radius_(radius) {}

    Kind kind_;
    int dim_;
    Eigen::VectorXd center_;
    double radius_;
};

} // namespace isodg
