#include "isodg/quadrature.hpp"

#include <cmath>
#include <vector>

#include "isodg/reference_element.hpp"

namespace isodg {

namespace {

constexpr int kMaxExactness = 30;

void check_exactness(int exactness) {
    if (exactness < 0 || exactness > kMaxExactness) {
        throw UnsupportedDegree("quadrature: exactness must be in [0, 30]");
    }
}

} // namespace

QuadratureRule gauss_legendre_unit(int n) {
    if (n < 1) throw UnsupportedDegree("gauss_legendre_unit: need at least one point");

    QuadratureRule rule;
    rule.points.resize(n, 1);
    rule.weights.resize(n);
    rule.exactness = 2 * n - 1;

    // Newton iteration on P_n over [-1, 1], then map to [0, 1].
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // nodes come out in descending order; store ascending on [0, 1]
        rule.points(n - 1 - i, 0) = 0.5 * (x + 1.0);
        rule.weights(n - 1 - i) = 0.5 * w;
    }
    return rule;
}

QuadratureRule volume_quadrature(int dim, int exactness) {
    check_exactness(exactness);

    if (dim == 1) {
        return gauss_legendre_unit(exactness / 2 + 1);
    }

    if (dim == 2) {
        // Collapsed square: x = u(1-v), y = v, Jacobian (1-v). A monomial of
        // total degree p has degree <= p in u and <= p+1 in v.
        const int n = (exactness + 2) / 2 + 1;
        const QuadratureRule gl = gauss_legendre_unit(n);
        QuadratureRule rule;
        rule.points.resize(n * n, 2);
        rule.weights.resize(n * n);
        rule.exactness = exactness;
        int q = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double u = gl.points(i, 0), v = gl.points(j, 0);
                rule.points(q, 0) = u * (1.0 - v);
                rule.points(q, 1) = v;
                rule.weights(q) = gl.weights(i) * gl.weights(j) * (1.0 - v);
                ++q;
            }
        }
        return rule;
    }

    if (dim == 3) {
        // x = u(1-v)(1-w), y = v(1-w), z = w, Jacobian (1-v)(1-w)^2.
        const int n = (exactness + 3) / 2 + 1;
        const QuadratureRule gl = gauss_legendre_unit(n);
        QuadratureRule rule;
        rule.points.resize(n * n * n, 3);
        rule.weights.resize(n * n * n);
        rule.exactness = exactness;
        int q = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    const double u = gl.points(i, 0);
                    const double v = gl.points(j, 0);
                    const double w = gl.points(k, 0);
                    rule.points(q, 0) = u * (1.0 - v) * (1.0 - w);
                    rule.points(q, 1) = v * (1.0 - w);
                    rule.points(q, 2) = w;
                    rule.weights(q) = gl.weights(i) * gl.weights(j) * gl.weights(k) *
                                      (1.0 - v) * (1.0 - w) * (1.0 - w);
                    ++q;
                }
            }
        }
        return rule;
    }

    throw UnsupportedDegree("volume_quadrature: dim must be 1, 2 or 3");
}

QuadratureRule face_quadrature(int dim, int exactness, int face) {
    check_exactness(exactness);
    if (face < 0 || face > dim) {
        throw UnsupportedDegree("face_quadrature: invalid local face index");
    }

    const QuadratureRule facet = volume_quadrature(dim - 1, exactness);
    const Eigen::MatrixXd verts = ReferenceElement::simplex_vertices(dim);

    // Face vertices in increasing local index, skipping the opposite vertex.
    std::vector<int> fv;
    for (int i = 0; i <= dim; ++i) {
        if (i != face) fv.push_back(i);
    }

    // Embedding scales the unit (d-1)-simplex measure to the face measure.
    double facet_measure = 1.0;
    for (int k = 2; k <= dim - 1; ++k) facet_measure /= k;
    const double scale = ReferenceElement::face_measure(dim, face) / facet_measure;

    QuadratureRule rule;
    rule.points.resize(facet.size(), dim);
    rule.weights = facet.weights * scale;
    rule.exactness = exactness;
    for (int q = 0; q < facet.size(); ++q) {
        double lambda0 = 1.0;
        Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
        for (int m = 1; m < dim; ++m) {
            const double lam = facet.points(q, m - 1);
            lambda0 -= lam;
            p += lam * verts.row(fv[m]).transpose();
        }
        p += lambda0 * verts.row(fv[0]).transpose();
        rule.points.row(q) = p.transpose();
    }
    return rule;
}

} // namespace isodg
