#include "isodg/reference_element.hpp"

#include <cmath>

namespace isodg {

ReferenceElement::ReferenceElement(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim != 2 && dim != 3 && dim != 1) {
        throw UnsupportedDegree("ReferenceElement: dim must be 1, 2 or 3");
    }
    if (degree < 0 || degree > 4) {
        throw UnsupportedDegree("ReferenceElement: degree must be in [0, 4]");
    }

    // Nodes: barycentric multi-indices (a_0,...,a_d) with sum = degree.
    // Degree 0 gets the single barycenter node.
    if (degree == 0) {
        bary_.push_back({0, 0, 0, 0});
        nodes_.resize(1, dim);
        nodes_.setConstant(1.0 / (dim + 1));
    } else {
        std::array<int, 4> a{0, 0, 0, 0};
        // enumerate a_1..a_d, a_0 = degree - sum
        const auto emit = [&](auto&& self, int coord, int remaining) -> void {
            if (coord == dim) {
                a[0] = remaining;
                std::array<int, 4> node{a[0], a[1], a[2], a[3]};
                bary_.push_back(node);
                return;
            }
            for (int v = 0; v <= remaining; ++v) {
                a[coord + 1] = v;
                self(self, coord + 1, remaining - v);
            }
            a[coord + 1] = 0;
        };
        emit(emit, 0, degree);

        nodes_.resize(static_cast<int>(bary_.size()), dim);
        for (std::size_t i = 0; i < bary_.size(); ++i) {
            for (int c = 0; c < dim; ++c) {
                nodes_(static_cast<int>(i), c) = static_cast<double>(bary_[i][c + 1]) / degree;
            }
        }
    }

    // Monomial exponents of total degree <= k, same count as nodes.
    {
        std::array<int, 3> m{0, 0, 0};
        const auto emit = [&](auto&& self, int coord, int remaining) -> void {
            if (coord == dim) {
                monomials_.push_back(m);
                return;
            }
            for (int v = 0; v <= remaining; ++v) {
                m[coord] = v;
                self(self, coord + 1, remaining - v);
            }
            m[coord] = 0;
        };
        emit(emit, 0, degree);
    }

    const int n = size();
    Eigen::MatrixXd vand(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double m = 1.0;
            for (int c = 0; c < dim; ++c) m *= std::pow(nodes_(i, c), monomials_[j][c]);
            vand(i, j) = m;
        }
    }
    coeffs_ = vand.fullPivLu().inverse();
}

std::vector<int> ReferenceElement::node_support(int i) const {
    std::vector<int> support;
    if (degree_ == 0) {
        for (int v = 0; v <= dim_; ++v) support.push_back(v);
        return support;
    }
    for (int v = 0; v <= dim_; ++v) {
        if (bary_[i][v] > 0) support.push_back(v);
    }
    return support;
}

Eigen::VectorXd ReferenceElement::eval(const Eigen::VectorXd& x) const {
    const int n = size();
    Eigen::VectorXd mono(n);
    for (int j = 0; j < n; ++j) {
        double m = 1.0;
        for (int c = 0; c < dim_; ++c) m *= std::pow(x(c), monomials_[j][c]);
        mono(j) = m;
    }
    return coeffs_.transpose() * mono;
}

Eigen::MatrixXd ReferenceElement::grad(const Eigen::VectorXd& x) const {
    const int n = size();
    Eigen::MatrixXd dmono(n, dim_);
    for (int j = 0; j < n; ++j) {
        for (int c = 0; c < dim_; ++c) {
            const int p = monomials_[j][c];
            if (p == 0) {
                dmono(j, c) = 0.0;
                continue;
            }
            double m = p * std::pow(x(c), p - 1);
            for (int o = 0; o < dim_; ++o) {
                if (o != c) m *= std::pow(x(o), monomials_[j][o]);
            }
            dmono(j, c) = m;
        }
    }
    return coeffs_.transpose() * dmono;
}

Eigen::MatrixXd ReferenceElement::simplex_vertices(int dim) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim + 1, dim);
    for (int i = 0; i < dim; ++i) v(i + 1, i) = 1.0;
    return v;
}

Eigen::VectorXd ReferenceElement::face_normal(int dim, int face) {
    Eigen::VectorXd n = Eigen::VectorXd::Zero(dim);
    if (face == 0) {
        n.setConstant(1.0 / std::sqrt(static_cast<double>(dim)));
    } else {
        n(face - 1) = -1.0;
    }
    return n;
}

double ReferenceElement::face_measure(int dim, int face) {
    if (dim == 2) return face == 0 ? std::sqrt(2.0) : 1.0;
    return face == 0 ? std::sqrt(3.0) / 2.0 : 0.5;
}

} // namespace isodg
