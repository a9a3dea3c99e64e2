#include "isodg/solver.hpp"

#include <Eigen/SparseLU>

namespace isodg {

namespace {

// Inverted element-diagonal blocks, applied as a right preconditioner.
class BlockDiagonalPreconditioner {
public:
    BlockDiagonalPreconditioner(const Eigen::SparseMatrix<double, Eigen::RowMajor>& A,
                                int block_size)
        : block_(block_size) {
        const int nblocks = static_cast<int>(A.rows()) / block_;
        factors_.reserve(nblocks);
        for (int b = 0; b < nblocks; ++b) {
            Eigen::MatrixXd block = Eigen::MatrixXd::Zero(block_, block_);
            const int r0 = b * block_;
            for (int i = 0; i < block_; ++i) {
                for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(A, r0 + i);
                     it; ++it) {
                    const int j = static_cast<int>(it.col()) - r0;
                    if (j >= 0 && j < block_) block(i, j) = it.value();
                }
            }
            factors_.emplace_back(block);
        }
    }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
        Eigen::VectorXd y(x.size());
        for (std::size_t b = 0; b < factors_.size(); ++b) {
            const int r0 = static_cast<int>(b) * block_;
            y.segment(r0, block_) = factors_[b].solve(x.segment(r0, block_));
        }
        return y;
    }

private:
    int block_;
    std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> factors_;
};

SolveResult solve_direct(const SparseSystem& system) {
    Eigen::SparseMatrix<double> A = system.matrix; // SparseLU wants column-major
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) {
        throw SingularMatrix("solve: sparse LU factorization failed");
    }
    SolveResult result;
    result.solution = lu.solve(system.rhs);
    const double bnorm = system.rhs.norm();
    result.relative_residual =
        bnorm > 0.0 ? (system.rhs - system.matrix * result.solution).norm() / bnorm : 0.0;
    result.converged = true;
    return result;
}

SolveResult solve_gmres(const SparseSystem& system, const SolverConfig& config) {
    const auto& A = system.matrix;
    const Eigen::VectorXd& b = system.rhs;
    const int n = static_cast<int>(A.rows());
    const int m = std::max(1, config.restart);
    const int max_iter = config.max_iterations > 0
                             ? config.max_iterations
                             : 10 * std::max(1, n / std::max(1, system.block_size));

    const BlockDiagonalPreconditioner precond(A, system.block_size);

    SolveResult result;
    result.solution = Eigen::VectorXd::Zero(n);
    const double bnorm = b.norm();
    if (bnorm == 0.0) return result;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    int total_iters = 0;

    while (total_iters < max_iter) {
        Eigen::VectorXd r = b - A * x;
        double beta = r.norm();
        if (beta / bnorm <= config.tolerance) break;

        std::vector<Eigen::VectorXd> V;
        V.push_back(r / beta);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
        Eigen::VectorXd cs = Eigen::VectorXd::Zero(m);
        Eigen::VectorXd sn = Eigen::VectorXd::Zero(m);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(m + 1);
        g(0) = beta;

        int j = 0;
        for (; j < m && total_iters < max_iter; ++j, ++total_iters) {
            Eigen::VectorXd w = A * precond.apply(V[j]);
            for (int i = 0; i <= j; ++i) {
                H(i, j) = w.dot(V[i]);
                w -= H(i, j) * V[i];
            }
            H(j + 1, j) = w.norm();
            if (H(j + 1, j) > 0.0) V.push_back(w / H(j + 1, j));

            // Givens update of the Hessenberg column.
            for (int i = 0; i < j; ++i) {
                const double t = cs(i) * H(i, j) + sn(i) * H(i + 1, j);
                H(i + 1, j) = -sn(i) * H(i, j) + cs(i) * H(i + 1, j);
                H(i, j) = t;
            }
            const double denom = std::hypot(H(j, j), H(j + 1, j));
            if (denom == 0.0) { ++j; break; }
            cs(j) = H(j, j) / denom;
            sn(j) = H(j + 1, j) / denom;
            H(j, j) = denom;
            H(j + 1, j) = 0.0;
            g(j + 1) = -sn(j) * g(j);
            g(j) = cs(j) * g(j);

            if (std::abs(g(j + 1)) / bnorm <= config.tolerance) { ++j; break; }
            if (V.size() == static_cast<std::size_t>(j + 1)) { ++j; break; } // breakdown
        }

        // Back substitution on the triangularized Hessenberg.
        Eigen::VectorXd y = Eigen::VectorXd::Zero(j);
        for (int i = j - 1; i >= 0; --i) {
            double s = g(i);
            for (int k = i + 1; k < j; ++k) s -= H(i, k) * y(k);
            y(i) = s / H(i, i);
        }
        Eigen::VectorXd update = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < j; ++i) update += y(i) * V[i];
        x += precond.apply(update);
    }

    result.solution = x;
    result.iterations = total_iters;
    result.relative_residual = (b - A * x).norm() / bnorm;
    result.converged = result.relative_residual <= config.tolerance;
    return result;
}

} // namespace

SolveResult solve(const SparseSystem& system, const SolverConfig& config) {
    if (config.tolerance <= 0.0) {
        throw Error("solve: tolerance must be positive");
    }
    if (config.method == SolverConfig::Method::DirectLU) {
        return solve_direct(system);
    }
    return solve_gmres(system, config);
}

} // namespace isodg
