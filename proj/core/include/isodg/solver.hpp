#pragma once

#include "isodg/assembly.hpp"

namespace isodg {

/// Solver selection. Direct sparse LU is the bit-stable reference; the
/// restarted GMRES path preconditions with the inverted element-diagonal
/// blocks, which are dense and cheap to factorize.
struct SolverConfig {
    enum class Method { DirectLU, Gmres };

    Method method = Method::DirectLU;
    double tolerance = 1e-12; // relative residual
    int max_iterations = -1;  // default 10 * number of element blocks
    int restart = 60;
};

struct SolveResult {
    Eigen::VectorXd solution;
    double relative_residual = 0.0;
    int iterations = 0; // 0 for the direct method
    bool converged = true;
};

/// Solves the assembled system. Throws SingularMatrix on a failed
/// factorization; GMRES returns the best iterate with converged = false when
/// the iteration budget is exhausted.
SolveResult solve(const SparseSystem& system, const SolverConfig& config = {});

} // namespace isodg
