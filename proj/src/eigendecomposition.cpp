#include "ecpcs/eigendecomposition.hpp"

#include "ecpcs/errors.hpp"

#include <stdexcept>

namespace ecpcs {

EigenPairs symmetric_eigendecomposition(const SquareMatrix& m, Eigen::Index k) {
    const Eigen::Index n = m.order();
    if (n < 1) {
        throw std::invalid_argument("symmetric_eigendecomposition: empty matrix");
    }
    if (k < 1 || k > n) {
        throw std::invalid_argument("symmetric_eigendecomposition: require 1 <= k <= n");
    }
    if (!m.all_finite()) {
        throw std::invalid_argument("symmetric_eigendecomposition: non-finite entries");
    }
    if (!m.is_symmetric(1e-10)) {
        throw std::invalid_argument(
            "symmetric_eigendecomposition: input not symmetric within 1e-10 relative tolerance");
    }

    // The asymmetry allowance is tiny, but the solver assumes an exactly
    // symmetric operator; work on the symmetrized matrix.
    Eigen::MatrixXd sym = 0.5 * (m.entries() + m.entries().transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) {
        const long iterations =
            static_cast<long>(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>::m_maxIterations) * n;
        throw NumericalError("symmetric eigendecomposition did not converge", iterations);
    }

    // Eigen returns eigenvalues ascending; flip to descending.
    EigenPairs out;
    out.values.resize(k);
    out.vectors.resize(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        out.values(j) = solver.eigenvalues()(n - 1 - j);
        out.vectors.col(j) = solver.eigenvectors().col(n - 1 - j);
    }
    return out;
}

}  // namespace ecpcs
