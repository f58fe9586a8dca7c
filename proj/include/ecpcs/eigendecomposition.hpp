#pragma once

#include "ecpcs/matrix.hpp"

#include <Eigen/Dense>

namespace ecpcs {

struct EigenPairs {
    Eigen::VectorXd values;   // length k, algebraically largest first
    Eigen::MatrixXd vectors;  // n x k, orthonormal columns, vectors.col(j) pairs with values(j)
};

/// k algebraically largest eigenpairs of a symmetric matrix.
/// The input must be symmetric within 1e-10 relative tolerance and 1 <= k <= n.
/// Throws NumericalError if the iteration fails to converge.
EigenPairs symmetric_eigendecomposition(const SquareMatrix& m, Eigen::Index k);

}  // namespace ecpcs
