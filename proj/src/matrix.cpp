#include "ecpcs/matrix.hpp"

#include <stdexcept>

namespace ecpcs {

std::string_view to_string(MatrixRole role) {
    switch (role) {
        case MatrixRole::General: return "general";
        case MatrixRole::EdgeWeights: return "edge-weights";
        case MatrixRole::Transition: return "transition";
        case MatrixRole::Similarity: return "similarity";
        case MatrixRole::Coassociation: return "coassociation";
    }
    return "unknown";
}

SquareMatrix::SquareMatrix(Eigen::MatrixXd entries, MatrixRole role)
    : m_(std::move(entries)), role_(role) {
    if (m_.rows() != m_.cols()) {
        throw std::invalid_argument("SquareMatrix: entries must be square");
    }
}

SquareMatrix SquareMatrix::zero(Eigen::Index n, MatrixRole role) {
    return SquareMatrix(Eigen::MatrixXd::Zero(n, n), role);
}

SquareMatrix SquareMatrix::identity(Eigen::Index n, MatrixRole role) {
    return SquareMatrix(Eigen::MatrixXd::Identity(n, n), role);
}

bool SquareMatrix::is_symmetric(double rel_tol) const {
    if (m_.size() == 0) return true;
    const double scale = m_.cwiseAbs().maxCoeff();
    const double tol = rel_tol * (scale > 0.0 ? scale : 1.0);
    return (m_ - m_.transpose()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace ecpcs
