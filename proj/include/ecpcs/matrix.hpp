#pragma once

#include <Eigen/Dense>

#include <string_view>

namespace ecpcs {

enum class MatrixRole {
    General,
    EdgeWeights,
    Transition,
    Similarity,
    Coassociation,
};

std::string_view to_string(MatrixRole role);

/// Dense square matrix with a role tag describing what its entries mean.
/// Role-specific invariants are established by the operation that builds it.
class SquareMatrix {
public:
    SquareMatrix() : role_(MatrixRole::General) {}

    SquareMatrix(Eigen::MatrixXd entries, MatrixRole role);

    static SquareMatrix zero(Eigen::Index n, MatrixRole role);
    static SquareMatrix identity(Eigen::Index n, MatrixRole role);

    Eigen::Index order() const { return m_.rows(); }
    MatrixRole role() const { return role_; }

    double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
    double& operator()(Eigen::Index i, Eigen::Index j) { return m_(i, j); }

    const Eigen::MatrixXd& entries() const { return m_; }
    Eigen::MatrixXd& entries() { return m_; }

    bool all_finite() const { return m_.allFinite(); }

    /// Symmetric within `rel_tol` relative to the largest absolute entry.
    bool is_symmetric(double rel_tol = 1e-10) const;

private:
    Eigen::MatrixXd m_;
    MatrixRole role_;
};

}  // namespace ecpcs
