#include "ecpcs/coassoc.hpp"

#include <stdexcept>
#include <vector>

namespace ecpcs {

namespace {

// Global cluster id of every object in every member, member-major.
std::vector<std::vector<int>> global_assignments(const Ensemble& ensemble) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(ensemble.size()));
    for (int m = 0; m < ensemble.size(); ++m) {
        const auto& assignments = ensemble.member(m).assignments;
        auto& row = out[static_cast<std::size_t>(m)];
        row.reserve(assignments.size());
        for (int local : assignments) {
            row.push_back(ensemble.global_id(m, local));
        }
    }
    return out;
}

}  // namespace

SquareMatrix coassociation(const Ensemble& ensemble) {
    const int n = ensemble.n_objects();

    // Integer co-membership counts first, one division at the end; this keeps
    // a_ij = c/M bitwise identical to the enhanced matrix's same-cluster path.
    Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(n, n);
    const auto clusters = ensemble.cluster_members();
    for (const auto& members : clusters) {
        for (std::size_t x = 0; x < members.size(); ++x) {
            for (std::size_t y = x + 1; y < members.size(); ++y) {
                ++counts(members[x], members[y]);
            }
        }
    }

    const double m_members = static_cast<double>(ensemble.size());
    SquareMatrix a = SquareMatrix::identity(n, MatrixRole::Coassociation);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double value = static_cast<double>(counts(i, j)) / m_members;
            a(i, j) = value;
            a(j, i) = value;
        }
    }
    return a;
}

SquareMatrix enhanced_coassociation(const Ensemble& ensemble, const SquareMatrix& z) {
    if (z.order() != ensemble.total_clusters()) {
        throw std::invalid_argument(
            "enhanced_coassociation: similarity matrix order differs from the cluster count");
    }
    const int n = ensemble.n_objects();
    const int m_members = ensemble.size();
    const auto gids = global_assignments(ensemble);

    // Dividing (not multiplying by a reciprocal) keeps b_ij bitwise equal to
    // the conventional matrix whenever every cross-cluster z is zero.
    SquareMatrix b = SquareMatrix::identity(n, MatrixRole::Coassociation);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double total = 0.0;
            for (int m = 0; m < m_members; ++m) {
                const int u = gids[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)];
                const int v = gids[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
                total += (u == v) ? 1.0 : z(u, v);
            }
            const double value = total / static_cast<double>(m_members);
            b(i, j) = value;
            b(j, i) = value;
        }
    }
    return b;
}

}  // namespace ecpcs
