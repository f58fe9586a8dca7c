#include "ecpcs/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecpcs {

namespace {

// Materializing trajectories costs N_c * (N_c * t) doubles; beyond this row
// length the Gram accumulation path is used instead.
constexpr Eigen::Index kMaxMaterializedRowLength = 8192;

}  // namespace

ClusterGraph build_cluster_graph(const Ensemble& ensemble) {
    const int n_clusters = ensemble.total_clusters();
    const std::vector<int> sizes = ensemble.cluster_sizes();

    // Intersection sizes via exact integer counting: each object contributes
    // one to every pair of clusters (one per member) that contain it.
    Eigen::MatrixXi intersections = Eigen::MatrixXi::Zero(n_clusters, n_clusters);
    const int n_objects = ensemble.n_objects();
    const int m_members = ensemble.size();
    std::vector<int> containing(static_cast<std::size_t>(m_members));
    for (int i = 0; i < n_objects; ++i) {
        for (int m = 0; m < m_members; ++m) {
            containing[static_cast<std::size_t>(m)] =
                ensemble.global_id(m, ensemble.member(m).assignments[static_cast<std::size_t>(i)]);
        }
        for (int a = 0; a < m_members; ++a) {
            for (int b = a + 1; b < m_members; ++b) {
                const int u = containing[static_cast<std::size_t>(a)];
                const int v = containing[static_cast<std::size_t>(b)];
                ++intersections(u, v);
            }
        }
    }

    SquareMatrix weights = SquareMatrix::identity(n_clusters, MatrixRole::EdgeWeights);
    for (int u = 0; u < n_clusters; ++u) {
        for (int v = u + 1; v < n_clusters; ++v) {
            const int common = intersections(u, v) + intersections(v, u);
            if (common == 0) continue;
            const int unions = sizes[static_cast<std::size_t>(u)] +
                               sizes[static_cast<std::size_t>(v)] - common;
            const double w = static_cast<double>(common) / static_cast<double>(unions);
            weights(u, v) = w;
            weights(v, u) = w;
        }
    }
    return ClusterGraph{std::move(weights), sizes};
}

TransitionMatrix build_transition_matrix(const ClusterGraph& graph) {
    const Eigen::Index n = graph.n_nodes();
    SquareMatrix p = SquareMatrix::zero(n, MatrixRole::Transition);
    std::vector<int> isolated;
    for (Eigen::Index i = 0; i < n; ++i) {
        double degree = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) degree += graph.edge_weights(i, j);
        }
        if (degree <= 0.0) {
            isolated.push_back(static_cast<int>(i));
            continue;
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) p(i, j) = graph.edge_weights(i, j) / degree;
        }
    }
    return TransitionMatrix{std::move(p), std::move(isolated)};
}

TrajectorySet propagate(const TransitionMatrix& transition, int t, TrajectoryStorage storage) {
    if (t < 1) {
        throw std::invalid_argument("propagate: step length must be at least 1");
    }
    const Eigen::Index n = transition.n_nodes();

    bool materialize = storage == TrajectoryStorage::Rows;
    if (storage == TrajectoryStorage::Auto) {
        materialize = n * static_cast<Eigen::Index>(t) <= kMaxMaterializedRowLength;
    }

    TrajectorySet out;
    out.t = t;
    out.n_nodes = n;
    out.step_row_sums = Eigen::MatrixXd::Zero(n, t);
    out.gram = Eigen::MatrixXd::Zero(n, n);
    if (materialize) {
        out.rows = Eigen::MatrixXd::Zero(n, n * static_cast<Eigen::Index>(t));
    }

    Eigen::MatrixXd step = transition.p.entries();  // P^(1)
    for (int s = 0; s < t; ++s) {
        if (s > 0) {
            step = (step * transition.p.entries()).eval();  // P^(s) = P^(s-1) * P
        }
        out.step_row_sums.col(s) = step.rowwise().sum();
        if (materialize) {
            out.rows->middleCols(static_cast<Eigen::Index>(s) * n, n) = step;
        }
        out.gram.noalias() += step * step.transpose();
    }
    return out;
}

SquareMatrix trajectory_similarity(const TrajectorySet& trajectories) {
    const Eigen::Index n = trajectories.n_nodes;
    SquareMatrix z = SquareMatrix::identity(n, MatrixRole::Similarity);

    // Cosine from the Gram matrix; a zero-norm (isolated) row scores 0
    // against everything else and keeps z_ii = 1.
    const Eigen::MatrixXd* gram = &trajectories.gram;
    Eigen::MatrixXd from_rows;
    if (trajectories.rows.has_value()) {
        from_rows.noalias() = (*trajectories.rows) * trajectories.rows->transpose();
        gram = &from_rows;
    }

    Eigen::VectorXd norms = gram->diagonal().cwiseMax(0.0).cwiseSqrt();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double value = 0.0;
            if (norms(i) > 0.0 && norms(j) > 0.0) {
                value = (*gram)(i, j) / (norms(i) * norms(j));
                value = std::clamp(value, 0.0, 1.0);
            }
            z(i, j) = value;
            z(j, i) = value;
        }
    }
    return z;
}

}  // namespace ecpcs
