#pragma once

#include "ecpcs/matrix.hpp"
#include "ecpcs/types.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace ecpcs {

/// Graph over all N_c base clusters with Jaccard-coefficient edge weights.
/// Clusters of the same base clustering are disjoint, so their weight is 0;
/// the diagonal is recorded as 1 but never feeds the transition matrix.
struct ClusterGraph {
    SquareMatrix edge_weights;       // role EdgeWeights
    std::vector<int> cluster_sizes;  // per global cluster id

    Eigen::Index n_nodes() const { return edge_weights.order(); }
};

/// Row-stochastic one-step transition matrix with a zero diagonal. Nodes with
/// no overlap to any other cluster have an all-zero row and are listed in
/// `isolated`.
struct TransitionMatrix {
    SquareMatrix p;  // role Transition
    std::vector<int> isolated;

    Eigen::Index n_nodes() const { return p.order(); }
};

enum class TrajectoryStorage {
    Auto,      // materialize rows while N_c * t stays small, else Gram only
    Rows,      // always materialize the N_c x (N_c * t) trajectory matrix
    GramOnly,  // accumulate sum_s P^(s) P^(s)^T and row norms, never the rows
};

/// Random-walk trajectories of every node over steps 1..t. Row i is the
/// concatenation of row i of P^(1), ..., P^(t); for large problems only the
/// Gram matrix of those rows is kept, which is all the cosine step needs.
struct TrajectorySet {
    int t = 0;
    Eigen::Index n_nodes = 0;
    std::optional<Eigen::MatrixXd> rows;  // N_c x (N_c * t) when materialized
    Eigen::MatrixXd gram;                 // rows * rows^T, always available
    Eigen::MatrixXd step_row_sums;        // N_c x t, row sums of each P^(s)
};

ClusterGraph build_cluster_graph(const Ensemble& ensemble);

TransitionMatrix build_transition_matrix(const ClusterGraph& graph);

TrajectorySet propagate(const TransitionMatrix& transition, int t,
                        TrajectoryStorage storage = TrajectoryStorage::Auto);

/// Cluster-wise similarity Z: cosine of trajectory rows, z_ii = 1, and 0
/// against rows that are all zero (isolated nodes).
SquareMatrix trajectory_similarity(const TrajectorySet& trajectories);

}  // namespace ecpcs
