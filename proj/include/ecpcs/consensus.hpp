#pragma once

#include "ecpcs/matrix.hpp"
#include "ecpcs/rng.hpp"
#include "ecpcs/types.hpp"

#include <cstdint>
#include <vector>

namespace ecpcs {

/// One agglomeration step: regions `left` and `right` fuse into `merged` at
/// the average-link similarity current when they fused.
struct Merge {
    int left = 0;
    int right = 0;
    double similarity = 0.0;
    int merged = 0;
};

/// Full merge history over N leaves. Leaves carry ids 0..N-1, internal
/// regions N..2N-2 in creation order. Merge similarities are the raw
/// average-link values and are not forced monotone; cuts count merges, so
/// monotonicity never matters.
struct Dendrogram {
    int n_leaves = 0;
    std::vector<Merge> merges;  // exactly n_leaves - 1 entries
};

struct MetaClustering {
    int k = 0;                    // requested number of meta-clusters
    std::vector<int> assignment;  // per global cluster id, values 0..k-1
    bool degenerate = false;      // true when some meta-cluster id is unused
};

enum class ConsensusMethod { HC, MC, EAC };

struct ConsensusResult {
    std::vector<int> labels;  // contiguous 0..k'-1 with k' <= requested k
    ConsensusMethod method = ConsensusMethod::HC;
    int requested_k = 0;
    int actual_k = 0;
    std::uint64_t seed = 0;   // filled by the harness
    int t = 0;                // filled by the harness
    int ensemble_size = 0;    // filled by the harness
    int tie_events = 0;
};

/// Average-link agglomeration over a similarity matrix. At every step the
/// pair of regions with the highest similarity merges; exact ties pick the
/// smallest (left id, right id) pair. The similarity of a fused region to any
/// other is maintained with the size-weighted update, which equals the mean
/// of b_uv over all cross pairs.
Dendrogram hc_build_dendrogram(const SquareMatrix& b);

/// Undo the last k-1 merges; the surviving regions become the consensus
/// clusters, labeled by the order of their smallest leaf id.
ConsensusResult hc_cut(const Dendrogram& dendrogram, int k);

/// Normalized-cut partition of the cluster graph weighted by Z into k
/// meta-clusters: spectral embedding from the k largest eigenvectors of
/// D^(-1/2) W D^(-1/2), row-normalized, clustered by seeded k-means with 10
/// restarts. Zero-degree nodes are held out of the eigenproblem and attached
/// afterwards (nearest positive-degree node by Z, else the largest
/// meta-cluster).
MetaClustering mc_partition(const SquareMatrix& z, int k, Rng& rng);

/// Majority voting: each object joins the meta-cluster containing the highest
/// fraction of the clusters it belongs to; exact ties are broken uniformly at
/// random and counted.
ConsensusResult mc_vote(const Ensemble& ensemble, const MetaClustering& meta, Rng& rng);

/// Evidence-accumulation baseline: the same agglomeration and cut, run on the
/// conventional co-association matrix.
ConsensusResult eac_baseline(const SquareMatrix& a, int k);

}  // namespace ecpcs
