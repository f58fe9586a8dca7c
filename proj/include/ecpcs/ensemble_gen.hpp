#pragma once

#include "ecpcs/rng.hpp"
#include "ecpcs/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace ecpcs {

struct EnsembleConfig {
    int ensemble_size = 20;    // M
    int k_min = 0;             // 0 = derive from data: class count, or 2 without labels
    int k_max = 0;             // 0 = derive from data: min(floor(sqrt(N)), 100)
    int kmeans_max_iters = 100;
    std::uint64_t seed = 0;
    bool standardize = true;   // z-score each feature before running k-means

    /// Resolved [k_min, k_max] for a dataset, clamped to 2 <= k_min <= k_max <= N.
    std::pair<int, int> k_range(const Dataset& data) const;
};

/// Per-feature z-score; constant features become all zero.
Eigen::MatrixXd standardize_features(const Eigen::MatrixXd& objects);

namespace detail {

struct LloydResult {
    std::vector<int> assignments;  // raw ids 0..k-1; empty clusters possible
    double inertia = 0.0;          // sum of squared distances to assigned centers
    int iterations = 0;
};

/// Lloyd iterations over the rows of `points`. Centers start from k distinct
/// rows sampled uniformly; a cluster that comes out of an assignment step
/// empty has its center reseeded to the object farthest from its own center.
/// Stops when assignments repeat or after max_iters.
LloydResult lloyd(const Eigen::MatrixXd& points, int k, Rng& rng, int max_iters);

}  // namespace detail

/// One randomized k-means run; clusters left empty at convergence are dropped
/// and the remaining ids compacted.
BaseClustering kmeans(const Eigen::MatrixXd& points, int k, Rng& rng, int max_iters = 100);

/// M base clusterings, the m-th drawn with k uniform in the resolved range
/// using an rng derived from (cfg.seed, m). Pure function of (data, cfg).
Ensemble generate_ensemble(const Dataset& data, const EnsembleConfig& cfg);

}  // namespace ecpcs
