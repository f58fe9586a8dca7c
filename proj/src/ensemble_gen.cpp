#include "ecpcs/ensemble_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ecpcs {

std::pair<int, int> EnsembleConfig::k_range(const Dataset& data) const {
    const int n = static_cast<int>(data.n_objects());
    int lo = k_min > 0 ? k_min : std::max(2, data.n_classes());
    int hi = k_max > 0 ? k_max
                       : std::min(static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))),
                                  100);
    lo = std::clamp(lo, 2, n);
    hi = std::clamp(hi, 2, n);
    if (lo > hi) lo = hi;
    return {lo, hi};
}

Eigen::MatrixXd standardize_features(const Eigen::MatrixXd& objects) {
    Eigen::MatrixXd out(objects.rows(), objects.cols());
    const double n = static_cast<double>(objects.rows());
    for (Eigen::Index j = 0; j < objects.cols(); ++j) {
        const double mean = objects.col(j).mean();
        const double var = (objects.col(j).array() - mean).square().sum() / n;
        const double sd = std::sqrt(var);
        if (sd > 0.0) {
            out.col(j) = (objects.col(j).array() - mean) / sd;
        } else {
            out.col(j).setZero();
        }
    }
    return out;
}

namespace detail {

namespace {

// k distinct row indices, uniform without replacement (partial Fisher-Yates).
std::vector<int> sample_distinct(int n, int k, Rng& rng) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
}

}  // namespace

LloydResult lloyd(const Eigen::MatrixXd& points, int k, Rng& rng, int max_iters) {
    const int n = static_cast<int>(points.rows());
    if (k < 2 || k > n) {
        throw std::invalid_argument("lloyd: require 2 <= k <= number of points");
    }

    Eigen::MatrixXd centers(k, points.cols());
    const std::vector<int> init = sample_distinct(n, k, rng);
    for (int c = 0; c < k; ++c) {
        centers.row(c) = points.row(init[static_cast<std::size_t>(c)]);
    }

    std::vector<int> assignments(static_cast<std::size_t>(n), -1);
    std::vector<int> previous;
    std::vector<double> distances(static_cast<std::size_t>(n), 0.0);
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    LloydResult result;

    for (int iter = 0; iter < max_iters; ++iter) {
        result.iterations = iter + 1;

        // Assignment step; ties go to the smallest center id.
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_dist = (points.row(i) - centers.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double dist = (points.row(i) - centers.row(c)).squaredNorm();
                if (dist < best_dist) {
                    best_dist = dist;
                    best = c;
                }
            }
            assignments[static_cast<std::size_t>(i)] = best;
            distances[static_cast<std::size_t>(i)] = best_dist;
            ++counts[static_cast<std::size_t>(best)];
        }

        // Reseed each empty cluster's center onto the object currently
        // farthest from its own center (one donor object per empty cluster).
        std::vector<bool> donated(static_cast<std::size_t>(n), false);
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            int donor = -1;
            double donor_dist = -1.0;
            for (int i = 0; i < n; ++i) {
                if (donated[static_cast<std::size_t>(i)]) continue;
                if (distances[static_cast<std::size_t>(i)] > donor_dist) {
                    donor_dist = distances[static_cast<std::size_t>(i)];
                    donor = i;
                }
            }
            centers.row(c) = points.row(donor);
            donated[static_cast<std::size_t>(donor)] = true;
        }

        if (assignments == previous) {
            break;
        }
        previous = assignments;

        // Update step; empty clusters keep their (possibly reseeded) centers.
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                centers.row(c).setZero();
            }
        }
        for (int i = 0; i < n; ++i) {
            centers.row(assignments[static_cast<std::size_t>(i)]) += points.row(i);
        }
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
            }
        }
    }

    result.assignments = std::move(assignments);
    result.inertia = std::accumulate(distances.begin(), distances.end(), 0.0);
    return result;
}

}  // namespace detail

BaseClustering kmeans(const Eigen::MatrixXd& points, int k, Rng& rng, int max_iters) {
    const detail::LloydResult raw = detail::lloyd(points, k, rng, max_iters);

    // Compact away clusters that ended empty, keeping id order.
    std::vector<int> remap(static_cast<std::size_t>(k), -1);
    for (int id : raw.assignments) {
        remap[static_cast<std::size_t>(id)] = 0;
    }
    int next = 0;
    for (int c = 0; c < k; ++c) {
        if (remap[static_cast<std::size_t>(c)] == 0) {
            remap[static_cast<std::size_t>(c)] = next++;
        }
    }

    BaseClustering out;
    out.n_clusters = next;
    out.assignments.reserve(raw.assignments.size());
    for (int id : raw.assignments) {
        out.assignments.push_back(remap[static_cast<std::size_t>(id)]);
    }
    return out;
}

Ensemble generate_ensemble(const Dataset& data, const EnsembleConfig& cfg) {
    data.validate();
    if (cfg.ensemble_size < 2) {
        throw std::invalid_argument("generate_ensemble: ensemble size must be at least 2");
    }
    const auto [k_lo, k_hi] = cfg.k_range(data);

    const Eigen::MatrixXd points =
        cfg.standardize ? standardize_features(data.objects) : data.objects;

    std::vector<BaseClustering> members;
    members.reserve(static_cast<std::size_t>(cfg.ensemble_size));
    for (int m = 0; m < cfg.ensemble_size; ++m) {
        Rng rng(Rng::derive(cfg.seed, static_cast<std::uint64_t>(m)));
        const int k =
            k_lo + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k_hi - k_lo + 1)));
        members.push_back(kmeans(points, k, rng, cfg.kmeans_max_iters));
    }
    return Ensemble(std::move(members));
}

}  // namespace ecpcs
