#include "ecpcs/consensus.hpp"

#include "ecpcs/eigendecomposition.hpp"
#include "ecpcs/ensemble_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ecpcs {

namespace {

// Best merge partner of one region: highest similarity, then the smallest
// partner region id. Only partners with a larger region id are tracked, so
// every active pair is owned by exactly one side.
struct PartnerCache {
    double value = -std::numeric_limits<double>::infinity();
    int partner_slot = -1;
};

}  // namespace

Dendrogram hc_build_dendrogram(const SquareMatrix& b) {
    const int n = static_cast<int>(b.order());
    if (n < 2) {
        throw std::invalid_argument("hc_build_dendrogram: need at least 2 objects");
    }
    if (!b.is_symmetric(1e-10)) {
        throw std::invalid_argument("hc_build_dendrogram: similarity matrix not symmetric");
    }

    Eigen::MatrixXd s = b.entries();  // working similarities, slot-indexed
    std::vector<int> region(static_cast<std::size_t>(n));
    std::iota(region.begin(), region.end(), 0);
    std::vector<int> size(static_cast<std::size_t>(n), 1);
    std::vector<bool> active(static_cast<std::size_t>(n), true);
    std::vector<PartnerCache> cache(static_cast<std::size_t>(n));

    const auto recompute_cache = [&](int slot) {
        PartnerCache best;
        const int my_region = region[static_cast<std::size_t>(slot)];
        for (int other = 0; other < n; ++other) {
            if (other == slot || !active[static_cast<std::size_t>(other)]) continue;
            if (region[static_cast<std::size_t>(other)] < my_region) continue;
            const double value = s(slot, other);
            if (value > best.value ||
                (value == best.value && best.partner_slot >= 0 &&
                 region[static_cast<std::size_t>(other)] <
                     region[static_cast<std::size_t>(best.partner_slot)])) {
                best.value = value;
                best.partner_slot = other;
            }
        }
        cache[static_cast<std::size_t>(slot)] = best;
    };

    for (int slot = 0; slot < n; ++slot) {
        recompute_cache(slot);
    }

    Dendrogram out;
    out.n_leaves = n;
    out.merges.reserve(static_cast<std::size_t>(n - 1));

    for (int q = 0; q < n - 1; ++q) {
        // Global best pair: highest similarity, ties by smallest (left, right).
        int best_slot = -1;
        double best_value = -std::numeric_limits<double>::infinity();
        for (int slot = 0; slot < n; ++slot) {
            if (!active[static_cast<std::size_t>(slot)]) continue;
            const PartnerCache& c = cache[static_cast<std::size_t>(slot)];
            if (c.partner_slot < 0) continue;
            if (c.value > best_value ||
                (c.value == best_value &&
                 region[static_cast<std::size_t>(slot)] <
                     region[static_cast<std::size_t>(best_slot)])) {
                best_value = c.value;
                best_slot = slot;
            }
        }

        const int keep = best_slot;
        const int drop = cache[static_cast<std::size_t>(keep)].partner_slot;
        const int left = region[static_cast<std::size_t>(keep)];
        const int right = region[static_cast<std::size_t>(drop)];
        const int merged = n + q;
        out.merges.push_back(Merge{left, right, best_value, merged});

        // Size-weighted average-link update into the kept slot.
        const double w_keep = static_cast<double>(size[static_cast<std::size_t>(keep)]);
        const double w_drop = static_cast<double>(size[static_cast<std::size_t>(drop)]);
        const double w_total = w_keep + w_drop;
        for (int other = 0; other < n; ++other) {
            if (!active[static_cast<std::size_t>(other)] || other == keep || other == drop) {
                continue;
            }
            const double value = (w_keep * s(other, keep) + w_drop * s(other, drop)) / w_total;
            s(other, keep) = value;
            s(keep, other) = value;
        }
        active[static_cast<std::size_t>(drop)] = false;
        region[static_cast<std::size_t>(keep)] = merged;
        size[static_cast<std::size_t>(keep)] =
            static_cast<int>(w_keep) + static_cast<int>(w_drop);

        // The fused region has the largest id, so it owns no pairs itself.
        cache[static_cast<std::size_t>(keep)] = PartnerCache{};

        for (int other = 0; other < n; ++other) {
            if (!active[static_cast<std::size_t>(other)] || other == keep) continue;
            PartnerCache& c = cache[static_cast<std::size_t>(other)];
            if (c.partner_slot == keep || c.partner_slot == drop) {
                recompute_cache(other);
            } else {
                // New candidate pair (other, merged); on equality the cached
                // partner keeps priority because its region id is smaller.
                const double value = s(other, keep);
                if (value > c.value) {
                    c.value = value;
                    c.partner_slot = keep;
                }
            }
        }
    }
    return out;
}

ConsensusResult hc_cut(const Dendrogram& dendrogram, int k) {
    const int n = dendrogram.n_leaves;
    if (k < 1 || k > n) {
        throw std::invalid_argument("hc_cut: require 1 <= k <= leaf count");
    }
    if (static_cast<int>(dendrogram.merges.size()) != n - 1) {
        throw std::invalid_argument("hc_cut: malformed dendrogram");
    }

    // Apply all but the last k-1 merges.
    std::vector<int> parent(static_cast<std::size_t>(2 * n - 1));
    std::iota(parent.begin(), parent.end(), 0);
    for (int q = 0; q < n - k; ++q) {
        const Merge& merge = dendrogram.merges[static_cast<std::size_t>(q)];
        parent[static_cast<std::size_t>(merge.left)] = merge.merged;
        parent[static_cast<std::size_t>(merge.right)] = merge.merged;
    }
    const auto find_root = [&parent](int node) {
        while (parent[static_cast<std::size_t>(node)] != node) {
            parent[static_cast<std::size_t>(node)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(node)])];
            node = parent[static_cast<std::size_t>(node)];
        }
        return node;
    };

    // Label surviving regions by the order of their smallest leaf.
    ConsensusResult result;
    result.requested_k = k;
    result.labels.assign(static_cast<std::size_t>(n), -1);
    int next_label = 0;
    std::vector<int> root_label(static_cast<std::size_t>(2 * n - 1), -1);
    for (int leaf = 0; leaf < n; ++leaf) {
        const int root = find_root(leaf);
        if (root_label[static_cast<std::size_t>(root)] < 0) {
            root_label[static_cast<std::size_t>(root)] = next_label++;
        }
        result.labels[static_cast<std::size_t>(leaf)] = root_label[static_cast<std::size_t>(root)];
    }
    result.actual_k = next_label;
    result.method = ConsensusMethod::HC;
    return result;
}

MetaClustering mc_partition(const SquareMatrix& z, int k, Rng& rng) {
    const int n = static_cast<int>(z.order());
    if (k < 2 || k > n) {
        throw std::invalid_argument("mc_partition: require 2 <= k <= node count");
    }
    if (!z.is_symmetric(1e-10)) {
        throw std::invalid_argument("mc_partition: similarity matrix not symmetric");
    }

    // Zero-diagonal weights and degrees; zero-degree nodes sit out the cut.
    Eigen::MatrixXd w = z.entries();
    w.diagonal().setZero();
    const Eigen::VectorXd degrees = w.rowwise().sum();
    std::vector<int> positive;
    positive.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (degrees(i) > 0.0) positive.push_back(i);
    }
    const int n_pos = static_cast<int>(positive.size());
    if (k > n_pos) {
        throw std::invalid_argument(
            "mc_partition: requested " + std::to_string(k) + " meta-clusters but only " +
            std::to_string(n_pos) + " graph nodes have positive degree");
    }

    // Symmetric normalized affinity over the positive-degree subgraph.
    Eigen::MatrixXd affinity(n_pos, n_pos);
    for (int a = 0; a < n_pos; ++a) {
        for (int c = 0; c < n_pos; ++c) {
            affinity(a, c) =
                w(positive[static_cast<std::size_t>(a)], positive[static_cast<std::size_t>(c)]) /
                std::sqrt(degrees(positive[static_cast<std::size_t>(a)]) *
                          degrees(positive[static_cast<std::size_t>(c)]));
        }
    }
    const EigenPairs pairs =
        symmetric_eigendecomposition(SquareMatrix(std::move(affinity), MatrixRole::General), k);

    // Row-normalized spectral embedding.
    Eigen::MatrixXd embedding = pairs.vectors;
    for (int r = 0; r < n_pos; ++r) {
        const double norm = embedding.row(r).norm();
        if (norm > 0.0) embedding.row(r) /= norm;
    }

    // Seeded k-means on the embedding rows, best of 10 restarts by inertia.
    detail::LloydResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < 10; ++restart) {
        detail::LloydResult candidate = detail::lloyd(embedding, k, rng, 100);
        if (candidate.inertia < best.inertia) {
            best = std::move(candidate);
        }
    }

    MetaClustering meta;
    meta.k = k;
    meta.assignment.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> meta_sizes(static_cast<std::size_t>(k), 0);
    for (int a = 0; a < n_pos; ++a) {
        const int label = best.assignments[static_cast<std::size_t>(a)];
        meta.assignment[static_cast<std::size_t>(positive[static_cast<std::size_t>(a)])] = label;
        ++meta_sizes[static_cast<std::size_t>(label)];
    }

    // Attach zero-degree nodes: nearest positive-degree node by Z, falling
    // back to the largest meta-cluster when the whole Z row is zero.
    const int largest_meta = static_cast<int>(
        std::max_element(meta_sizes.begin(), meta_sizes.end()) - meta_sizes.begin());
    for (int i = 0; i < n; ++i) {
        if (meta.assignment[static_cast<std::size_t>(i)] >= 0) continue;
        int nearest = -1;
        double nearest_sim = 0.0;
        for (int u : positive) {
            if (z(i, u) > nearest_sim) {
                nearest_sim = z(i, u);
                nearest = u;
            }
        }
        meta.assignment[static_cast<std::size_t>(i)] =
            nearest >= 0 ? meta.assignment[static_cast<std::size_t>(nearest)] : largest_meta;
    }

    std::vector<bool> used(static_cast<std::size_t>(k), false);
    for (int label : meta.assignment) {
        used[static_cast<std::size_t>(label)] = true;
    }
    meta.degenerate = std::find(used.begin(), used.end(), false) != used.end();
    return meta;
}

ConsensusResult mc_vote(const Ensemble& ensemble, const MetaClustering& meta, Rng& rng) {
    const int n = ensemble.n_objects();
    const int n_clusters = ensemble.total_clusters();
    if (static_cast<int>(meta.assignment.size()) != n_clusters) {
        throw std::invalid_argument("mc_vote: meta-clustering does not cover all clusters");
    }
    const int k = meta.k;

    std::vector<double> meta_sizes(static_cast<std::size_t>(k), 0.0);
    for (int label : meta.assignment) {
        meta_sizes[static_cast<std::size_t>(label)] += 1.0;
    }

    ConsensusResult result;
    result.method = ConsensusMethod::MC;
    result.requested_k = k;
    result.labels.assign(static_cast<std::size_t>(n), -1);

    std::vector<double> scores(static_cast<std::size_t>(k));
    std::vector<int> winner(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        std::fill(scores.begin(), scores.end(), 0.0);
        for (int m = 0; m < ensemble.size(); ++m) {
            const int gid =
                ensemble.global_id(m, ensemble.member(m).assignments[static_cast<std::size_t>(i)]);
            scores[static_cast<std::size_t>(meta.assignment[static_cast<std::size_t>(gid)])] += 1.0;
        }
        for (int j = 0; j < k; ++j) {
            if (meta_sizes[static_cast<std::size_t>(j)] > 0.0) {
                scores[static_cast<std::size_t>(j)] /= meta_sizes[static_cast<std::size_t>(j)];
            }
        }
        bool tied = false;
        winner[static_cast<std::size_t>(i)] =
            static_cast<int>(stable_argmax(scores, rng, &tied));
        if (tied) ++result.tie_events;
    }

    // Compact winning meta ids to contiguous labels, ascending by meta id.
    std::vector<int> label_of_meta(static_cast<std::size_t>(k), -1);
    for (int j = 0, next = 0; j < k; ++j) {
        if (std::find(winner.begin(), winner.end(), j) != winner.end()) {
            label_of_meta[static_cast<std::size_t>(j)] = next++;
        }
    }
    for (int i = 0; i < n; ++i) {
        result.labels[static_cast<std::size_t>(i)] =
            label_of_meta[static_cast<std::size_t>(winner[static_cast<std::size_t>(i)])];
    }
    result.actual_k =
        1 + *std::max_element(result.labels.begin(), result.labels.end());
    return result;
}

ConsensusResult eac_baseline(const SquareMatrix& a, int k) {
    ConsensusResult result = hc_cut(hc_build_dendrogram(a), k);
    result.method = ConsensusMethod::EAC;
    return result;
}

}  // namespace ecpcs
