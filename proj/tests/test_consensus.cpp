#include "ecpcs/coassoc.hpp"
#include "ecpcs/consensus.hpp"
#include "ecpcs/eval.hpp"
#include "ecpcs/propagation.hpp"
#include "ecpcs/rng.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace ecpcs;

namespace {

SquareMatrix random_similarity(int n, Rng& rng) {
    SquareMatrix s = SquareMatrix::identity(n, MatrixRole::Similarity);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = rng.uniform_double();
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

// Two perfect blocks: similarity 1 inside, 0 across.
SquareMatrix block_similarity(int n, int split) {
    SquareMatrix s = SquareMatrix::zero(n, MatrixRole::Similarity);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const bool same = (i < split) == (j < split);
            s(i, j) = same ? 1.0 : 0.0;
        }
    }
    return s;
}

Ensemble identical_members(const std::vector<int>& assignments, int n_clusters, int copies) {
    std::vector<BaseClustering> members(static_cast<std::size_t>(copies),
                                        BaseClustering{assignments, n_clusters});
    return Ensemble(std::move(members));
}

// Direct cross-pair mean between two leaf sets over the original matrix.
double direct_mean(const SquareMatrix& b, const std::vector<int>& left,
                   const std::vector<int>& right) {
    double sum = 0.0;
    for (int u : left) {
        for (int v : right) {
            sum += b(u, v);
        }
    }
    return sum / (static_cast<double>(left.size()) * static_cast<double>(right.size()));
}

}  // namespace

TEST_CASE("dendrogram of two leaves is a single merge at b_01") {
    SquareMatrix b = SquareMatrix::identity(2, MatrixRole::Coassociation);
    b(0, 1) = b(1, 0) = 0.37;
    const Dendrogram dendrogram = hc_build_dendrogram(b);
    REQUIRE(dendrogram.merges.size() == 1);
    CHECK(dendrogram.merges[0].left == 0);
    CHECK(dendrogram.merges[0].right == 1);
    CHECK(dendrogram.merges[0].similarity == 0.37);
    CHECK(dendrogram.merges[0].merged == 2);
}

TEST_CASE("block-diagonal similarity: last merge at 0, cut recovers blocks") {
    const SquareMatrix b = block_similarity(7, 3);
    const Dendrogram dendrogram = hc_build_dendrogram(b);
    CHECK(dendrogram.merges.back().similarity == 0.0);

    const ConsensusResult cut = hc_cut(dendrogram, 2);
    CHECK(cut.labels == std::vector<int>{0, 0, 0, 1, 1, 1, 1});
}

TEST_CASE("hc_cut extremes: one cluster and all singletons") {
    Rng rng(3);
    const SquareMatrix b = random_similarity(6, rng);
    const Dendrogram dendrogram = hc_build_dendrogram(b);

    const ConsensusResult all_one = hc_cut(dendrogram, 1);
    for (int label : all_one.labels) CHECK(label == 0);

    const ConsensusResult singletons = hc_cut(dendrogram, 6);
    for (int i = 0; i < 6; ++i) CHECK(singletons.labels[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("agglomeration matches the recompute-every-step oracle") {
    Rng rng(53);
    for (int round = 0; round < 10; ++round) {
        const int n = 7 + static_cast<int>(rng.uniform_int(9));
        const SquareMatrix b = random_similarity(n, rng);
        const Dendrogram fast = hc_build_dendrogram(b);
        const Dendrogram naive = oracles::recompute_average_link(b);
        REQUIRE(fast.merges.size() == naive.merges.size());
        for (std::size_t q = 0; q < fast.merges.size(); ++q) {
            CHECK(fast.merges[q].left == naive.merges[q].left);
            CHECK(fast.merges[q].right == naive.merges[q].right);
            CHECK(fast.merges[q].merged == naive.merges[q].merged);
            CHECK(fast.merges[q].similarity ==
                  doctest::Approx(naive.merges[q].similarity).epsilon(1e-12));
        }
    }
}

TEST_CASE("incremental average-link equals direct cross-pair means") {
    Rng rng(59);
    const int n = 50;
    const SquareMatrix b = random_similarity(n, rng);
    const Dendrogram dendrogram = hc_build_dendrogram(b);

    // Reconstruct the leaf set of every region, then check each recorded
    // merge similarity against the direct mean over the original matrix.
    std::vector<std::vector<int>> leaves(static_cast<std::size_t>(2 * n - 1));
    for (int i = 0; i < n; ++i) leaves[static_cast<std::size_t>(i)] = {i};
    for (const Merge& merge : dendrogram.merges) {
        const auto& left = leaves[static_cast<std::size_t>(merge.left)];
        const auto& right = leaves[static_cast<std::size_t>(merge.right)];
        CHECK(merge.similarity == doctest::Approx(direct_mean(b, left, right)).epsilon(1e-12));
        auto& merged = leaves[static_cast<std::size_t>(merge.merged)];
        merged = left;
        merged.insert(merged.end(), right.begin(), right.end());
    }
}

TEST_CASE("mc_partition recovers two all-ones blocks") {
    SquareMatrix z = block_similarity(6, 3);
    for (int i = 0; i < 6; ++i) z(i, i) = 1.0;
    Rng rng(61);
    const MetaClustering meta = mc_partition(z, 2, rng);
    CHECK_FALSE(meta.degenerate);
    CHECK(meta.assignment[0] == meta.assignment[1]);
    CHECK(meta.assignment[1] == meta.assignment[2]);
    CHECK(meta.assignment[3] == meta.assignment[4]);
    CHECK(meta.assignment[4] == meta.assignment[5]);
    CHECK(meta.assignment[0] != meta.assignment[3]);
}

TEST_CASE("mc_partition on an all-isolated graph reports the degenerate pool") {
    const SquareMatrix z = SquareMatrix::identity(5, MatrixRole::Similarity);
    Rng rng(67);
    CHECK_THROWS_WITH_AS(mc_partition(z, 2, rng),
                         "mc_partition: requested 2 meta-clusters but only 0 graph nodes have "
                         "positive degree",
                         std::invalid_argument);
}

TEST_CASE("mc_partition matches the exhaustive normalized-cut oracle at 6 nodes") {
    // Two noisy blocks: within ~0.9, across ~0.1.
    SquareMatrix z = SquareMatrix::identity(6, MatrixRole::Similarity);
    Rng noise(71);
    for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) {
            const bool same = (i < 3) == (j < 3);
            const double v = (same ? 0.9 : 0.1) + 0.05 * (noise.uniform_double() - 0.5);
            z(i, j) = v;
            z(j, i) = v;
        }
    }
    Rng rng(73);
    const MetaClustering meta = mc_partition(z, 2, rng);

    SquareMatrix w = z;
    for (int i = 0; i < 6; ++i) w(i, i) = 0.0;
    const std::vector<int> oracle = oracles::exhaustive_ncut_bipartition(w);
    CHECK(oracles::same_partition(meta.assignment, oracle));
    CHECK(oracle[0] == oracle[1]);
    CHECK(oracle[0] == oracle[2]);
    CHECK(oracle[3] == oracle[4]);
    CHECK(oracle[3] == oracle[5]);
    CHECK(oracle[0] != oracle[3]);
}

TEST_CASE("mc_vote on identical members recovers the original clustering") {
    const std::vector<int> original{0, 0, 1, 1, 2, 2, 2};
    const Ensemble ensemble = identical_members(original, 3, 5);
    const SquareMatrix z = trajectory_similarity(
        propagate(build_transition_matrix(build_cluster_graph(ensemble)), 4));
    Rng rng(79);
    const MetaClustering meta = mc_partition(z, 3, rng);
    const ConsensusResult consensus = mc_vote(ensemble, meta, rng);
    CHECK(consensus.tie_events == 0);
    CHECK(ari(consensus.labels, original) == 1.0);
    CHECK(nmi(consensus.labels, original) == 1.0);
}

TEST_CASE("mc_vote: equal voting scores invoke the tie-break") {
    // Three members over 3 objects; object 0 sits in clusters g0, g2, g4.
    BaseClustering m1{{0, 0, 1}, 2};  // g0 {0,1}, g1 {2}
    BaseClustering m2{{0, 1, 0}, 2};  // g2 {0,2}, g3 {1}
    BaseClustering m3{{0, 1, 1}, 2};  // g4 {0},   g5 {1,2}
    const Ensemble ensemble({m1, m2, m3});

    MetaClustering meta;
    meta.k = 2;
    meta.assignment = {0, 0, 0, 0, 1, 1};  // MC_0 {g0,g1,g2,g3}, MC_1 {g4,g5}

    // Object 0: 2 of 4 clusters in MC_0 (score 0.5) and 1 of 2 in MC_1 (0.5).
    Rng rng(83);
    const ConsensusResult consensus = mc_vote(ensemble, meta, rng);
    CHECK(consensus.tie_events >= 1);

    Rng again(83);
    const ConsensusResult repeat = mc_vote(ensemble, meta, again);
    CHECK(consensus.labels == repeat.labels);
    CHECK(consensus.tie_events == repeat.tie_events);
}

TEST_CASE("mc_vote against a hand voting table") {
    BaseClustering m1{{0, 0, 1, 1, 1}, 2};  // g0 {0,1}, g1 {2,3,4}
    BaseClustering m2{{0, 0, 0, 1, 1}, 2};  // g2 {0,1,2}, g3 {3,4}
    BaseClustering m3{{0, 0, 1, 2, 2}, 3};  // g4 {0,1}, g5 {2}, g6 {3,4}
    const Ensemble ensemble({m1, m2, m3});

    MetaClustering meta;
    meta.k = 2;
    meta.assignment = {0, 1, 0, 1, 0, 1, 1};  // MC_0 {g0,g2,g4}, MC_1 {g1,g3,g5,g6}

    // Scores: objects 0,1 -> (1, 0); object 2 -> (1/3, 1/2);
    // objects 3,4 -> (0, 3/4). No ties anywhere.
    Rng rng(89);
    const ConsensusResult consensus = mc_vote(ensemble, meta, rng);
    CHECK(consensus.labels == std::vector<int>{0, 0, 1, 1, 1});
    CHECK(consensus.tie_events == 0);
    CHECK(consensus.actual_k == 2);
}

TEST_CASE("voting scores weighted by meta sizes always sum to M") {
    Rng rng(97);
    for (int round = 0; round < 5; ++round) {
        const int n = 8 + static_cast<int>(rng.uniform_int(8));
        std::vector<BaseClustering> members;
        for (int m = 0; m < 5; ++m) {
            const int k = 2 + static_cast<int>(rng.uniform_int(3));
            std::vector<int> assignments(static_cast<std::size_t>(n));
            for (int& id : assignments) {
                id = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k)));
            }
            for (int c = 0; c < k; ++c) assignments[static_cast<std::size_t>(c)] = c;
            members.push_back(BaseClustering{std::move(assignments), k});
        }
        const Ensemble ensemble(std::move(members));
        const int n_clusters = ensemble.total_clusters();

        MetaClustering meta;
        meta.k = 3;
        meta.assignment.resize(static_cast<std::size_t>(n_clusters));
        for (int c = 0; c < n_clusters; ++c) {
            meta.assignment[static_cast<std::size_t>(c)] =
                static_cast<int>(rng.uniform_int(3));
        }

        std::vector<double> meta_sizes(3, 0.0);
        for (int label : meta.assignment) meta_sizes[static_cast<std::size_t>(label)] += 1.0;

        // Recompute the scores the way the definition reads.
        for (int i = 0; i < n; ++i) {
            double weighted = 0.0;
            for (int j = 0; j < 3; ++j) {
                if (meta_sizes[static_cast<std::size_t>(j)] == 0.0) continue;
                double hits = 0.0;
                for (int m = 0; m < ensemble.size(); ++m) {
                    const int gid = ensemble.global_id(
                        m, ensemble.member(m).assignments[static_cast<std::size_t>(i)]);
                    if (meta.assignment[static_cast<std::size_t>(gid)] == j) hits += 1.0;
                }
                const double score = hits / meta_sizes[static_cast<std::size_t>(j)];
                CHECK(score >= 0.0);
                CHECK(score <= 1.0);
                weighted += meta_sizes[static_cast<std::size_t>(j)] * score;
            }
            CHECK(weighted == doctest::Approx(static_cast<double>(ensemble.size())).epsilon(1e-12));
        }
    }
}

TEST_CASE("eac equals ecpcs-hc when Z has zero off-diagonal entries") {
    BaseClustering m1{{0, 0, 1, 1, 2}, 3};
    BaseClustering m2{{0, 1, 1, 2, 2}, 3};
    BaseClustering m3{{0, 0, 0, 1, 1}, 2};
    const Ensemble ensemble({m1, m2, m3});
    const SquareMatrix a = coassociation(ensemble);
    const SquareMatrix z = SquareMatrix::identity(ensemble.total_clusters(),
                                                  MatrixRole::Similarity);
    const SquareMatrix b = enhanced_coassociation(ensemble, z);

    const ConsensusResult from_eac = eac_baseline(a, 2);
    const ConsensusResult from_hc = hc_cut(hc_build_dendrogram(b), 2);
    CHECK(from_eac.labels == from_hc.labels);
    CHECK(from_eac.method == ConsensusMethod::EAC);
}

TEST_CASE("eac on identical members recovers the original clustering") {
    const std::vector<int> original{0, 1, 1, 0, 2, 2};
    const Ensemble ensemble = identical_members(original, 3, 4);
    const ConsensusResult consensus = eac_baseline(coassociation(ensemble), 3);
    CHECK(ari(consensus.labels, original) == 1.0);
}

TEST_CASE("eac agglomeration agrees with the oracle over A") {
    BaseClustering m1{{0, 0, 1, 1, 2, 2}, 3};
    BaseClustering m2{{0, 1, 1, 2, 2, 0}, 3};
    BaseClustering m3{{0, 0, 0, 1, 1, 1}, 2};
    const Ensemble ensemble({m1, m2, m3});
    const SquareMatrix a = coassociation(ensemble);
    const Dendrogram fast = hc_build_dendrogram(a);
    const Dendrogram naive = oracles::recompute_average_link(a);
    for (std::size_t q = 0; q < fast.merges.size(); ++q) {
        CHECK(fast.merges[q].left == naive.merges[q].left);
        CHECK(fast.merges[q].right == naive.merges[q].right);
        CHECK(fast.merges[q].similarity ==
              doctest::Approx(naive.merges[q].similarity).epsilon(1e-12));
    }
}

TEST_CASE("full self-consistency: both consensus functions reproduce identical members") {
    const std::vector<int> original{0, 0, 0, 1, 1, 2, 2, 2, 2};
    const Ensemble ensemble = identical_members(original, 3, 4);
    const SquareMatrix z = trajectory_similarity(
        propagate(build_transition_matrix(build_cluster_graph(ensemble)), 20));
    const SquareMatrix b = enhanced_coassociation(ensemble, z);

    const ConsensusResult hc = hc_cut(hc_build_dendrogram(b), 3);
    CHECK(nmi(hc.labels, original) == 1.0);
    CHECK(ari(hc.labels, original) == 1.0);

    Rng rng(101);
    const MetaClustering meta = mc_partition(z, 3, rng);
    const ConsensusResult mc = mc_vote(ensemble, meta, rng);
    CHECK(nmi(mc.labels, original) == 1.0);
    CHECK(ari(mc.labels, original) == 1.0);
}

TEST_CASE("consensus determinism across identical seeds") {
    Rng data_rng(103);
    const int n = 10;
    std::vector<BaseClustering> members;
    for (int m = 0; m < 4; ++m) {
        std::vector<int> assignments(static_cast<std::size_t>(n));
        for (int& id : assignments) id = static_cast<int>(data_rng.uniform_int(3));
        for (int c = 0; c < 3; ++c) assignments[static_cast<std::size_t>(c)] = c;
        members.push_back(BaseClustering{std::move(assignments), 3});
    }
    const Ensemble ensemble(std::move(members));
    const SquareMatrix z = trajectory_similarity(
        propagate(build_transition_matrix(build_cluster_graph(ensemble)), 5));

    Rng rng_a(107);
    Rng rng_b(107);
    const MetaClustering meta_a = mc_partition(z, 3, rng_a);
    const MetaClustering meta_b = mc_partition(z, 3, rng_b);
    CHECK(meta_a.assignment == meta_b.assignment);

    const ConsensusResult vote_a = mc_vote(ensemble, meta_a, rng_a);
    const ConsensusResult vote_b = mc_vote(ensemble, meta_b, rng_b);
    CHECK(vote_a.labels == vote_b.labels);
    CHECK(vote_a.tie_events == vote_b.tie_events);
}
