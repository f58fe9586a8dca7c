#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ecpcs {

/// Joint cluster-size counts of two labelings over the same objects.
struct ContingencyTable {
    std::vector<std::vector<std::int64_t>> counts;  // n_test x n_truth
    std::vector<std::int64_t> test_sizes;           // row sums
    std::vector<std::int64_t> truth_sizes;          // column sums
    std::int64_t total = 0;

    static ContingencyTable build(std::span<const int> test, std::span<const int> truth);

    /// True when the two labelings induce the same partition (each test
    /// cluster coincides with exactly one truth cluster and vice versa).
    bool is_exact_match() const;
};

/// Counts of unordered object pairs by agreement pattern.
/// same_same + diff_diff + same_diff + diff_same == n(n-1)/2.
struct PairCounts {
    std::int64_t same_same = 0;  // same cluster in both labelings
    std::int64_t diff_diff = 0;  // different clusters in both
    std::int64_t same_diff = 0;  // same in test, different in truth
    std::int64_t diff_same = 0;  // different in test, same in truth

    static PairCounts from_contingency(const ContingencyTable& table);
};

/// Normalized mutual information in [0, 1], natural logarithms.
/// A single-cluster side makes the score 0 and sets `degenerate`.
double nmi(std::span<const int> test, std::span<const int> truth, bool* degenerate = nullptr);

/// Adjusted Rand index in [-1, 1] from pair agreement counts.
double ari(std::span<const int> test, std::span<const int> truth);

}  // namespace ecpcs
