#include "ecpcs/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecpcs {

namespace {

std::int64_t pairs_of(std::int64_t n) { return n * (n - 1) / 2; }

void check_labels(std::span<const int> test, std::span<const int> truth) {
    if (test.size() != truth.size()) {
        throw std::invalid_argument("label vectors differ in length");
    }
    if (test.empty()) {
        throw std::invalid_argument("empty label vectors");
    }
}

}  // namespace

ContingencyTable ContingencyTable::build(std::span<const int> test, std::span<const int> truth) {
    check_labels(test, truth);
    int n_test = 0;
    int n_truth = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        if (test[i] < 0 || truth[i] < 0) {
            throw std::invalid_argument("negative cluster id");
        }
        n_test = std::max(n_test, test[i] + 1);
        n_truth = std::max(n_truth, truth[i] + 1);
    }

    ContingencyTable table;
    table.counts.assign(static_cast<std::size_t>(n_test),
                        std::vector<std::int64_t>(static_cast<std::size_t>(n_truth), 0));
    table.test_sizes.assign(static_cast<std::size_t>(n_test), 0);
    table.truth_sizes.assign(static_cast<std::size_t>(n_truth), 0);
    table.total = static_cast<std::int64_t>(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
        ++table.counts[static_cast<std::size_t>(test[i])][static_cast<std::size_t>(truth[i])];
        ++table.test_sizes[static_cast<std::size_t>(test[i])];
        ++table.truth_sizes[static_cast<std::size_t>(truth[i])];
    }
    return table;
}

bool ContingencyTable::is_exact_match() const {
    for (std::size_t i = 0; i < counts.size(); ++i) {
        for (std::size_t j = 0; j < counts[i].size(); ++j) {
            const std::int64_t c = counts[i][j];
            if (c != 0 && (c != test_sizes[i] || c != truth_sizes[j])) {
                return false;
            }
        }
    }
    return true;
}

PairCounts PairCounts::from_contingency(const ContingencyTable& table) {
    PairCounts pc;
    for (const auto& row : table.counts) {
        for (std::int64_t c : row) {
            pc.same_same += pairs_of(c);
        }
    }
    std::int64_t test_pairs = 0;
    for (std::int64_t s : table.test_sizes) test_pairs += pairs_of(s);
    std::int64_t truth_pairs = 0;
    for (std::int64_t s : table.truth_sizes) truth_pairs += pairs_of(s);

    pc.same_diff = test_pairs - pc.same_same;
    pc.diff_same = truth_pairs - pc.same_same;
    pc.diff_diff = pairs_of(table.total) - pc.same_same - pc.same_diff - pc.diff_same;
    return pc;
}

double nmi(std::span<const int> test, std::span<const int> truth, bool* degenerate) {
    const ContingencyTable table = ContingencyTable::build(test, truth);
    if (degenerate != nullptr) *degenerate = false;

    // Shared term so that identical partitions produce bitwise-equal sums in
    // the numerator and both entropy factors.
    const auto term = [](std::int64_t weight, std::int64_t num, std::int64_t den) {
        return static_cast<double>(weight) *
               std::log(static_cast<double>(num) / static_cast<double>(den));
    };

    const std::int64_t n = table.total;
    double mutual = 0.0;
    for (std::size_t i = 0; i < table.counts.size(); ++i) {
        for (std::size_t j = 0; j < table.counts[i].size(); ++j) {
            const std::int64_t c = table.counts[i][j];
            if (c > 0) {
                mutual += term(c, c * n, table.test_sizes[i] * table.truth_sizes[j]);
            }
        }
    }
    double test_entropy = 0.0;
    for (std::int64_t s : table.test_sizes) {
        if (s > 0) test_entropy += term(s, s * n, s * s);
    }
    double truth_entropy = 0.0;
    for (std::int64_t s : table.truth_sizes) {
        if (s > 0) truth_entropy += term(s, s * n, s * s);
    }

    if (test_entropy == 0.0 || truth_entropy == 0.0) {
        // Single-cluster side: the score is 0/0; define it as 0.
        if (degenerate != nullptr) *degenerate = true;
        return 0.0;
    }
    if (table.is_exact_match()) {
        return 1.0;
    }
    return mutual / std::sqrt(test_entropy * truth_entropy);
}

double ari(std::span<const int> test, std::span<const int> truth) {
    const ContingencyTable table = ContingencyTable::build(test, truth);
    const PairCounts pc = PairCounts::from_contingency(table);

    if (pc.same_diff == 0 && pc.diff_same == 0) {
        return 1.0;  // every pair agrees
    }
    const double numerator =
        2.0 * (static_cast<double>(pc.diff_diff) * static_cast<double>(pc.same_same) -
               static_cast<double>(pc.diff_same) * static_cast<double>(pc.same_diff));
    const double denominator =
        (static_cast<double>(pc.diff_diff) + static_cast<double>(pc.diff_same)) *
            (static_cast<double>(pc.diff_same) + static_cast<double>(pc.same_same)) +
        (static_cast<double>(pc.diff_diff) + static_cast<double>(pc.same_diff)) *
            (static_cast<double>(pc.same_diff) + static_cast<double>(pc.same_same));
    return numerator / denominator;
}

}  // namespace ecpcs
