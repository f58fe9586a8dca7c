#include "ecpcs/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace ecpcs {

int Dataset::n_classes() const {
    if (!labels.has_value() || labels->empty()) return 0;
    return *std::max_element(labels->begin(), labels->end()) + 1;
}

void Dataset::validate() const {
    if (n_objects() < 2) {
        throw std::invalid_argument("Dataset: need at least 2 objects");
    }
    if (dimension() < 1) {
        throw std::invalid_argument("Dataset: need at least 1 feature");
    }
    if (!objects.allFinite()) {
        throw std::invalid_argument("Dataset: non-finite feature value");
    }
    if (labels.has_value()) {
        if (static_cast<Eigen::Index>(labels->size()) != n_objects()) {
            throw std::invalid_argument("Dataset: label count differs from object count");
        }
        const int k = n_classes();
        if (k < 2) {
            throw std::invalid_argument("Dataset: labels must cover at least 2 classes");
        }
        std::vector<bool> used(static_cast<std::size_t>(k), false);
        for (int label : *labels) {
            if (label < 0 || label >= k) {
                throw std::invalid_argument("Dataset: label out of range");
            }
            used[static_cast<std::size_t>(label)] = true;
        }
        if (std::find(used.begin(), used.end(), false) != used.end()) {
            throw std::invalid_argument("Dataset: class ids must be contiguous 0..K-1");
        }
    }
}

void BaseClustering::validate() const {
    if (assignments.empty()) {
        throw std::invalid_argument("BaseClustering: no assignments");
    }
    if (n_clusters < 1) {
        throw std::invalid_argument("BaseClustering: need at least 1 cluster");
    }
    std::vector<bool> used(static_cast<std::size_t>(n_clusters), false);
    for (int id : assignments) {
        if (id < 0 || id >= n_clusters) {
            throw std::invalid_argument("BaseClustering: cluster id out of range");
        }
        used[static_cast<std::size_t>(id)] = true;
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) {
        throw std::invalid_argument("BaseClustering: empty cluster id");
    }
}

Ensemble::Ensemble(std::vector<BaseClustering> members) : members_(std::move(members)) {
    if (members_.size() < 1) {
        throw std::invalid_argument("Ensemble: need at least one member");
    }
    n_objects_ = static_cast<int>(members_.front().assignments.size());
    offsets_.reserve(members_.size() + 1);
    offsets_.push_back(0);
    for (const BaseClustering& member : members_) {
        member.validate();
        if (static_cast<int>(member.assignments.size()) != n_objects_) {
            throw std::invalid_argument("Ensemble: members disagree on object count");
        }
        offsets_.push_back(offsets_.back() + member.n_clusters);
    }
}

int Ensemble::global_id(int m, int local) const {
    if (m < 0 || m >= size()) {
        throw std::out_of_range("Ensemble::global_id: member index");
    }
    if (local < 0 || local >= members_[static_cast<std::size_t>(m)].n_clusters) {
        throw std::out_of_range("Ensemble::global_id: local cluster id");
    }
    return offsets_[static_cast<std::size_t>(m)] + local;
}

std::pair<int, int> Ensemble::local_id(int global) const {
    if (global < 0 || global >= total_clusters()) {
        throw std::out_of_range("Ensemble::local_id: global cluster id");
    }
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
    const int m = static_cast<int>(it - offsets_.begin()) - 1;
    return {m, global - offsets_[static_cast<std::size_t>(m)]};
}

std::vector<int> Ensemble::cluster_sizes() const {
    std::vector<int> sizes(static_cast<std::size_t>(total_clusters()), 0);
    for (int m = 0; m < size(); ++m) {
        const int offset = offsets_[static_cast<std::size_t>(m)];
        for (int id : members_[static_cast<std::size_t>(m)].assignments) {
            ++sizes[static_cast<std::size_t>(offset + id)];
        }
    }
    return sizes;
}

std::vector<std::vector<int>> Ensemble::cluster_members() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(total_clusters()));
    for (int m = 0; m < size(); ++m) {
        const int offset = offsets_[static_cast<std::size_t>(m)];
        const auto& assignments = members_[static_cast<std::size_t>(m)].assignments;
        for (int i = 0; i < n_objects_; ++i) {
            out[static_cast<std::size_t>(offset + assignments[static_cast<std::size_t>(i)])]
                .push_back(i);
        }
    }
    return out;
}

}  // namespace ecpcs
