#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ecpcs {

/// N objects with d real-valued features and optional ground-truth class ids.
struct Dataset {
    Eigen::MatrixXd objects;                // N x d
    std::optional<std::vector<int>> labels; // contiguous 0..K-1 when present
    std::string name;

    Eigen::Index n_objects() const { return objects.rows(); }
    Eigen::Index dimension() const { return objects.cols(); }

    /// Number of ground-truth classes, or 0 when labels are absent.
    int n_classes() const;

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// One partition of the N objects into n_clusters non-empty clusters with
/// dense local ids 0..n_clusters-1.
struct BaseClustering {
    std::vector<int> assignments;
    int n_clusters = 0;

    void validate() const;
};

/// M base clusterings over the same objects, plus the registry that maps each
/// (member, local cluster id) pair to a global cluster id 0..N_c-1 and back.
class Ensemble {
public:
    explicit Ensemble(std::vector<BaseClustering> members);

    int n_objects() const { return n_objects_; }
    int size() const { return static_cast<int>(members_.size()); }
    const BaseClustering& member(int m) const { return members_[static_cast<std::size_t>(m)]; }

    /// N_c, the total number of clusters across all members.
    int total_clusters() const { return offsets_.back(); }

    int global_id(int m, int local) const;
    std::pair<int, int> local_id(int global) const;  // (member, local)

    /// Object count of each global cluster.
    std::vector<int> cluster_sizes() const;

    /// Object ids of each global cluster, ascending.
    std::vector<std::vector<int>> cluster_members() const;

private:
    std::vector<BaseClustering> members_;
    std::vector<int> offsets_;  // offsets_[m] = first global id of member m; back() = N_c
    int n_objects_ = 0;
};

}  // namespace ecpcs
