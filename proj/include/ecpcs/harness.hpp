#pragma once

#include "ecpcs/ensemble_gen.hpp"
#include "ecpcs/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ecpcs {

enum class KPolicy { TrueK, BestK, Fixed };

std::string_view to_string(KPolicy policy);

/// One experiment: dataset, method, cluster-count policy, ensemble settings,
/// and the repeat protocol.
struct RunSpec {
    std::string data_path;
    std::optional<std::string> label_column;
    std::string method = "ecpcs-hc";  // ecpcs-hc | ecpcs-mc | eac
    KPolicy k_policy = KPolicy::TrueK;
    int fixed_k = 0;                  // used when k_policy == Fixed
    EnsembleConfig ensemble;          // M, seed, k-range overrides, standardize
    int t = 20;
    int repeats = 20;
    std::optional<std::string> fixture_path;  // pre-built ensemble, bypasses k-means
    std::optional<std::string> dump_dir;      // write Z/A/B CSVs for the first run
    std::string output_path;                  // report JSON (+ sibling CSV); empty = no files
    int threads = 0;                          // 0 = hardware concurrency

    void validate() const;
};

struct RunRecord {
    int run_index = 0;  // 1-based
    std::uint64_t seed = 0;
    int k = 0;          // cluster count evaluated; for best-k, the NMI-best k
    int actual_k = 0;
    std::optional<double> nmi_score;
    std::optional<double> ari_score;
    std::optional<int> best_k_nmi;
    std::optional<int> best_k_ari;
    bool nmi_degenerate = false;
    int tie_events = 0;
    double wall_ms = 0.0;
    std::string error;  // empty on success
};

struct Aggregate {
    int completed = 0;
    std::optional<double> nmi_mean;
    std::optional<double> nmi_stddev;  // sample standard deviation
    std::optional<double> ari_mean;
    std::optional<double> ari_stddev;
    double wall_ms_mean = 0.0;
};

/// Mean and sample standard deviation over the completed runs.
Aggregate aggregate_records(const std::vector<RunRecord>& records);

struct RunBlock {
    std::string axis_name;  // empty for plain runs, "M" or "t" for sweeps
    int axis_value = 0;
    std::vector<RunRecord> runs;
    Aggregate aggregate;
    bool incomplete = false;  // some run failed
};

struct Report {
    RunSpec spec;
    std::string dataset_name;
    int n_objects = 0;
    int dimension = 0;
    int n_classes = 0;
    std::vector<RunBlock> blocks;

    nlohmann::json to_json() const;
    std::string to_csv() const;

    /// Write the JSON report to spec.output_path and the per-run CSV next to
    /// it (same path with a .csv extension). No-op when output_path is empty.
    void write_files() const;
};

/// Ensemble from a fixture JSON file: {"assignments": [[...], ...]}.
Ensemble load_fixture_ensemble(const std::string& path, int n_objects);

/// Execute spec.repeats runs, run r seeded from (spec.ensemble.seed, r).
Report run(const RunSpec& spec);

/// One run block per axis value (axis is "M" or "t"), sharing the base seed.
Report sweep(const RunSpec& spec, const std::string& axis, const std::vector<int>& values);

}  // namespace ecpcs
