#include "ecpcs/harness.hpp"

#include "ecpcs/coassoc.hpp"
#include "ecpcs/consensus.hpp"
#include "ecpcs/dataset_io.hpp"
#include "ecpcs/eval.hpp"
#include "ecpcs/propagation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ecpcs {

namespace {

constexpr int kBestKCap = 30;

bool method_known(const std::string& method) {
    return method == "ecpcs-hc" || method == "ecpcs-mc" || method == "eac";
}

// Cluster counts to evaluate in one run.
std::vector<int> candidate_ks(const RunSpec& spec, const Dataset& data) {
    switch (spec.k_policy) {
        case KPolicy::Fixed:
            return {spec.fixed_k};
        case KPolicy::TrueK:
            return {data.n_classes()};
        case KPolicy::BestK: {
            const int hi = std::min({2 * data.n_classes(), kBestKCap,
                                     static_cast<int>(data.n_objects())});
            std::vector<int> ks;
            for (int k = 2; k <= hi; ++k) ks.push_back(k);
            return ks;
        }
    }
    return {};
}

RunRecord run_once(const RunSpec& spec, const Dataset& data, const Ensemble* fixture,
                   int run_index) {
    RunRecord record;
    record.run_index = run_index;
    record.seed = Rng::derive(spec.ensemble.seed, static_cast<std::uint64_t>(run_index));

    const auto started = std::chrono::steady_clock::now();

    EnsembleConfig cfg = spec.ensemble;
    cfg.seed = record.seed;
    const Ensemble ensemble = fixture != nullptr ? *fixture : generate_ensemble(data, cfg);

    const ClusterGraph graph = build_cluster_graph(ensemble);
    const TransitionMatrix transition = build_transition_matrix(graph);
    const TrajectorySet trajectories = propagate(transition, spec.t);
    const SquareMatrix z = trajectory_similarity(trajectories);
    const SquareMatrix b = enhanced_coassociation(ensemble, z);

    std::optional<SquareMatrix> a;
    if (spec.method == "eac" || (spec.dump_dir.has_value() && run_index == 1)) {
        a = coassociation(ensemble);
    }
    if (spec.dump_dir.has_value() && run_index == 1) {
        const std::filesystem::path dir(*spec.dump_dir);
        std::filesystem::create_directories(dir);
        write_matrix_csv(z, (dir / "z.csv").string());
        write_matrix_csv(*a, (dir / "a.csv").string());
        write_matrix_csv(b, (dir / "b.csv").string());
    }

    // Heavyweight artifacts are shared across the k sweep.
    std::optional<Dendrogram> dendrogram;
    if (spec.method == "ecpcs-hc") {
        dendrogram = hc_build_dendrogram(b);
    } else if (spec.method == "eac") {
        dendrogram = hc_build_dendrogram(*a);
    }

    const bool evaluate = data.labels.has_value();
    double best_nmi = -1.0;
    double best_ari = -2.0;
    bool best_nmi_degenerate = false;

    for (const int k : candidate_ks(spec, data)) {
        ConsensusResult consensus;
        if (spec.method == "ecpcs-mc") {
            Rng rng(Rng::derive(record.seed, 0x6d630000ULL + static_cast<std::uint64_t>(k)));
            const MetaClustering meta = mc_partition(z, k, rng);
            consensus = mc_vote(ensemble, meta, rng);
        } else {
            consensus = hc_cut(*dendrogram, k);
            if (spec.method == "eac") consensus.method = ConsensusMethod::EAC;
        }
        consensus.seed = record.seed;
        consensus.t = spec.t;
        consensus.ensemble_size = ensemble.size();
        record.tie_events += consensus.tie_events;

        if (!evaluate) {
            record.k = k;
            record.actual_k = consensus.actual_k;
            continue;
        }
        bool degenerate = false;
        const double nmi_score = nmi(consensus.labels, *data.labels, &degenerate);
        const double ari_score = ari(consensus.labels, *data.labels);
        if (nmi_score > best_nmi) {
            best_nmi = nmi_score;
            best_nmi_degenerate = degenerate;
            record.best_k_nmi = k;
            record.k = k;
            record.actual_k = consensus.actual_k;
        }
        if (ari_score > best_ari) {
            best_ari = ari_score;
            record.best_k_ari = k;
        }
    }

    if (evaluate) {
        record.nmi_score = best_nmi;
        record.ari_score = best_ari;
        record.nmi_degenerate = best_nmi_degenerate;
        if (spec.k_policy != KPolicy::BestK) {
            record.best_k_nmi.reset();
            record.best_k_ari.reset();
        }
    }

    record.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - started)
                         .count();
    return record;
}

RunBlock run_block(const RunSpec& spec, const Dataset& data, const Ensemble* fixture,
                   const std::string& axis_name, int axis_value) {
    RunBlock block;
    block.axis_name = axis_name;
    block.axis_value = axis_value;
    block.runs.resize(static_cast<std::size_t>(spec.repeats));

    const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
    const int n_workers = std::min<int>(
        spec.repeats, spec.threads > 0 ? spec.threads : static_cast<int>(hardware));

    std::atomic<int> next{0};
    const auto worker = [&]() {
        for (;;) {
            const int index = next.fetch_add(1);
            if (index >= spec.repeats) return;
            RunRecord& record = block.runs[static_cast<std::size_t>(index)];
            try {
                record = run_once(spec, data, fixture, index + 1);
            } catch (const std::exception& e) {
                record.run_index = index + 1;
                record.seed = Rng::derive(spec.ensemble.seed,
                                          static_cast<std::uint64_t>(index + 1));
                record.error = e.what();
            }
        }
    };

    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    block.aggregate = aggregate_records(block.runs);
    block.incomplete = block.aggregate.completed != spec.repeats;
    return block;
}

nlohmann::json record_to_json(const RunRecord& r) {
    nlohmann::json j;
    j["run_index"] = r.run_index;
    j["seed"] = r.seed;
    j["k"] = r.k;
    j["actual_k"] = r.actual_k;
    j["nmi"] = r.nmi_score.has_value() ? nlohmann::json(*r.nmi_score) : nlohmann::json();
    j["ari"] = r.ari_score.has_value() ? nlohmann::json(*r.ari_score) : nlohmann::json();
    j["best_k_nmi"] = r.best_k_nmi.has_value() ? nlohmann::json(*r.best_k_nmi) : nlohmann::json();
    j["best_k_ari"] = r.best_k_ari.has_value() ? nlohmann::json(*r.best_k_ari) : nlohmann::json();
    j["nmi_degenerate"] = r.nmi_degenerate;
    j["tie_events"] = r.tie_events;
    j["wall_ms"] = r.wall_ms;
    j["error"] = r.error.empty() ? nlohmann::json() : nlohmann::json(r.error);
    return j;
}

nlohmann::json optional_to_json(const std::optional<double>& v) {
    return v.has_value() ? nlohmann::json(*v) : nlohmann::json();
}

}  // namespace

std::string_view to_string(KPolicy policy) {
    switch (policy) {
        case KPolicy::TrueK: return "true-k";
        case KPolicy::BestK: return "best-k";
        case KPolicy::Fixed: return "fixed";
    }
    return "unknown";
}

void RunSpec::validate() const {
    if (!method_known(method)) {
        throw std::invalid_argument("unknown method: " + method);
    }
    if (repeats < 1) {
        throw std::invalid_argument("repeats must be at least 1");
    }
    if (t < 1) {
        throw std::invalid_argument("step length t must be at least 1");
    }
    if (k_policy == KPolicy::Fixed && fixed_k < 1) {
        throw std::invalid_argument("fixed k must be at least 1");
    }
    if (k_policy == KPolicy::Fixed && method == "ecpcs-mc" && fixed_k < 2) {
        throw std::invalid_argument("ecpcs-mc requires k >= 2");
    }
}

Aggregate aggregate_records(const std::vector<RunRecord>& records) {
    Aggregate agg;
    double nmi_sum = 0.0;
    double ari_sum = 0.0;
    double wall_sum = 0.0;
    int metric_count = 0;
    for (const RunRecord& r : records) {
        if (!r.error.empty()) continue;
        ++agg.completed;
        wall_sum += r.wall_ms;
        if (r.nmi_score.has_value() && r.ari_score.has_value()) {
            ++metric_count;
            nmi_sum += *r.nmi_score;
            ari_sum += *r.ari_score;
        }
    }
    if (agg.completed > 0) {
        agg.wall_ms_mean = wall_sum / agg.completed;
    }
    if (metric_count > 0) {
        agg.nmi_mean = nmi_sum / metric_count;
        agg.ari_mean = ari_sum / metric_count;
        double nmi_sq = 0.0;
        double ari_sq = 0.0;
        for (const RunRecord& r : records) {
            if (!r.error.empty() || !r.nmi_score.has_value()) continue;
            nmi_sq += (*r.nmi_score - *agg.nmi_mean) * (*r.nmi_score - *agg.nmi_mean);
            ari_sq += (*r.ari_score - *agg.ari_mean) * (*r.ari_score - *agg.ari_mean);
        }
        agg.nmi_stddev = metric_count > 1 ? std::sqrt(nmi_sq / (metric_count - 1)) : 0.0;
        agg.ari_stddev = metric_count > 1 ? std::sqrt(ari_sq / (metric_count - 1)) : 0.0;
    }
    return agg;
}

Ensemble load_fixture_ensemble(const std::string& path, int n_objects) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open fixture file: " + path);
    }
    nlohmann::json j;
    file >> j;
    if (!j.contains("assignments") || !j["assignments"].is_array() || j["assignments"].empty()) {
        throw std::runtime_error("fixture file needs a non-empty 'assignments' array");
    }

    std::vector<BaseClustering> members;
    for (const auto& entry : j["assignments"]) {
        if (!entry.is_array() || static_cast<int>(entry.size()) != n_objects) {
            throw std::runtime_error("fixture assignment length differs from the dataset size");
        }
        // Compact ids (ascending) so members are always valid BaseClusterings.
        std::vector<int> raw = entry.get<std::vector<int>>();
        std::vector<int> order;
        for (int id : raw) {
            if (std::find(order.begin(), order.end(), id) == order.end()) {
                order.push_back(id);
            }
        }
        std::sort(order.begin(), order.end());
        BaseClustering member;
        member.n_clusters = static_cast<int>(order.size());
        member.assignments.reserve(raw.size());
        for (int id : raw) {
            member.assignments.push_back(static_cast<int>(
                std::find(order.begin(), order.end(), id) - order.begin()));
        }
        members.push_back(std::move(member));
    }
    return Ensemble(std::move(members));
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["dataset"] = {
        {"path", spec.data_path}, {"name", dataset_name},      {"n_objects", n_objects},
        {"dimension", dimension}, {"n_classes", n_classes},
    };
    j["config"] = {
        {"method", spec.method},
        {"k_policy", std::string(to_string(spec.k_policy))},
        {"fixed_k", spec.k_policy == KPolicy::Fixed ? nlohmann::json(spec.fixed_k)
                                                    : nlohmann::json()},
        {"ensemble_size", spec.ensemble.ensemble_size},
        {"t", spec.t},
        {"repeats", spec.repeats},
        {"seed", spec.ensemble.seed},
        {"k_min", spec.ensemble.k_min > 0 ? nlohmann::json(spec.ensemble.k_min)
                                          : nlohmann::json()},
        {"k_max", spec.ensemble.k_max > 0 ? nlohmann::json(spec.ensemble.k_max)
                                          : nlohmann::json()},
        {"standardize", spec.ensemble.standardize},
        {"fixture", spec.fixture_path.has_value() ? nlohmann::json(*spec.fixture_path)
                                                  : nlohmann::json()},
    };
    j["blocks"] = nlohmann::json::array();
    for (const RunBlock& block : blocks) {
        nlohmann::json jb;
        jb["axis"] = block.axis_name.empty()
                         ? nlohmann::json()
                         : nlohmann::json{{"name", block.axis_name}, {"value", block.axis_value}};
        jb["runs"] = nlohmann::json::array();
        for (const RunRecord& r : block.runs) {
            jb["runs"].push_back(record_to_json(r));
        }
        jb["aggregate"] = {
            {"completed", block.aggregate.completed},
            {"nmi_mean", optional_to_json(block.aggregate.nmi_mean)},
            {"nmi_stddev", optional_to_json(block.aggregate.nmi_stddev)},
            {"ari_mean", optional_to_json(block.aggregate.ari_mean)},
            {"ari_stddev", optional_to_json(block.aggregate.ari_stddev)},
            {"wall_ms_mean", block.aggregate.wall_ms_mean},
        };
        jb["incomplete"] = block.incomplete;
        j["blocks"].push_back(std::move(jb));
    }
    return j;
}

std::string Report::to_csv() const {
    std::ostringstream out;
    out << "run_index,axis_name,axis_value,seed,method,k_policy,k,actual_k,nmi,ari,"
           "best_k_nmi,best_k_ari,nmi_degenerate,tie_events,wall_ms,error\n";
    char buffer[64];
    const auto format = [&buffer](double v) {
        std::snprintf(buffer, sizeof(buffer), "%.17g", v);
        return std::string(buffer);
    };
    for (const RunBlock& block : blocks) {
        for (const RunRecord& r : block.runs) {
            out << r.run_index << ',' << block.axis_name << ','
                << (block.axis_name.empty() ? "" : std::to_string(block.axis_value)) << ','
                << r.seed << ',' << spec.method << ',' << to_string(spec.k_policy) << ',' << r.k
                << ',' << r.actual_k << ','
                << (r.nmi_score.has_value() ? format(*r.nmi_score) : "") << ','
                << (r.ari_score.has_value() ? format(*r.ari_score) : "") << ','
                << (r.best_k_nmi.has_value() ? std::to_string(*r.best_k_nmi) : "") << ','
                << (r.best_k_ari.has_value() ? std::to_string(*r.best_k_ari) : "") << ','
                << (r.nmi_degenerate ? 1 : 0) << ',' << r.tie_events << ',' << format(r.wall_ms)
                << ',' << r.error << '\n';
        }
    }
    return out.str();
}

void Report::write_files() const {
    if (spec.output_path.empty()) return;
    std::filesystem::path json_path(spec.output_path);
    if (json_path.has_parent_path()) {
        std::filesystem::create_directories(json_path.parent_path());
    }
    std::ofstream json_file(json_path);
    if (!json_file) {
        throw std::runtime_error("cannot open output file: " + spec.output_path);
    }
    json_file << to_json().dump(2) << '\n';

    std::filesystem::path csv_path = json_path;
    csv_path.replace_extension(".csv");
    std::ofstream csv_file(csv_path);
    if (!csv_file) {
        throw std::runtime_error("cannot open output file: " + csv_path.string());
    }
    csv_file << to_csv();
}

namespace {

Report prepare_report(const RunSpec& spec, const Dataset& data) {
    Report report;
    report.spec = spec;
    report.dataset_name = data.name;
    report.n_objects = static_cast<int>(data.n_objects());
    report.dimension = static_cast<int>(data.dimension());
    report.n_classes = data.n_classes();
    return report;
}

void check_k_policy(const RunSpec& spec, const Dataset& data) {
    if ((spec.k_policy == KPolicy::TrueK || spec.k_policy == KPolicy::BestK) &&
        !data.labels.has_value()) {
        throw std::invalid_argument(std::string(to_string(spec.k_policy)) +
                                    " needs a labeled dataset; use a fixed k instead");
    }
}

}  // namespace

Report run(const RunSpec& spec) {
    spec.validate();
    const Dataset data = load_dataset(spec.data_path, spec.label_column);
    check_k_policy(spec, data);

    std::optional<Ensemble> fixture;
    if (spec.fixture_path.has_value()) {
        fixture = load_fixture_ensemble(*spec.fixture_path,
                                        static_cast<int>(data.n_objects()));
    }

    Report report = prepare_report(spec, data);
    report.blocks.push_back(
        run_block(spec, data, fixture.has_value() ? &*fixture : nullptr, "", 0));
    report.write_files();
    return report;
}

Report sweep(const RunSpec& spec, const std::string& axis, const std::vector<int>& values) {
    spec.validate();
    if (axis != "M" && axis != "t") {
        throw std::invalid_argument("sweep axis must be 'M' or 't'");
    }
    if (values.empty()) {
        throw std::invalid_argument("sweep needs at least one axis value");
    }
    const Dataset data = load_dataset(spec.data_path, spec.label_column);
    check_k_policy(spec, data);

    std::optional<Ensemble> fixture;
    if (spec.fixture_path.has_value()) {
        fixture = load_fixture_ensemble(*spec.fixture_path,
                                        static_cast<int>(data.n_objects()));
    }

    Report report = prepare_report(spec, data);
    for (const int value : values) {
        RunSpec point = spec;
        if (axis == "M") {
            if (value < 2) throw std::invalid_argument("ensemble size must be at least 2");
            point.ensemble.ensemble_size = value;
        } else {
            if (value < 1) throw std::invalid_argument("step length must be at least 1");
            point.t = value;
        }
        report.blocks.push_back(
            run_block(point, data, fixture.has_value() ? &*fixture : nullptr, axis, value));
    }
    report.write_files();
    return report;
}

}  // namespace ecpcs
