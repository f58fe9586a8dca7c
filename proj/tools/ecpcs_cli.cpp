#include "ecpcs/harness.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find(',', begin);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(begin, end - begin);
        if (!item.empty()) {
            int value = 0;
            const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
            if (ec != std::errc{} || ptr != item.data() + item.size()) {
                throw CLI::ValidationError("expected a comma-separated integer list, got '" +
                                           text + "'");
            }
            values.push_back(value);
        }
        begin = end + 1;
    }
    return values;
}

void print_summary(const ecpcs::Report& report) {
    for (const ecpcs::RunBlock& block : report.blocks) {
        std::cout << report.dataset_name << "  " << report.spec.method << "  "
                  << ecpcs::to_string(report.spec.k_policy);
        if (!block.axis_name.empty()) {
            std::cout << "  " << block.axis_name << "=" << block.axis_value;
        }
        if (block.aggregate.nmi_mean.has_value()) {
            std::cout << "  NMI " << 100.0 * *block.aggregate.nmi_mean << " +- "
                      << 100.0 * *block.aggregate.nmi_stddev << "  ARI "
                      << 100.0 * *block.aggregate.ari_mean << " +- "
                      << 100.0 * *block.aggregate.ari_stddev;
        }
        std::cout << "  (" << block.aggregate.completed << "/" << block.runs.size() << " runs, "
                  << block.aggregate.wall_ms_mean << " ms/run)";
        if (block.incomplete) {
            std::cout << "  INCOMPLETE";
        }
        std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Ensemble clustering by propagating cluster-wise similarities over a "
        "Jaccard cluster graph (ECPCS), with NMI/ARI evaluation"};

    ecpcs::RunSpec spec;
    std::string label_column;
    std::string k_option = "true";
    std::string sweep_m;
    std::string sweep_t;
    std::string fixture;
    std::string dump_dir;
    bool no_standardize = false;
    std::uint64_t seed = 0;

    app.add_option("--data", spec.data_path, "dataset CSV with a header row")->required();
    app.add_option("--label-col", label_column, "name of the ground-truth label column");
    app.add_option("--method", spec.method, "consensus function")
        ->check(CLI::IsMember({"ecpcs-hc", "ecpcs-mc", "eac"}))
        ->capture_default_str();
    app.add_option("--k", k_option, "cluster count: 'true', 'best', or an integer")
        ->capture_default_str();
    app.add_option("--M", spec.ensemble.ensemble_size, "ensemble size")->capture_default_str();
    app.add_option("--t", spec.t, "random-walk step length")->capture_default_str();
    app.add_option("--repeats", spec.repeats, "independent repetitions")->capture_default_str();
    app.add_option("--seed", seed, "base seed for all derived randomness")->capture_default_str();
    app.add_option("--out", spec.output_path, "report JSON path (per-run CSV written next to it)");
    app.add_option("--sweep-m", sweep_m, "comma-separated ensemble sizes to sweep");
    app.add_option("--sweep-t", sweep_t, "comma-separated step lengths to sweep");
    app.add_option("--fixture", fixture, "fixture JSON with pre-built ensemble assignments");
    app.add_flag("--no-standardize", no_standardize, "skip per-feature z-scoring before k-means");
    app.add_option("--dump-matrices", dump_dir, "directory for Z/A/B CSV dumps of the first run");
    app.add_option("--k-min", spec.ensemble.k_min,
                   "override the lower bound of the per-member cluster count");
    app.add_option("--k-max", spec.ensemble.k_max,
                   "override the upper bound of the per-member cluster count");
    app.add_option("--threads", spec.threads, "worker pool size (0 = hardware concurrency)")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!label_column.empty()) spec.label_column = label_column;
        if (!fixture.empty()) spec.fixture_path = fixture;
        if (!dump_dir.empty()) spec.dump_dir = dump_dir;
        spec.ensemble.standardize = !no_standardize;
        spec.ensemble.seed = seed;

        if (k_option == "true") {
            spec.k_policy = ecpcs::KPolicy::TrueK;
        } else if (k_option == "best") {
            spec.k_policy = ecpcs::KPolicy::BestK;
        } else {
            spec.k_policy = ecpcs::KPolicy::Fixed;
            const auto [ptr, ec] =
                std::from_chars(k_option.data(), k_option.data() + k_option.size(), spec.fixed_k);
            if (ec != std::errc{} || ptr != k_option.data() + k_option.size()) {
                throw std::invalid_argument("--k expects 'true', 'best', or an integer");
            }
        }

        if (!sweep_m.empty() && !sweep_t.empty()) {
            throw std::invalid_argument("--sweep-m and --sweep-t cannot be combined");
        }

        ecpcs::Report report;
        if (!sweep_m.empty()) {
            report = ecpcs::sweep(spec, "M", parse_int_list(sweep_m));
        } else if (!sweep_t.empty()) {
            report = ecpcs::sweep(spec, "t", parse_int_list(sweep_t));
        } else {
            report = ecpcs::run(spec);
        }
        print_summary(report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
