#include "ecpcs/dataset_io.hpp"

#include "ecpcs/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace ecpcs {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream stream(line);
    while (std::getline(stream, cell, ',')) {
        cells.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        cells.push_back("");
    }
    return cells;
}

double parse_number(const std::string& cell, long row, long column) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || cell.empty()) {
        throw ParseError("non-numeric feature value '" + cell + "' at row " + std::to_string(row) +
                             ", column " + std::to_string(column),
                         row, column);
    }
    return value;
}

}  // namespace

Dataset load_dataset(const std::string& path, const std::optional<std::string>& label_column) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open dataset file: " + path);
    }

    std::string line;
    if (!std::getline(file, line)) {
        throw ParseError("empty dataset: " + path);
    }
    const std::vector<std::string> header = split_csv_line(line);
    if (header.empty()) {
        throw ParseError("empty dataset: " + path);
    }

    long label_index = -1;
    if (label_column.has_value()) {
        const auto it = std::find(header.begin(), header.end(), *label_column);
        if (it == header.end()) {
            throw ParseError("label column '" + *label_column + "' not found in header");
        }
        label_index = it - header.begin();
    }
    const long n_columns = static_cast<long>(header.size());
    const long n_features = n_columns - (label_index >= 0 ? 1 : 0);
    if (n_features < 1) {
        throw ParseError("no feature columns in: " + path);
    }

    std::vector<std::vector<double>> feature_rows;
    std::vector<int> labels;
    std::unordered_map<std::string, int> label_ids;
    long row_number = 1;
    while (std::getline(file, line)) {
        ++row_number;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (static_cast<long>(cells.size()) != n_columns) {
            throw ParseError("expected " + std::to_string(n_columns) + " cells but found " +
                                 std::to_string(cells.size()) + " at row " +
                                 std::to_string(row_number),
                             row_number, 0);
        }
        std::vector<double> features;
        features.reserve(static_cast<std::size_t>(n_features));
        for (long c = 0; c < n_columns; ++c) {
            if (c == label_index) {
                const std::string& cell = cells[static_cast<std::size_t>(c)];
                const auto [it, inserted] =
                    label_ids.emplace(cell, static_cast<int>(label_ids.size()));
                labels.push_back(it->second);
            } else {
                features.push_back(
                    parse_number(cells[static_cast<std::size_t>(c)], row_number, c + 1));
            }
        }
        feature_rows.push_back(std::move(features));
    }

    if (feature_rows.empty()) {
        throw ParseError("empty dataset: " + path);
    }

    Dataset data;
    data.name = std::filesystem::path(path).stem().string();
    data.objects.resize(static_cast<Eigen::Index>(feature_rows.size()), n_features);
    for (std::size_t r = 0; r < feature_rows.size(); ++r) {
        for (long c = 0; c < n_features; ++c) {
            data.objects(static_cast<Eigen::Index>(r), c) =
                feature_rows[r][static_cast<std::size_t>(c)];
        }
    }
    if (label_index >= 0) {
        data.labels = std::move(labels);
    }
    data.validate();
    return data;
}

void write_matrix_csv(const SquareMatrix& matrix, const std::string& path) {
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    const Eigen::Index n = matrix.order();
    char buffer[64];
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            std::snprintf(buffer, sizeof(buffer), "%.17g", matrix(i, j));
            file << buffer;
            file << (j + 1 < n ? ',' : '\n');
        }
    }
}

}  // namespace ecpcs
