#include "somm/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace somm {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !cell.empty();
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, ptr};
}

Dataset read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path);

    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_line(line));
    }
    if (rows.size() < 2)
        throw CsvError(path + ": expected a header row and at least one data row");

    const auto& header = rows.front();
    if (header.size() < 2)
        throw CsvError(path + ": need at least one feature column plus the label column");
    bool header_numeric = true;
    for (const auto& cell : header) {
        double v;
        if (!parse_double(cell, v)) { header_numeric = false; break; }
    }
    if (header_numeric)
        throw CsvError(path + ": first row parses as numbers; a header row is required");

    const std::size_t n_cols = header.size();
    const std::size_t n_features = n_cols - 1;

    Dataset data;
    data.feature_names.assign(header.begin(), header.end() - 1);
    std::vector<long long> raw_labels;

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() != n_cols)
            throw CsvError(path + ": row " + std::to_string(r + 1) + " has " +
                           std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(n_cols));
        std::vector<double> values(n_features);
        for (std::size_t c = 0; c < n_features; ++c) {
            double v;
            if (!parse_double(cells[c], v) || !std::isfinite(v))
                throw CsvError(path + ": cannot parse cell at row " +
                               std::to_string(r + 1) + ", column " +
                               std::to_string(c + 1) + ": '" + cells[c] + "'");
            values[c] = v;
        }
        double lv;
        if (!parse_double(cells[n_features], lv) || !std::isfinite(lv) ||
            lv != std::floor(lv))
            throw CsvError(path + ": label at row " + std::to_string(r + 1) +
                           " is not an integer: '" + cells[n_features] + "'");
        data.features.append_row(values);
        raw_labels.push_back(static_cast<long long>(lv));
    }

    // Dense ids 0..C-1 in ascending original-label order.
    std::map<long long, int> dense;
    for (long long l : raw_labels) dense.emplace(l, 0);
    int next_id = 0;
    for (auto& [raw, id] : dense) {
        id = next_id++;
        data.class_names[id] = std::to_string(raw);
    }
    data.labels.reserve(raw_labels.size());
    for (long long l : raw_labels) data.labels.push_back(dense[l]);

    return data;
}

void write_csv(const Dataset& data, const std::string& path) {
    if (data.labels.size() != data.features.rows())
        throw std::invalid_argument("write_csv: label count does not match row count");
    std::ofstream out(path);
    if (!out) throw CsvError("cannot open " + path + " for writing");

    const std::size_t f = data.features.cols();
    for (std::size_t c = 0; c < f; ++c) {
        if (c < data.feature_names.size() && !data.feature_names[c].empty())
            out << data.feature_names[c];
        else
            out << 'f' << c;
        out << ',';
    }
    out << "label\n";

    for (std::size_t r = 0; r < data.features.rows(); ++r) {
        for (std::size_t c = 0; c < f; ++c)
            out << format_number(data.features.at(r, c)) << ',';
        const int label = data.labels[r];
        auto it = data.class_names.find(label);
        if (it != data.class_names.end())
            out << it->second;
        else
            out << label;
        out << '\n';
    }
    if (!out) throw CsvError("failed writing " + path);
}

}  // namespace somm
