#include "harsanyi/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "harsanyi/rng.hpp"

namespace harsanyi {

Schema schema_from_name(const std::string& name) {
    if (name == "wifi") return Schema::wifi;
    if (name == "tictactoe") return Schema::tictactoe;
    if (name == "generic-csv" || name == "csv") return Schema::generic_csv;
    throw std::invalid_argument("unknown dataset schema: " + name);
}

const char* schema_name(Schema schema) {
    switch (schema) {
        case Schema::wifi: return "wifi";
        case Schema::tictactoe: return "tictactoe";
        case Schema::generic_csv: return "generic-csv";
    }
    return "?";
}

const std::vector<size_t>& TabularDataset::split_indices(Split split) const {
    static const std::vector<size_t> kEmpty;
    switch (split) {
        case Split::train: return train_indices;
        case Split::test: return test_indices;
        case Split::all: break;
    }
    (void)kEmpty;
    throw std::logic_error("split_indices(all) has no single index list; use restrict_to_split");
}

namespace {

[[noreturn]] void row_error(const std::filesystem::path& path, size_t line, const std::string& msg) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) fields.push_back(cur);
    return fields;
}

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void parse_wifi(const std::filesystem::path& path, std::ifstream& in, TabularDataset& ds) {
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        std::istringstream fields(line);
        std::vector<long> values;
        long v;
        while (fields >> v) values.push_back(v);
        if (!fields.eof()) row_error(path, lineno, "non-integer field");
        if (values.size() != 8) {
            row_error(path, lineno, "expected 7 signal columns plus a room label, got " +
                                        std::to_string(values.size()) + " fields");
        }
        const long room = values.back();
        if (room < 1 || room > 4) row_error(path, lineno, "room label must be 1-4");
        for (size_t c = 0; c + 1 < values.size(); ++c) {
            ds.features.push_back(static_cast<double>(values[c]));
        }
        ds.labels.push_back(static_cast<int>(room - 1));
    }
    ds.cols = 7;
    ds.n_classes = 4;
}

void parse_tictactoe(const std::filesystem::path& path, std::ifstream& in, TabularDataset& ds) {
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        const auto fields = split_fields(line, ',');
        if (fields.size() != 10) {
            row_error(path, lineno, "expected 9 cells plus a class, got " +
                                        std::to_string(fields.size()) + " fields");
        }
        for (size_t c = 0; c < 9; ++c) {
            const std::string cell = trimmed(fields[c]);
            if (cell == "x") ds.features.push_back(1.0);
            else if (cell == "o") ds.features.push_back(-1.0);
            else if (cell == "b") ds.features.push_back(0.0);
            else row_error(path, lineno, "unknown board symbol '" + cell + "'");
        }
        const std::string label = trimmed(fields[9]);
        if (label == "positive") ds.labels.push_back(1);
        else if (label == "negative") ds.labels.push_back(0);
        else row_error(path, lineno, "unknown class '" + label + "'");
    }
    ds.cols = 9;
    ds.n_classes = 2;
}

void parse_generic_csv(const std::filesystem::path& path, std::ifstream& in, TabularDataset& ds) {
    std::string line;
    size_t lineno = 0;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty dataset file");
    ++lineno;
    const auto header = split_fields(line, ',');
    if (header.size() < 2) row_error(path, lineno, "header needs features plus a label column");
    const size_t cols = header.size() - 1;

    int max_label = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        const auto fields = split_fields(line, ',');
        if (fields.size() != header.size()) {
            row_error(path, lineno, "expected " + std::to_string(header.size()) + " fields, got " +
                                        std::to_string(fields.size()));
        }
        for (size_t c = 0; c < cols; ++c) {
            try {
                size_t used = 0;
                const double v = std::stod(fields[c], &used);
                if (trimmed(fields[c].substr(used)).size() != 0) throw std::invalid_argument("");
                ds.features.push_back(v);
            } catch (const std::exception&) {
                row_error(path, lineno, "non-numeric feature '" + fields[c] + "'");
            }
        }
        try {
            const long lbl = std::stol(trimmed(fields[cols]));
            if (lbl < 0) throw std::invalid_argument("");
            ds.labels.push_back(static_cast<int>(lbl));
            max_label = std::max(max_label, static_cast<int>(lbl));
        } catch (const std::exception&) {
            row_error(path, lineno, "label must be a non-negative integer, got '" +
                                        fields[cols] + "'");
        }
    }
    ds.cols = cols;
    ds.n_classes = max_label + 1;
}

}  // namespace

TabularDataset load_tabular(const std::filesystem::path& path, Schema schema,
                            uint64_t split_seed) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file " + path.string());

    TabularDataset ds;
    ds.schema = schema;
    switch (schema) {
        case Schema::wifi: parse_wifi(path, in, ds); break;
        case Schema::tictactoe: parse_tictactoe(path, in, ds); break;
        case Schema::generic_csv: parse_generic_csv(path, in, ds); break;
    }
    ds.rows = ds.labels.size();
    if (ds.rows == 0) throw std::runtime_error(path.string() + ": empty dataset file");

    std::vector<size_t> order(ds.rows);
    std::iota(order.begin(), order.end(), size_t{0});
    Rng rng(split_seed);
    rng.shuffle(order.data(), order.size());
    const size_t train_count = (ds.rows * 8) / 10;
    ds.train_indices.assign(order.begin(), order.begin() + static_cast<long>(train_count));
    ds.test_indices.assign(order.begin() + static_cast<long>(train_count), order.end());
    return ds;
}

namespace {

constexpr int kPatterns[8][3] = {
    {0, 1, 2}, {3, 4, 5}, {6, 7, 8},  // rows
    {0, 3, 6}, {1, 4, 7}, {2, 5, 8},  // columns
    {0, 4, 8}, {2, 4, 6},             // diagonals
};

int pattern_index(const std::string& name) {
    static const char* kNames[8] = {"row1", "row2", "row3", "col1", "col2", "col3",
                                    "diag", "antidiag"};
    for (int i = 0; i < 8; ++i) {
        if (name == kNames[i]) return i;
    }
    return -1;
}

}  // namespace

std::vector<size_t> subcategory_filter(const TabularDataset& ds, const std::string& name) {
    std::vector<size_t> out;
    auto by_label = [&](int label) {
        for (size_t r = 0; r < ds.rows; ++r) {
            if (ds.labels[r] == label) out.push_back(r);
        }
    };

    if (name.rfind("class:", 0) == 0) {
        const int label = std::stoi(name.substr(6));
        if (label < 0 || label >= ds.n_classes) {
            throw std::invalid_argument("class id out of range in filter '" + name + "'");
        }
        by_label(label);
        return out;
    }
    if (ds.schema == Schema::wifi && name.rfind("room", 0) == 0 && name.size() == 5) {
        const int room = name[4] - '0';
        if (room >= 1 && room <= 4) {
            by_label(room - 1);
            return out;
        }
    }
    if (ds.schema == Schema::tictactoe) {
        if (name == "positive") { by_label(1); return out; }
        if (name == "negative") { by_label(0); return out; }
        const int p = pattern_index(name);
        if (p >= 0) {
            // Board cells are exactly +1/-1/0 in raw space; undo normalization
            // before matching the x-mark.
            for (size_t r = 0; r < ds.rows; ++r) {
                bool match = true;
                for (int cell : kPatterns[p]) {
                    double v = ds.features[r * ds.cols + static_cast<size_t>(cell)];
                    if (ds.normalized) {
                        v = v * ds.column_std[static_cast<size_t>(cell)] +
                            ds.column_mean[static_cast<size_t>(cell)];
                    }
                    if (std::fabs(v - 1.0) > 1e-9) { match = false; break; }
                }
                if (match) out.push_back(r);
            }
            return out;
        }
    }
    throw std::invalid_argument("unknown sub-category filter '" + name + "' for schema " +
                                schema_name(ds.schema));
}

std::vector<size_t> restrict_to_split(const TabularDataset& ds, std::span<const size_t> ids,
                                      Split split) {
    if (split == Split::all) return {ids.begin(), ids.end()};
    const auto& keep = split == Split::train ? ds.train_indices : ds.test_indices;
    std::vector<char> mark(ds.rows, 0);
    for (size_t i : keep) mark[i] = 1;
    std::vector<size_t> out;
    for (size_t i : ids) {
        if (mark[i]) out.push_back(i);
    }
    return out;
}

void normalize_features(TabularDataset& ds) {
    if (ds.normalized) throw std::logic_error("dataset already normalized");
    if (ds.train_indices.empty()) throw std::logic_error("dataset has no training split");
    ds.column_mean.assign(ds.cols, 0.0);
    ds.column_std.assign(ds.cols, 0.0);
    const double inv_n = 1.0 / static_cast<double>(ds.train_indices.size());
    for (size_t r : ds.train_indices) {
        for (size_t c = 0; c < ds.cols; ++c) ds.column_mean[c] += ds.features[r * ds.cols + c];
    }
    for (double& m : ds.column_mean) m *= inv_n;
    for (size_t r : ds.train_indices) {
        for (size_t c = 0; c < ds.cols; ++c) {
            const double d = ds.features[r * ds.cols + c] - ds.column_mean[c];
            ds.column_std[c] += d * d;
        }
    }
    for (double& s : ds.column_std) {
        s = std::sqrt(s * inv_n);
        if (s == 0.0) s = 1.0;
    }
    for (size_t r = 0; r < ds.rows; ++r) {
        for (size_t c = 0; c < ds.cols; ++c) {
            double& v = ds.features[r * ds.cols + c];
            v = (v - ds.column_mean[c]) / ds.column_std[c];
        }
    }
    ds.normalized = true;
}

std::vector<double> denormalize_row(const TabularDataset& ds, std::span<const double> row) {
    if (!ds.normalized) throw std::logic_error("dataset is not normalized");
    if (row.size() != ds.cols) throw std::invalid_argument("row width mismatch");
    std::vector<double> out(row.size());
    for (size_t c = 0; c < row.size(); ++c) {
        out[c] = row[c] * ds.column_std[c] + ds.column_mean[c];
    }
    return out;
}

void corrupt_labels(TabularDataset& ds, double ratio, uint64_t seed) {
    if (ratio < 0.0 || ratio > 1.0) throw std::invalid_argument("label-noise ratio must be in [0,1]");
    const size_t count = static_cast<size_t>(ratio * static_cast<double>(ds.train_indices.size()));
    if (count == 0) return;
    Rng rng(seed);
    std::vector<size_t> pool = ds.train_indices;
    rng.shuffle(pool.data(), pool.size());
    for (size_t i = 0; i < count; ++i) {
        ds.labels[pool[i]] = static_cast<int>(rng.next_below(static_cast<uint64_t>(ds.n_classes)));
    }
}

void corrupt_inputs(TabularDataset& ds, double delta, uint64_t seed) {
    if (!ds.normalized) {
        throw std::logic_error("input corruption requires a unit-variance normalized dataset");
    }
    if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("noise strength must be in [0,1]");
    if (delta == 0.0) return;
    Rng rng(seed);
    for (size_t r : ds.train_indices) {
        auto row = ds.row_mut(r);
        for (double& v : row) v = (1.0 - delta) * v + delta * rng.next_gaussian();
    }
}

}  // namespace harsanyi
