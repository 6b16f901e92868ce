#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace harsanyi {

enum class Schema { wifi, tictactoe, generic_csv };

enum class Split { train, test, all };

Schema schema_from_name(const std::string& name);
const char* schema_name(Schema schema);

// Row-major sample matrix with class labels and a deterministic 80/20
// train/test split. Feature normalization uses train-split statistics only
// and is applied to both splits.
struct TabularDataset {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> features;
    std::vector<int> labels;
    int n_classes = 0;
    Schema schema = Schema::generic_csv;

    std::vector<size_t> train_indices;
    std::vector<size_t> test_indices;

    bool normalized = false;
    std::vector<double> column_mean;
    std::vector<double> column_std;

    std::span<const double> row(size_t r) const {
        return {features.data() + r * cols, cols};
    }
    std::span<double> row_mut(size_t r) { return {features.data() + r * cols, cols}; }

    const std::vector<size_t>& split_indices(Split split) const;
};

// Parses a dataset file. wifi: 7 whitespace-separated integer signal columns
// plus a room label 1-4 (remapped to 0-3). tictactoe: 9 comma-separated cells
// from {x,o,b} mapped to {+1,-1,0} plus positive/negative mapped to 1/0.
// generic-csv: header line, numeric feature columns, final column holds
// non-negative integer class ids. Malformed rows report their line number.
TabularDataset load_tabular(const std::filesystem::path& path, Schema schema,
                            uint64_t split_seed = 7);

// Named sample predicates over all rows. tictactoe: row1..row3, col1..col3,
// diag, antidiag (three-in-a-row patterns for x), plus positive/negative.
// wifi: room1..room4. Any schema: "class:<k>".
std::vector<size_t> subcategory_filter(const TabularDataset& ds, const std::string& name);

// Restricts row ids to a split.
std::vector<size_t> restrict_to_split(const TabularDataset& ds, std::span<const size_t> ids,
                                      Split split);

// Train-split column statistics applied to every row; zero-variance columns
// keep std 1.
void normalize_features(TabularDataset& ds);
std::vector<double> denormalize_row(const TabularDataset& ds, std::span<const double> row);

// Reassigns floor(ratio * |train|) seeded-chosen training labels uniformly at
// random over all classes. The test split is untouched.
void corrupt_labels(TabularDataset& ds, double ratio, uint64_t seed);

// Replaces each training sample x by (1-delta)*x + delta*eps with standard
// normal eps. Requires a normalized dataset; the test split is untouched.
void corrupt_inputs(TabularDataset& ds, double delta, uint64_t seed);

}  // namespace harsanyi
