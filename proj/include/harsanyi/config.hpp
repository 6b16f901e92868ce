#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace harsanyi {

// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 2,
    kExitEmptySelection = 3,
    kExitInvariantViolation = 4,
};

struct CommandError : std::exception {
    int code;
    std::string message;
    CommandError(int c, std::string msg) : code(c), message(std::move(msg)) {}
    const char* what() const noexcept override { return message.c_str(); }
};

// One run configuration, parsed from "key = value" text. Every randomized
// step has an explicit seed so reports are reproducible byte-for-byte.
struct RunConfig {
    std::string dataset;
    std::string schema = "wifi";
    std::string out_dir = "out";
    std::string model;    // default <out_dir>/model.bin
    std::string model2;   // optional second model for cross-model extraction
    std::string tables;   // default <out_dir>/tables
    std::string tables2;  // optional second table set for gamma

    std::string arch = "mlp5";
    uint64_t seed_split = 7;
    uint64_t seed_train = 1;
    uint64_t seed_train2 = 2;  // second model in cross-model studies
    uint64_t seed_corrupt = 11;
    uint64_t seed_sampling = 13;

    int epochs = 200;
    int batch = 64;
    double learning_rate = 1e-3;
    int hidden = 100;

    std::string category = "room4";
    std::string split = "test";
    size_t max_samples = 0;  // 0 = no cap

    std::string baseline = "mean";  // mean | zeros | explicit:v1,v2,...
    // Designated context variables (comma-separated 1-based indices). When
    // set, extraction averages them out over the alpha blend and the tables
    // cover only the remaining analyzed variables.
    std::string context;
    int quadrature_points = 21;
    bool csv_tables = false;  // also write a CSV next to each table file

    double lambda = 0.05;
    double lambda_dict = 0.1;
    double lambda_discrimination = 0.05;
    bool include_empty = false;

    std::vector<int> k_grid = {1, 2, 5, 10, 20, 50, 100};
    std::vector<double> lambda_grid = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
    std::vector<double> r_grid = {0.0, 0.15, 0.3};
    std::vector<double> delta_grid = {0.0, 0.25, 0.5};

    double label_noise_r = 0.0;
    double input_noise_delta = 0.0;

    int mc_trials = 10000;
    int histogram_top = 5;
    int histogram_bins = 20;

    int synth_max_vars = 8;
    int synth_trials = 20;

    // Resolved paths (out_dir joined under HARSANYI_OUTPUT_ROOT when set).
    std::filesystem::path resolved_out_dir() const;
    std::filesystem::path resolved_model() const;
    std::filesystem::path resolved_model2() const;
    std::filesystem::path resolved_tables() const;
    std::filesystem::path resolved_tables2() const;
};

RunConfig parse_config_file(const std::filesystem::path& path);

// Applies a "key=value" override; unknown keys are input errors.
void apply_override(RunConfig& config, const std::string& assignment);

// Ordered key/value echo of every field, used for the report metadata.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config);

}  // namespace harsanyi
