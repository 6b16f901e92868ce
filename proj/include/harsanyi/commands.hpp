#pragma once

#include <filesystem>
#include <vector>

#include "harsanyi/analytics.hpp"
#include "harsanyi/config.hpp"
#include "harsanyi/synth_checks.hpp"

namespace harsanyi {

struct TrainOutcome {
    std::filesystem::path model_path;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
};

struct ExtractOutcome {
    std::filesystem::path table_dir;
    size_t sample_count = 0;
    double max_residual = 0.0;
};

struct GammaCurve {
    std::vector<double> lambdas;
    std::vector<double> gamma_mean;
    std::vector<size_t> samples_used;
};

struct MetricsOutcome {
    std::filesystem::path report_path;
    int n = 0;
    size_t table_count = 0;
    double mean_salient_count = 0.0;
    std::vector<double> strength_curve;  // empty set excluded
    // (lambda, rho per k_grid entry) for the dictionary threshold and the
    // vanilla 0.05 rerun.
    std::vector<std::pair<double, std::vector<double>>> rho_curves;
    bool has_gamma = false;
    GammaCurve gamma;
    RandomTransferBaseline random_baseline;
    double beta_bar = 0.0;
    double kappa = 0.0;
};

struct NoisePoint {
    double level = 0.0;
    bool diverged = false;
    double test_accuracy = 0.0;
    double beta_bar = 0.0;
    double rho_at_kmax = 0.0;
};

struct NoiseStudyOutcome {
    std::filesystem::path report_path;
    std::vector<NoisePoint> label_sweep;
    std::vector<NoisePoint> input_sweep;
};

// Subcommand bodies. They throw CommandError with the documented exit codes;
// any other exception maps to the input-error code at the CLI boundary.
TrainOutcome cmd_train(const RunConfig& config);
ExtractOutcome cmd_extract(const RunConfig& config);
MetricsOutcome cmd_metrics(const RunConfig& config);
NoiseStudyOutcome cmd_noise_study(const RunConfig& config);
std::vector<PropertyResult> cmd_synth_check(const RunConfig& config);

}  // namespace harsanyi
