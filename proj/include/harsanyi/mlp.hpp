#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "harsanyi/dataset.hpp"

namespace harsanyi {

enum class Arch { mlp5, resmlp5 };

Arch arch_from_name(const std::string& name);
const char* arch_name(Arch arch);

// Fully connected layer, weights row-major (out x in). Layers with skip set
// add the identity to the rectified output.
struct DenseLayer {
    size_t in = 0;
    size_t out = 0;
    bool skip = false;
    std::vector<double> weights;
    std::vector<double> bias;
};

// Five fully connected layers, hidden width 100, rectifier activations, class
// logits at the head. The residual variant adds an identity skip around every
// hidden layer whose input and output widths match.
struct MlpModel {
    Arch arch = Arch::mlp5;
    int input_dim = 0;
    int n_classes = 0;
    int hidden_width = 100;
    uint64_t training_seed = 0;
    std::vector<DenseLayer> layers;

    std::vector<double> logits(std::span<const double> x) const;
    std::vector<double> predict_probabilities(std::span<const double> x) const;

    // log(p / (1 - p)) for the truth class, computed in logit space as
    // z_y - logsumexp over the other classes. Identical to feeding the softmax
    // probabilities through the probability-space log-odds, but does not lose
    // 1 - p to rounding when the model is confident.
    double log_odds(std::span<const double> x, int truth_label) const;
};

struct TrainOptions {
    int epochs = 200;
    int batch_size = 64;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    int hidden_width = 100;
};

struct TrainSummary {
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    double final_loss = 0.0;
};

// Mini-batch Adam on softmax cross-entropy; deterministic for a fixed seed.
// Requires a normalized dataset. Divergence (non-finite loss) is reported
// with the epoch it occurred in.
MlpModel train_mlp(const TabularDataset& ds, Arch arch, const TrainOptions& options,
                   uint64_t seed, TrainSummary* summary = nullptr);

double accuracy(const MlpModel& model, const TabularDataset& ds, std::span<const size_t> rows);

// Mean cross-entropy over the batch plus gradients; exposed for finite
// difference checks.
double loss_and_gradients(const MlpModel& model, std::span<const double> batch_features,
                          std::span<const int> batch_labels, size_t batch_rows,
                          std::vector<DenseLayer>& gradients);

// Versioned binary format, magic "MLPW1"; weights round-trip bit-exactly.
void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace harsanyi
