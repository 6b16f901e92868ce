#include "harsanyi/mlp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "harsanyi/kernels.hpp"
#include "harsanyi/rng.hpp"

namespace harsanyi {

Arch arch_from_name(const std::string& name) {
    if (name == "mlp5" || name == "MLP-5") return Arch::mlp5;
    if (name == "resmlp5" || name == "ResMLP-5") return Arch::resmlp5;
    throw std::invalid_argument("unknown architecture: " + name);
}

const char* arch_name(Arch arch) { return arch == Arch::mlp5 ? "mlp5" : "resmlp5"; }

namespace {

constexpr int kLayerCount = 5;

std::vector<DenseLayer> make_layers(Arch arch, int input_dim, int n_classes, int hidden) {
    std::vector<DenseLayer> layers(kLayerCount);
    for (int l = 0; l < kLayerCount; ++l) {
        DenseLayer& layer = layers[static_cast<size_t>(l)];
        layer.in = static_cast<size_t>(l == 0 ? input_dim : hidden);
        layer.out = static_cast<size_t>(l == kLayerCount - 1 ? n_classes : hidden);
        layer.skip = arch == Arch::resmlp5 && l < kLayerCount - 1 && layer.in == layer.out;
        layer.weights.assign(layer.in * layer.out, 0.0);
        layer.bias.assign(layer.out, 0.0);
    }
    return layers;
}

void forward_layer(const DenseLayer& layer, const double* x, double* z) {
    const auto& k = kernels::ops();
    for (size_t j = 0; j < layer.out; ++j) {
        z[j] = k.dot(layer.weights.data() + j * layer.in, x, layer.in) + layer.bias[j];
    }
}

void softmax_inplace(std::vector<double>& v) {
    double peak = v[0];
    for (double x : v) peak = std::max(peak, x);
    double total = 0.0;
    for (double& x : v) {
        x = std::exp(x - peak);
        total += x;
    }
    for (double& x : v) x /= total;
}

}  // namespace

std::vector<double> MlpModel::logits(std::span<const double> x) const {
    if (x.size() != static_cast<size_t>(input_dim)) {
        throw std::invalid_argument("input dimension mismatch: expected " +
                                    std::to_string(input_dim) + ", got " +
                                    std::to_string(x.size()));
    }
    std::vector<double> a(x.begin(), x.end());
    std::vector<double> z;
    for (size_t l = 0; l < layers.size(); ++l) {
        const DenseLayer& layer = layers[l];
        z.assign(layer.out, 0.0);
        forward_layer(layer, a.data(), z.data());
        if (l + 1 == layers.size()) return z;
        for (size_t j = 0; j < layer.out; ++j) {
            double v = z[j] > 0.0 ? z[j] : 0.0;
            if (layer.skip) v += a[j];
            z[j] = v;
        }
        a.swap(z);
    }
    return a;
}

std::vector<double> MlpModel::predict_probabilities(std::span<const double> x) const {
    std::vector<double> p = logits(x);
    softmax_inplace(p);
    return p;
}

double MlpModel::log_odds(std::span<const double> x, int truth_label) const {
    if (truth_label < 0 || truth_label >= n_classes) {
        throw std::invalid_argument("truth label index out of range");
    }
    const std::vector<double> z = logits(x);
    double peak = -std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < z.size(); ++c) {
        if (static_cast<int>(c) != truth_label) peak = std::max(peak, z[c]);
    }
    double rest = 0.0;
    for (size_t c = 0; c < z.size(); ++c) {
        if (static_cast<int>(c) != truth_label) rest += std::exp(z[c] - peak);
    }
    return z[static_cast<size_t>(truth_label)] - (peak + std::log(rest));
}

double loss_and_gradients(const MlpModel& model, std::span<const double> batch_features,
                          std::span<const int> batch_labels, size_t batch_rows,
                          std::vector<DenseLayer>& gradients) {
    const auto& k = kernels::ops();
    const size_t cols = static_cast<size_t>(model.input_dim);
    if (batch_features.size() != batch_rows * cols || batch_labels.size() != batch_rows) {
        throw std::invalid_argument("batch shape mismatch");
    }
    if (gradients.size() != model.layers.size()) {
        gradients = model.layers;
    }
    for (size_t l = 0; l < gradients.size(); ++l) {
        gradients[l].in = model.layers[l].in;
        gradients[l].out = model.layers[l].out;
        gradients[l].skip = model.layers[l].skip;
        gradients[l].weights.assign(model.layers[l].weights.size(), 0.0);
        gradients[l].bias.assign(model.layers[l].bias.size(), 0.0);
    }

    const size_t depth = model.layers.size();
    std::vector<std::vector<double>> act(depth + 1);     // act[l] enters layer l
    std::vector<std::vector<double>> pre(depth);         // pre-activations
    std::vector<std::vector<double>> d_act(depth + 1);

    double loss = 0.0;
    for (size_t r = 0; r < batch_rows; ++r) {
        const double* x = batch_features.data() + r * cols;
        act[0].assign(x, x + cols);
        for (size_t l = 0; l < depth; ++l) {
            const DenseLayer& layer = model.layers[l];
            pre[l].assign(layer.out, 0.0);
            forward_layer(layer, act[l].data(), pre[l].data());
            act[l + 1] = pre[l];
            if (l + 1 < depth) {
                for (size_t j = 0; j < layer.out; ++j) {
                    double v = act[l + 1][j] > 0.0 ? act[l + 1][j] : 0.0;
                    if (layer.skip) v += act[l][j];
                    act[l + 1][j] = v;
                }
            }
        }

        std::vector<double> prob = act[depth];
        softmax_inplace(prob);
        const int label = batch_labels[r];
        if (label < 0 || label >= model.n_classes) {
            throw std::invalid_argument("label out of range in batch");
        }
        const double p_true = std::max(prob[static_cast<size_t>(label)], 1e-300);
        loss -= std::log(p_true);

        // dz for the head is softmax minus one-hot.
        d_act[depth] = prob;
        d_act[depth][static_cast<size_t>(label)] -= 1.0;

        std::vector<double> dz;
        for (size_t l = depth; l-- > 0;) {
            const DenseLayer& layer = model.layers[l];
            DenseLayer& grad = gradients[l];
            // The identity path needs the ungated upstream gradient, so the
            // rectifier gate works on a copy.
            dz = d_act[l + 1];
            if (l + 1 < depth) {
                for (size_t j = 0; j < layer.out; ++j) {
                    if (pre[l][j] <= 0.0) dz[j] = 0.0;
                }
            }
            d_act[l].assign(layer.in, 0.0);
            for (size_t j = 0; j < layer.out; ++j) {
                const double g = dz[j];
                if (g == 0.0) continue;
                k.axpy(g, act[l].data(), grad.weights.data() + j * layer.in, layer.in);
                grad.bias[j] += g;
                k.axpy(g, layer.weights.data() + j * layer.in, d_act[l].data(), layer.in);
            }
            if (layer.skip) {
                const std::vector<double>& dout = d_act[l + 1];
                for (size_t j = 0; j < layer.out; ++j) d_act[l][j] += dout[j];
            }
        }
    }

    const double inv = 1.0 / static_cast<double>(batch_rows);
    for (auto& grad : gradients) {
        for (double& g : grad.weights) g *= inv;
        for (double& g : grad.bias) g *= inv;
    }
    return loss * inv;
}

namespace {

struct AdamState {
    std::vector<double> m_w, v_w, m_b, v_b;
};

void adam_step(DenseLayer& layer, const DenseLayer& grad, AdamState& state,
               const TrainOptions& opt, double bias1, double bias2) {
    auto update = [&](std::vector<double>& param, const std::vector<double>& g,
                      std::vector<double>& m, std::vector<double>& v) {
        for (size_t i = 0; i < param.size(); ++i) {
            m[i] = opt.beta1 * m[i] + (1.0 - opt.beta1) * g[i];
            v[i] = opt.beta2 * v[i] + (1.0 - opt.beta2) * g[i] * g[i];
            const double mh = m[i] / bias1;
            const double vh = v[i] / bias2;
            param[i] -= opt.learning_rate * mh / (std::sqrt(vh) + opt.adam_eps);
        }
    };
    update(layer.weights, grad.weights, state.m_w, state.v_w);
    update(layer.bias, grad.bias, state.m_b, state.v_b);
}

}  // namespace

MlpModel train_mlp(const TabularDataset& ds, Arch arch, const TrainOptions& options,
                   uint64_t seed, TrainSummary* summary) {
    if (!ds.normalized) throw std::logic_error("train_mlp requires a normalized dataset");
    if (ds.n_classes < 2) throw std::invalid_argument("training needs at least two classes");

    MlpModel model;
    model.arch = arch;
    model.input_dim = static_cast<int>(ds.cols);
    model.n_classes = ds.n_classes;
    model.hidden_width = options.hidden_width;
    model.training_seed = seed;
    model.layers = make_layers(arch, model.input_dim, model.n_classes, options.hidden_width);

    Rng rng(seed);
    for (DenseLayer& layer : model.layers) {
        const double scale = std::sqrt(2.0 / static_cast<double>(layer.in));
        for (double& w : layer.weights) w = scale * rng.next_gaussian();
    }

    std::vector<AdamState> adam(model.layers.size());
    for (size_t l = 0; l < model.layers.size(); ++l) {
        adam[l].m_w.assign(model.layers[l].weights.size(), 0.0);
        adam[l].v_w.assign(model.layers[l].weights.size(), 0.0);
        adam[l].m_b.assign(model.layers[l].bias.size(), 0.0);
        adam[l].v_b.assign(model.layers[l].bias.size(), 0.0);
    }

    std::vector<size_t> order = ds.train_indices;
    std::vector<DenseLayer> gradients;
    std::vector<double> batch_features;
    std::vector<int> batch_labels;
    const size_t batch_size = static_cast<size_t>(options.batch_size);

    double last_loss = 0.0;
    long step = 0;
    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        rng.shuffle(order.data(), order.size());
        for (size_t start = 0; start < order.size(); start += batch_size) {
            const size_t end = std::min(order.size(), start + batch_size);
            const size_t rows = end - start;
            batch_features.resize(rows * ds.cols);
            batch_labels.resize(rows);
            for (size_t r = 0; r < rows; ++r) {
                const auto row = ds.row(order[start + r]);
                std::copy(row.begin(), row.end(), batch_features.begin() + static_cast<long>(r * ds.cols));
                batch_labels[r] = ds.labels[order[start + r]];
            }
            last_loss = loss_and_gradients(model, batch_features, batch_labels, rows, gradients);
            if (!std::isfinite(last_loss)) {
                throw std::runtime_error("training diverged (non-finite loss) at epoch " +
                                         std::to_string(epoch));
            }
            ++step;
            const double bias1 = 1.0 - std::pow(options.beta1, static_cast<double>(step));
            const double bias2 = 1.0 - std::pow(options.beta2, static_cast<double>(step));
            for (size_t l = 0; l < model.layers.size(); ++l) {
                adam_step(model.layers[l], gradients[l], adam[l], options, bias1, bias2);
            }
        }
    }

    if (summary) {
        summary->train_accuracy = accuracy(model, ds, ds.train_indices);
        summary->test_accuracy = accuracy(model, ds, ds.test_indices);
        summary->final_loss = last_loss;
    }
    return model;
}

double accuracy(const MlpModel& model, const TabularDataset& ds, std::span<const size_t> rows) {
    if (rows.empty()) return 0.0;
    size_t hits = 0;
    for (size_t r : rows) {
        const auto z = model.logits(ds.row(r));
        const size_t guess = static_cast<size_t>(
            std::max_element(z.begin(), z.end()) - z.begin());
        if (static_cast<int>(guess) == ds.labels[r]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(rows.size());
}

namespace {

constexpr char kModelMagic[5] = {'M', 'L', 'P', 'W', '1'};

void put_u32(std::ofstream& out, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ofstream& out, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

uint32_t get_u32(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
    return v;
}

uint64_t get_u64(std::ifstream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
}

}  // namespace

void save_model(const MlpModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(kModelMagic, sizeof(kModelMagic));
    const unsigned char arch = model.arch == Arch::mlp5 ? 0 : 1;
    out.write(reinterpret_cast<const char*>(&arch), 1);
    put_u32(out, static_cast<uint32_t>(model.input_dim));
    put_u32(out, static_cast<uint32_t>(model.n_classes));
    put_u32(out, static_cast<uint32_t>(model.hidden_width));
    put_u32(out, static_cast<uint32_t>(model.layers.size()));
    put_u64(out, model.training_seed);
    for (const DenseLayer& layer : model.layers) {
        put_u32(out, static_cast<uint32_t>(layer.in));
        put_u32(out, static_cast<uint32_t>(layer.out));
        const unsigned char skip = layer.skip ? 1 : 0;
        out.write(reinterpret_cast<const char*>(&skip), 1);
        for (double w : layer.weights) put_u64(out, std::bit_cast<uint64_t>(w));
        for (double b : layer.bias) put_u64(out, std::bit_cast<uint64_t>(b));
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

MlpModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file " + path.string());
    char magic[5];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, "MLPW", 4) != 0) {
        throw std::runtime_error("bad model file magic in " + path.string());
    }
    if (magic[4] != '1') {
        throw std::runtime_error("unsupported model file version in " + path.string());
    }
    unsigned char arch = 0;
    in.read(reinterpret_cast<char*>(&arch), 1);
    if (arch > 1) throw std::runtime_error("unknown architecture id in " + path.string());

    MlpModel model;
    model.arch = arch == 0 ? Arch::mlp5 : Arch::resmlp5;
    model.input_dim = static_cast<int>(get_u32(in));
    model.n_classes = static_cast<int>(get_u32(in));
    model.hidden_width = static_cast<int>(get_u32(in));
    const uint32_t layer_count = get_u32(in);
    model.training_seed = get_u64(in);
    if (!in || layer_count == 0 || layer_count > 64) {
        throw std::runtime_error("corrupt model header in " + path.string());
    }
    model.layers.resize(layer_count);
    for (DenseLayer& layer : model.layers) {
        layer.in = get_u32(in);
        layer.out = get_u32(in);
        unsigned char skip = 0;
        in.read(reinterpret_cast<char*>(&skip), 1);
        layer.skip = skip != 0;
        if (!in || layer.in == 0 || layer.out == 0 || layer.in > 100000 || layer.out > 100000) {
            throw std::runtime_error("corrupt layer header in " + path.string());
        }
        layer.weights.resize(layer.in * layer.out);
        layer.bias.resize(layer.out);
        for (double& w : layer.weights) w = std::bit_cast<double>(get_u64(in));
        for (double& b : layer.bias) b = std::bit_cast<double>(get_u64(in));
    }
    if (!in) throw std::runtime_error("truncated model file: " + path.string());
    return model;
}

}  // namespace harsanyi
