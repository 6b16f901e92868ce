#include "harsanyi/value_models.hpp"

#include <cmath>
#include <stdexcept>

#include "harsanyi/rng.hpp"

namespace harsanyi {

void BaselinePolicy::attach_reference(std::span<const double> data, size_t rows, size_t cols) {
    if (kind != Kind::per_variable_mean) {
        throw std::logic_error("reference dataset only applies to per-variable-mean baselines");
    }
    if (rows == 0 || data.size() != rows * cols) {
        throw std::invalid_argument("reference matrix shape mismatch");
    }
    vec.assign(cols, 0.0);
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < cols; ++c) vec[c] += data[r * cols + c];
    }
    for (double& v : vec) v /= static_cast<double>(rows);
}

std::vector<double> BaselinePolicy::resolve(size_t n) const {
    switch (kind) {
        case Kind::zeros:
            return std::vector<double>(n, 0.0);
        case Kind::explicit_vector:
            if (vec.size() != n) {
                throw std::invalid_argument("explicit baseline length " +
                                            std::to_string(vec.size()) + " != n=" +
                                            std::to_string(n));
            }
            return vec;
        case Kind::per_variable_mean:
            if (vec.empty()) {
                throw std::runtime_error(
                    "per-variable-mean baseline has no reference dataset attached");
            }
            if (vec.size() != n) {
                throw std::invalid_argument("baseline reference has wrong column count");
            }
            return vec;
    }
    throw std::logic_error("unreachable");
}

std::vector<double> mask_sample(std::span<const double> sample, const VariableSet& keep,
                                const BaselinePolicy& baseline) {
    if (static_cast<size_t>(keep.n) != sample.size()) {
        throw std::invalid_argument("keep-set universe does not match sample dimension");
    }
    std::vector<double> base = baseline.resolve(sample.size());
    std::vector<double> out(sample.size());
    for (size_t i = 0; i < sample.size(); ++i) {
        out[i] = ((keep.bits >> i) & 1u) ? sample[i] : base[i];
    }
    return out;
}

double logit_value(std::span<const double> class_probabilities, int truth_label) {
    if (truth_label < 0 || static_cast<size_t>(truth_label) >= class_probabilities.size()) {
        throw std::invalid_argument("truth label index out of range");
    }
    double total = 0.0;
    for (double p : class_probabilities) {
        if (!std::isfinite(p)) throw std::invalid_argument("non-finite class probability");
        total += p;
    }
    if (std::fabs(total - 1.0) > 1e-6) {
        throw std::invalid_argument("class probabilities sum to " + std::to_string(total));
    }
    constexpr double kClamp = 1e-12;
    double p = class_probabilities[static_cast<size_t>(truth_label)];
    if (p < kClamp) p = kClamp;
    if (p > 1.0 - kClamp) p = 1.0 - kClamp;
    return std::log(p / (1.0 - p));
}

namespace {

SyntheticGame canonical_game(int n) {
    check_variable_count(n);
    SyntheticGame game;
    game.n = n;
    game.sample.assign(static_cast<size_t>(n), 1.0);
    game.baseline.assign(static_cast<size_t>(n), 0.0);
    return game;
}

uint32_t unmasked_bits(std::span<const double> z, const std::vector<double>& baseline) {
    uint32_t mask = 0;
    for (size_t i = 0; i < z.size(); ++i) {
        if (z[i] != baseline[i]) mask |= 1u << i;
    }
    return mask;
}

}  // namespace

SyntheticGame make_interaction_game(const VariableSet& trigger, double c, int n) {
    if (trigger.is_empty()) {
        throw std::invalid_argument("interaction game needs a non-empty trigger set");
    }
    if (trigger.n != n) throw std::invalid_argument("trigger universe does not match n");
    SyntheticGame game = canonical_game(n);
    const uint32_t bits = trigger.bits;
    const std::vector<double> base = game.baseline;
    game.spec.eval = [bits, c, base](std::span<const double> z) {
        return (unmasked_bits(z, base) & bits) == bits ? c : 0.0;
    };
    game.spec.reentrant = true;
    game.spec.description = "interaction game on " + mask_to_string(bits, n);
    return game;
}

SyntheticGame make_additive_game(std::span<const double> weights) {
    const int n = static_cast<int>(weights.size());
    SyntheticGame game = canonical_game(n);
    for (double w : weights) {
        if (!std::isfinite(w)) throw std::invalid_argument("additive game weight not finite");
    }
    std::vector<double> w(weights.begin(), weights.end());
    const std::vector<double> base = game.baseline;
    game.spec.eval = [w, base](std::span<const double> z) {
        double acc = 0.0;
        for (size_t i = 0; i < z.size(); ++i) {
            if (z[i] != base[i]) acc += w[i];
        }
        return acc;
    };
    game.spec.reentrant = true;
    game.spec.description = "additive game";
    return game;
}

SyntheticGame make_random_game(uint64_t seed, int n, double amplitude) {
    SyntheticGame game = canonical_game(n);
    Rng rng(seed);
    std::vector<double> table(table_size(n));
    for (double& v : table) v = rng.uniform(-amplitude, amplitude);
    const std::vector<double> base = game.baseline;
    game.spec.eval = [table, base](std::span<const double> z) {
        return table[unmasked_bits(z, base)];
    };
    game.spec.reentrant = true;
    game.spec.description = "random game seed=" + std::to_string(seed);
    return game;
}

ValueProfile context_averaged_profile(const ValueFn& value_fn,
                                      std::span<const double> sample,
                                      const VariableSet& analyzed,
                                      const ContextSpec& ctx,
                                      const BaselinePolicy& baseline,
                                      bool reentrant) {
    const int full_dim = static_cast<int>(sample.size());
    if (analyzed.n != full_dim || ctx.context_mask.n != full_dim) {
        throw std::invalid_argument("analyzed/context universes must match the sample dimension");
    }
    if ((analyzed.bits & ctx.context_mask.bits) != 0) {
        throw std::invalid_argument("analyzed and context variables overlap");
    }
    const uint32_t full_bits = VariableSet::full(full_dim).bits;
    if ((analyzed.bits | ctx.context_mask.bits) != full_bits) {
        throw std::invalid_argument("analyzed and context variables must partition the sample");
    }
    const std::vector<double> base = baseline.resolve(sample.size());

    if (ctx.context_mask.is_empty()) {
        return build_value_profile(value_fn, sample, base, reentrant);
    }
    if (ctx.quadrature_points < 2) {
        throw std::invalid_argument("context averaging needs at least 2 quadrature points");
    }

    std::vector<int> analyzed_coords;
    std::vector<int> context_coords;
    for (int i = 0; i < full_dim; ++i) {
        if ((analyzed.bits >> i) & 1u) analyzed_coords.push_back(i);
        else context_coords.push_back(i);
    }
    const int n = static_cast<int>(analyzed_coords.size());
    check_variable_count(n);
    const size_t count = table_size(n);

    ValueProfile profile(n);
    std::vector<double> point(sample.size());
    const int m = ctx.quadrature_points;
    for (int k = 0; k < m; ++k) {
        const double alpha = static_cast<double>(k) / static_cast<double>(m - 1);
        const double weight = ((k == 0 || k == m - 1) ? 0.5 : 1.0) / static_cast<double>(m - 1);
        for (int c : context_coords) {
            point[c] = alpha * sample[c] + (1.0 - alpha) * base[c];
        }
        for (size_t mask = 0; mask < count; ++mask) {
            for (int j = 0; j < n; ++j) {
                const int coord = analyzed_coords[static_cast<size_t>(j)];
                point[coord] = ((mask >> j) & 1u) ? sample[coord] : base[coord];
            }
            const double v = value_fn(point);
            if (!std::isfinite(v)) {
                throw std::runtime_error("value function returned non-finite value at mask " +
                                         mask_to_string(static_cast<uint32_t>(mask), n));
            }
            profile[static_cast<uint32_t>(mask)] += weight * v;
        }
    }
    return profile;
}

}  // namespace harsanyi
