#pragma once

#include <span>
#include <string>
#include <vector>

#include "harsanyi/lattice.hpp"
#include "harsanyi/variable_set.hpp"

namespace harsanyi {

// Per-variable replacement values used when masking.
struct BaselinePolicy {
    enum class Kind { per_variable_mean, zeros, explicit_vector };

    Kind kind = Kind::zeros;
    std::vector<double> vec;  // explicit values, or resolved per-variable means

    static BaselinePolicy zeros() { return {Kind::zeros, {}}; }
    static BaselinePolicy explicit_vector(std::vector<double> v) {
        return {Kind::explicit_vector, std::move(v)};
    }
    // Unresolved until a reference dataset is attached.
    static BaselinePolicy per_variable_mean() { return {Kind::per_variable_mean, {}}; }

    // Computes column means over a row-major reference matrix.
    void attach_reference(std::span<const double> data, size_t rows, size_t cols);

    // Concrete baseline vector of length n. Throws if a per-variable-mean
    // policy has no reference attached or an explicit vector has wrong length.
    std::vector<double> resolve(size_t n) const;
};

// Deterministic scalar evaluator over full feature vectors.
struct ValueFunctionSpec {
    ValueFn eval;
    bool reentrant = false;
    std::string description;
};

// Designated context variables averaged out via an alpha-blend toward the
// baseline, integrated by the trapezoidal rule on quadrature_points nodes.
struct ContextSpec {
    VariableSet context_mask;
    int quadrature_points = 21;
};

// Kept coordinates copied from the sample, others from the baseline.
std::vector<double> mask_sample(std::span<const double> sample, const VariableSet& keep,
                                const BaselinePolicy& baseline);

// log(p / (1 - p)) for the truth-label probability, clamped to
// [1e-12, 1 - 1e-12]. Probabilities must sum to 1 within 1e-6.
double logit_value(std::span<const double> class_probabilities, int truth_label);

// Synthetic games evaluate against a canonical sample/baseline pair; the
// evaluator detects unmasked coordinates by comparing against the baseline.
struct SyntheticGame {
    ValueFunctionSpec spec;
    std::vector<double> sample;    // canonical all-ones input
    std::vector<double> baseline;  // canonical all-zeros baseline
    int n = 0;

    ValueProfile profile(bool reentrant = false) const {
        return build_value_profile(spec.eval, sample, baseline, spec.reentrant || reentrant);
    }
};

// v_T(x_S) = c iff T is fully unmasked, else 0.
SyntheticGame make_interaction_game(const VariableSet& trigger, double c, int n);

// v(x_S) = sum of weights of unmasked variables.
SyntheticGame make_additive_game(std::span<const double> weights);

// Profile values drawn uniformly from [-amplitude, amplitude], reproducible
// from the seed.
SyntheticGame make_random_game(uint64_t seed, int n, double amplitude);

// Value profile over the analyzed variables with the context coordinates
// alpha-blended toward the baseline and averaged over alpha in [0, 1].
// Analyzed and context variables must partition the feature vector.
ValueProfile context_averaged_profile(const ValueFn& value_fn,
                                      std::span<const double> sample,
                                      const VariableSet& analyzed,
                                      const ContextSpec& ctx,
                                      const BaselinePolicy& baseline,
                                      bool reentrant = false);

}  // namespace harsanyi
