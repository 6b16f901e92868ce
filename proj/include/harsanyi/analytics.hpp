#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "harsanyi/lattice.hpp"

namespace harsanyi {

// Top-k concepts by salience frequency over a sample population. Ties break
// by ascending mask value; when fewer concepts were ever salient than
// requested, the dictionary holds all of them and reports the shortfall.
struct ConceptDictionary {
    int n = 0;
    size_t requested_k = 0;
    std::vector<uint32_t> entries;    // non-increasing frequency order
    std::vector<double> frequency;    // parallel to entries
    bool shortfall = false;

    bool contains(uint32_t mask) const;
};

ConceptDictionary build_dictionary(std::span<const SalientSet> salient_sets, size_t k);

// rho(k): mean over samples of |D_k intersect Omega_x| / |Omega_x|. Samples
// with empty Omega_x are excluded; their count lands in excluded_samples.
double explanation_ratio(const ConceptDictionary& dict,
                         std::span<const SalientSet> salient_sets,
                         size_t* excluded_samples = nullptr);

// gamma: |Omega_1 intersect Omega_2| / |Omega_1|. Requires |Omega_1| >= 1.
double cross_model_transfer(const SalientSet& omega1, const SalientSet& omega2);

struct RandomTransferBaseline {
    double mc_mean = 0.0;
    double mc_stderr = 0.0;
    double analytic = 0.0;  // size2 / (2^n - 1)
    int trials = 0;
};

// Monte Carlo gamma over uniformly drawn subset pairs of fixed sizes from the
// 2^n - 1 non-empty concepts.
RandomTransferBaseline random_transfer_baseline(size_t size1, size_t size2, int n,
                                                int trials, uint64_t seed);

struct ConceptStat {
    uint32_t mask = 0;
    int m_plus = 0;
    int m_minus = 0;
    double alpha = 0.0;  // (m+ + m-) / m
    double beta = 0.0;   // max(m+, m-) / (m+ + m-)
};

struct DiscriminationResult {
    size_t population = 0;  // m
    double lambda = 0.0;
    std::vector<ConceptStat> concepts;        // ascending mask order
    double beta_bar = 0.0;                    // alpha-weighted mean beta
    std::array<double, 5> bucket_mean_beta{}; // alpha in (0,.2], ..., (.8,1]
    std::array<int, 5> bucket_count{};
};

DiscriminationResult discrimination_stats(std::span<const InteractionTable> tables,
                                          double lambda, bool include_empty = false);

// kappa: mean over samples of multi-variable salient effect mass over total
// salient effect mass. Samples with zero salient mass are excluded.
double multi_variable_strength(std::span<const SalientSet> salient_sets,
                               size_t* excluded_samples = nullptr);

struct EffectHistogram {
    uint32_t mask = 0;
    size_t count = 0;           // samples where the concept was salient
    double lo = 0.0, hi = 0.0;  // bin range
    std::vector<int> bins;
    double mean = 0.0;
    double sign_consistency = 0.0;  // max(m+, m-) / (m+ + m-)
};

EffectHistogram effect_histogram(uint32_t concept_mask,
                                 std::span<const InteractionTable> tables, double lambda,
                                 int bins = 20, bool include_empty = false);

// Ratio of absolute per-order effect change to per-order effect mass at
// order s. Throws when the clean table has no mass at that order.
double order_sensitivity(const InteractionTable& clean, const InteractionTable& perturbed,
                         int order);

}  // namespace harsanyi
