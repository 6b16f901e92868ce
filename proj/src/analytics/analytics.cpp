#include "harsanyi/analytics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "harsanyi/rng.hpp"

namespace harsanyi {

bool ConceptDictionary::contains(uint32_t mask) const {
    for (uint32_t e : entries) {
        if (e == mask) return true;
    }
    return false;
}

ConceptDictionary build_dictionary(std::span<const SalientSet> salient_sets, size_t k) {
    if (salient_sets.empty()) throw std::invalid_argument("dictionary needs a sample population");
    if (k < 1) throw std::invalid_argument("dictionary size must be >= 1");

    const int n = salient_sets.front().n;
    std::unordered_map<uint32_t, size_t> counts;
    for (const SalientSet& omega : salient_sets) {
        if (omega.n != n) throw std::invalid_argument("salient sets must share n");
        for (uint32_t m : omega.members) ++counts[m];
    }

    std::vector<std::pair<uint32_t, size_t>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    ConceptDictionary dict;
    dict.n = n;
    dict.requested_k = k;
    dict.shortfall = ranked.size() < k;
    const size_t take = std::min(k, ranked.size());
    const double inv_m = 1.0 / static_cast<double>(salient_sets.size());
    dict.entries.reserve(take);
    dict.frequency.reserve(take);
    for (size_t i = 0; i < take; ++i) {
        dict.entries.push_back(ranked[i].first);
        dict.frequency.push_back(static_cast<double>(ranked[i].second) * inv_m);
    }
    return dict;
}

double explanation_ratio(const ConceptDictionary& dict,
                         std::span<const SalientSet> salient_sets,
                         size_t* excluded_samples) {
    std::vector<uint32_t> sorted_entries(dict.entries.begin(), dict.entries.end());
    std::sort(sorted_entries.begin(), sorted_entries.end());

    double total = 0.0;
    size_t used = 0, excluded = 0;
    for (const SalientSet& omega : salient_sets) {
        if (omega.members.empty()) {
            ++excluded;
            continue;
        }
        size_t covered = 0;
        for (uint32_t m : omega.members) {
            if (std::binary_search(sorted_entries.begin(), sorted_entries.end(), m)) ++covered;
        }
        total += static_cast<double>(covered) / static_cast<double>(omega.members.size());
        ++used;
    }
    if (excluded_samples) *excluded_samples = excluded;
    if (used == 0) throw std::runtime_error("every sample has an empty salient set");
    return total / static_cast<double>(used);
}

double cross_model_transfer(const SalientSet& omega1, const SalientSet& omega2) {
    if (omega1.members.empty()) {
        throw std::invalid_argument("transferability requires a non-empty source set");
    }
    size_t covered = 0;
    for (uint32_t m : omega1.members) {
        if (omega2.contains(m)) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(omega1.members.size());
}

RandomTransferBaseline random_transfer_baseline(size_t size1, size_t size2, int n,
                                                int trials, uint64_t seed) {
    check_variable_count(n);
    const uint64_t universe = (uint64_t{1} << n) - 1;  // non-empty concepts
    if (size1 < 1 || size1 > universe || size2 > universe) {
        throw std::invalid_argument("subset sizes exceed the concept universe");
    }
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");

    Rng rng(seed);
    std::vector<uint32_t> pool;
    const bool small_universe = universe <= 65536;
    if (small_universe) {
        pool.resize(universe);
        for (uint64_t i = 0; i < universe; ++i) pool[i] = static_cast<uint32_t>(i + 1);
    }

    auto draw = [&](size_t size, std::vector<uint32_t>& out) {
        out.clear();
        if (small_universe) {
            // Partial Fisher-Yates over the candidate pool.
            for (size_t i = 0; i < size; ++i) {
                const size_t j = i + static_cast<size_t>(rng.next_below(universe - i));
                std::swap(pool[i], pool[j]);
                out.push_back(pool[i]);
            }
        } else {
            // Floyd's sampling: uniform distinct draws without rejection.
            std::unordered_set<uint32_t> chosen;
            for (uint64_t i = universe - size; i < universe; ++i) {
                const uint32_t candidate = static_cast<uint32_t>(1 + rng.next_below(i + 1));
                if (!chosen.insert(candidate).second) {
                    chosen.insert(static_cast<uint32_t>(i + 1));
                }
            }
            out.assign(chosen.begin(), chosen.end());
        }
        std::sort(out.begin(), out.end());
    };

    double sum = 0.0, sum_sq = 0.0;
    std::vector<uint32_t> a, b;
    for (int t = 0; t < trials; ++t) {
        draw(size1, a);
        draw(size2, b);
        size_t overlap = 0;
        for (uint32_t m : a) {
            if (std::binary_search(b.begin(), b.end(), m)) ++overlap;
        }
        const double gamma = static_cast<double>(overlap) / static_cast<double>(size1);
        sum += gamma;
        sum_sq += gamma * gamma;
    }

    RandomTransferBaseline out;
    out.trials = trials;
    out.mc_mean = sum / trials;
    const double var = trials > 1
        ? std::max(0.0, (sum_sq - sum * sum / trials) / static_cast<double>(trials - 1))
        : 0.0;
    out.mc_stderr = std::sqrt(var / trials);
    out.analytic = static_cast<double>(size2) / static_cast<double>(universe);
    return out;
}

DiscriminationResult discrimination_stats(std::span<const InteractionTable> tables,
                                          double lambda, bool include_empty) {
    if (tables.empty()) throw std::invalid_argument("discrimination needs a sample population");

    DiscriminationResult out;
    out.population = tables.size();
    out.lambda = lambda;

    std::unordered_map<uint32_t, std::pair<int, int>> counts;  // mask -> (m+, m-)
    for (const InteractionTable& table : tables) {
        const SalientSet omega = salient_set(table, lambda, include_empty);
        for (size_t i = 0; i < omega.members.size(); ++i) {
            auto& c = counts[omega.members[i]];
            if (omega.effects[i] > 0.0) ++c.first;
            else ++c.second;
        }
    }

    out.concepts.reserve(counts.size());
    for (const auto& [mask, c] : counts) {
        ConceptStat stat;
        stat.mask = mask;
        stat.m_plus = c.first;
        stat.m_minus = c.second;
        const int active = c.first + c.second;
        stat.alpha = static_cast<double>(active) / static_cast<double>(out.population);
        stat.beta = static_cast<double>(std::max(c.first, c.second)) / static_cast<double>(active);
        out.concepts.push_back(stat);
    }
    std::sort(out.concepts.begin(), out.concepts.end(),
              [](const ConceptStat& a, const ConceptStat& b) { return a.mask < b.mask; });

    double weight_total = 0.0, weighted_beta = 0.0;
    std::array<double, 5> bucket_sum{};
    for (const ConceptStat& stat : out.concepts) {
        weight_total += stat.alpha;
        weighted_beta += stat.alpha * stat.beta;
        int bucket = static_cast<int>(std::ceil(stat.alpha * 5.0)) - 1;
        bucket = std::clamp(bucket, 0, 4);
        bucket_sum[static_cast<size_t>(bucket)] += stat.beta;
        ++out.bucket_count[static_cast<size_t>(bucket)];
    }
    out.beta_bar = weight_total > 0.0 ? weighted_beta / weight_total : 0.0;
    for (size_t i = 0; i < 5; ++i) {
        out.bucket_mean_beta[i] =
            out.bucket_count[i] > 0 ? bucket_sum[i] / out.bucket_count[i] : 0.0;
    }
    return out;
}

double multi_variable_strength(std::span<const SalientSet> salient_sets,
                               size_t* excluded_samples) {
    if (salient_sets.empty()) throw std::invalid_argument("kappa needs a sample population");
    double total_ratio = 0.0;
    size_t used = 0, excluded = 0;
    for (const SalientSet& omega : salient_sets) {
        double mass = 0.0, multi_mass = 0.0;
        for (size_t i = 0; i < omega.members.size(); ++i) {
            const double a = std::fabs(omega.effects[i]);
            mass += a;
            if (std::popcount(omega.members[i]) >= 2) multi_mass += a;
        }
        if (mass == 0.0) {
            ++excluded;
            continue;
        }
        total_ratio += multi_mass / mass;
        ++used;
    }
    if (excluded_samples) *excluded_samples = excluded;
    if (used == 0) throw std::runtime_error("every sample has zero salient effect mass");
    return total_ratio / static_cast<double>(used);
}

EffectHistogram effect_histogram(uint32_t concept_mask,
                                 std::span<const InteractionTable> tables, double lambda,
                                 int bins, bool include_empty) {
    if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
    EffectHistogram out;
    out.mask = concept_mask;

    std::vector<double> effects;
    for (const InteractionTable& table : tables) {
        const SalientSet omega = salient_set(table, lambda, include_empty);
        if (omega.contains(concept_mask)) effects.push_back(table[concept_mask]);
    }
    out.count = effects.size();
    if (effects.empty()) return out;

    int positives = 0;
    double total = 0.0;
    out.lo = effects.front();
    out.hi = effects.front();
    for (double e : effects) {
        total += e;
        out.lo = std::min(out.lo, e);
        out.hi = std::max(out.hi, e);
        if (e > 0.0) ++positives;
    }
    out.mean = total / static_cast<double>(effects.size());
    const int negatives = static_cast<int>(effects.size()) - positives;
    out.sign_consistency =
        static_cast<double>(std::max(positives, negatives)) / static_cast<double>(effects.size());

    out.bins.assign(static_cast<size_t>(bins), 0);
    const double width = out.hi - out.lo;
    for (double e : effects) {
        int idx = width == 0.0
            ? 0
            : static_cast<int>((e - out.lo) / width * static_cast<double>(bins));
        idx = std::clamp(idx, 0, bins - 1);
        ++out.bins[static_cast<size_t>(idx)];
    }
    return out;
}

double order_sensitivity(const InteractionTable& clean, const InteractionTable& perturbed,
                         int order) {
    if (clean.vars() != perturbed.vars()) {
        throw std::invalid_argument("order sensitivity needs tables of matching n");
    }
    if (order < 1 || order > clean.vars()) {
        throw std::invalid_argument("order must lie in [1, n]");
    }
    double change = 0.0, mass = 0.0;
    const size_t count = clean.size();
    for (size_t m = 1; m < count; ++m) {
        if (std::popcount(static_cast<uint32_t>(m)) != order) continue;
        change += std::fabs(perturbed[static_cast<uint32_t>(m)] - clean[static_cast<uint32_t>(m)]);
        mass += std::fabs(clean[static_cast<uint32_t>(m)]);
    }
    if (mass == 0.0) {
        throw std::runtime_error("zero effect mass at order " + std::to_string(order));
    }
    return change / mass;
}

}  // namespace harsanyi
