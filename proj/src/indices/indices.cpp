#include "harsanyi/indices.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace harsanyi {

AttributionVector shapley_from_dividends(const InteractionTable& table) {
    const int n = table.vars();
    AttributionVector out;
    out.phi.assign(static_cast<size_t>(n), 0.0);
    out.baseline = table[0];
    const size_t count = table.size();
    for (size_t mask = 1; mask < count; ++mask) {
        const double share = table[static_cast<uint32_t>(mask)] /
                             static_cast<double>(std::popcount(static_cast<uint32_t>(mask)));
        uint32_t rest = static_cast<uint32_t>(mask);
        while (rest) {
            const int i = std::countr_zero(rest);
            out.phi[static_cast<size_t>(i)] += share;
            rest &= rest - 1;
        }
    }
    return out;
}

AttributionVector shapley_permutation_oracle(const ValueProfile& profile) {
    const int n = profile.vars();
    if (n > 10) {
        throw std::invalid_argument("permutation oracle enumerates n! orderings; n must be <= 10");
    }
    AttributionVector out;
    out.phi.assign(static_cast<size_t>(n), 0.0);
    out.baseline = profile[0];

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    size_t permutations = 0;
    do {
        uint32_t prefix = 0;
        for (int i : order) {
            const uint32_t with = prefix | (1u << i);
            out.phi[static_cast<size_t>(i)] += profile[with] - profile[prefix];
            prefix = with;
        }
        ++permutations;
    } while (std::next_permutation(order.begin(), order.end()));

    for (double& v : out.phi) v /= static_cast<double>(permutations);
    return out;
}

double shapley_interaction_index(const InteractionTable& table, const VariableSet& coalition) {
    if (coalition.n != table.vars()) {
        throw std::invalid_argument("coalition universe does not match table");
    }
    if (coalition.is_empty()) {
        throw std::invalid_argument("shapley interaction index needs a non-empty coalition");
    }
    const uint32_t complement = VariableSet::full(table.vars()).bits & ~coalition.bits;
    double acc = 0.0;
    uint32_t sub = complement;
    for (;;) {
        acc += table[sub | coalition.bits] / static_cast<double>(std::popcount(sub) + 1);
        if (sub == 0) break;
        sub = (sub - 1) & complement;
    }
    return acc;
}

namespace {

// Exact for arguments up to 50 in double precision.
double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return acc;
}

}  // namespace

double shapley_taylor_index(const InteractionTable& table, const VariableSet& coalition,
                            int order) {
    if (coalition.n != table.vars()) {
        throw std::invalid_argument("coalition universe does not match table");
    }
    if (order < 1 || order > table.vars()) {
        throw std::invalid_argument("shapley-taylor order must lie in [1, n]");
    }
    const int t = coalition.count();
    if (t > order) return 0.0;
    if (t < order) return table[coalition.bits];

    const uint32_t complement = VariableSet::full(table.vars()).bits & ~coalition.bits;
    double acc = 0.0;
    uint32_t sub = complement;
    for (;;) {
        const int s = std::popcount(sub);
        acc += table[sub | coalition.bits] / binomial(s + order, order);
        if (sub == 0) break;
        sub = (sub - 1) & complement;
    }
    return acc;
}

}  // namespace harsanyi
