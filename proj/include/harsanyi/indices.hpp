#pragma once

#include <vector>

#include "harsanyi/lattice.hpp"
#include "harsanyi/variable_set.hpp"

namespace harsanyi {

// Per-variable attributions; phi[i] is 0-based for variable i+1.
// sum(phi) + baseline == v(full) for tables from harsanyi_transform.
struct AttributionVector {
    std::vector<double> phi;
    double baseline = 0.0;  // effect of the empty set
};

// phi(i) = sum over S containing i of I(S) / |S|.
AttributionVector shapley_from_dividends(const InteractionTable& table);

// Exact average of marginal contributions over all n! orderings. Ground
// truth, not an estimator; capped at n <= 10.
AttributionVector shapley_permutation_oracle(const ValueProfile& profile);

// Shapley interaction index: sum over S disjoint from T of I(S u T) / (|S|+1).
double shapley_interaction_index(const InteractionTable& table, const VariableSet& coalition);

// k-th order Shapley-Taylor index: I(T) if |T| < k; weighted superset sum with
// 1/binom(|S|+k, k) if |T| == k; 0 if |T| > k.
double shapley_taylor_index(const InteractionTable& table, const VariableSet& coalition,
                            int order);

}  // namespace harsanyi
