#pragma once

// Independent brute-force references used only by tests. These deliberately
// follow the defining summations rather than the fast in-place sweeps.

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "harsanyi/lattice.hpp"

namespace oracle {

// Direct inclusion-exclusion: out[S] = sum over T subset S of
// (-1)^(|S|-|T|) values[T]. O(3^n).
inline std::vector<double> naive_mobius(std::span<const double> values, int n) {
    const size_t count = size_t{1} << n;
    std::vector<double> out(count, 0.0);
    for (uint32_t s = 0; s < count; ++s) {
        const int s_card = std::popcount(s);
        uint32_t t = s;
        for (;;) {
            const double sign = ((s_card - std::popcount(t)) % 2 == 0) ? 1.0 : -1.0;
            out[s] += sign * values[t];
            if (t == 0) break;
            t = (t - 1) & s;
        }
    }
    return out;
}

// Direct subset sum: out[S] = sum over T subset S of effects[T]. O(3^n).
inline std::vector<double> naive_zeta(std::span<const double> effects, int n) {
    const size_t count = size_t{1} << n;
    std::vector<double> out(count, 0.0);
    for (uint32_t s = 0; s < count; ++s) {
        uint32_t t = s;
        for (;;) {
            out[s] += effects[t];
            if (t == 0) break;
            t = (t - 1) & s;
        }
    }
    return out;
}

inline double factorial(int k) {
    double acc = 1.0;
    for (int i = 2; i <= k; ++i) acc *= static_cast<double>(i);
    return acc;
}

// Textbook Shapley interaction index via discrete derivatives:
// sum over S disjoint from T of |S|! (n-|T|-|S|)! / (n-|T|+1)! * delta_T v(S),
// delta_T v(S) = sum over L subset T of (-1)^(|T|-|L|) v(S u L).
inline double shapley_interaction_direct(const harsanyi::ValueProfile& profile, uint32_t t_bits) {
    const int n = profile.vars();
    const int t_card = std::popcount(t_bits);
    const uint32_t complement = ((n == 32 ? ~0u : (1u << n) - 1u)) & ~t_bits;
    double acc = 0.0;
    uint32_t s = complement;
    for (;;) {
        const int s_card = std::popcount(s);
        double derivative = 0.0;
        uint32_t l = t_bits;
        for (;;) {
            const double sign = ((t_card - std::popcount(l)) % 2 == 0) ? 1.0 : -1.0;
            derivative += sign * profile[s | l];
            if (l == 0) break;
            l = (l - 1) & t_bits;
        }
        const double weight = factorial(s_card) * factorial(n - t_card - s_card) /
                              factorial(n - t_card + 1);
        acc += weight * derivative;
        if (s == 0) break;
        s = (s - 1) & complement;
    }
    return acc;
}

}  // namespace oracle
