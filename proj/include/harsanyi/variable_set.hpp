#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <initializer_list>

namespace harsanyi {

// Largest variable count for which dense 2^n tables are allowed.
inline constexpr int kMaxVariables = 25;

inline void check_variable_count(int n) {
    if (n < 1 || n > kMaxVariables) {
        throw std::invalid_argument("variable count must be in [1, " +
                                    std::to_string(kMaxVariables) + "], got " +
                                    std::to_string(n));
    }
}

// Subset of the variable universe {1, ..., n}, stored as a bitmask.
// Bit i-1 set <=> variable i is a member.
struct VariableSet {
    uint32_t bits = 0;
    int n = 0;

    VariableSet() = default;

    VariableSet(uint32_t mask, int vars) : bits(mask), n(vars) {
        check_variable_count(vars);
        if (vars < 32 && mask >= (1u << vars)) {
            throw std::invalid_argument("mask " + std::to_string(mask) +
                                        " out of range for n=" + std::to_string(vars));
        }
    }

    // Build from 1-based variable indices.
    static VariableSet of(std::initializer_list<int> vars, int n) {
        uint32_t mask = 0;
        for (int v : vars) {
            if (v < 1 || v > n) throw std::invalid_argument("variable index out of range");
            mask |= 1u << (v - 1);
        }
        return VariableSet(mask, n);
    }

    static VariableSet empty(int n) { return VariableSet(0, n); }
    static VariableSet full(int n) {
        check_variable_count(n);
        return VariableSet((n == 32) ? ~0u : ((1u << n) - 1u), n);
    }

    int count() const { return std::popcount(bits); }
    bool is_empty() const { return bits == 0; }
    bool contains(int var) const { return (bits >> (var - 1)) & 1u; }
    bool subset_of(const VariableSet& other) const { return (bits & ~other.bits) == 0; }

    bool operator==(const VariableSet&) const = default;
};

// LSB-first rendering: character j is '1' iff variable j+1 is a member,
// so "1100000" at n=7 is {1,2}. Used by the CSV exports.
inline std::string mask_to_string(uint32_t mask, int n) {
    std::string s(static_cast<size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) s[static_cast<size_t>(i)] = '1';
    }
    return s;
}

inline size_t table_size(int n) {
    check_variable_count(n);
    return size_t{1} << n;
}

}  // namespace harsanyi
