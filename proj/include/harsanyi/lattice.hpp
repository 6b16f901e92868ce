#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "harsanyi/variable_set.hpp"

namespace harsanyi {

// Scalar model output for a full feature vector.
using ValueFn = std::function<double(std::span<const double>)>;

// Dense table of masked-model evaluations: entry m = v(sample with variables
// outside mask m replaced by baseline values).
class ValueProfile {
public:
    explicit ValueProfile(int n) : n_(n), values_(table_size(n), 0.0) {}
    ValueProfile(int n, std::vector<double> values);

    int vars() const { return n_; }
    size_t size() const { return values_.size(); }
    double operator[](uint32_t mask) const { return values_[mask]; }
    double& operator[](uint32_t mask) { return values_[mask]; }
    std::span<const double> values() const { return values_; }

private:
    int n_;
    std::vector<double> values_;
};

// Dense table of interaction effects I(S|x), immutable once built.
class InteractionTable {
public:
    static InteractionTable from_effects(int n, std::vector<double> effects);

    int vars() const { return n_; }
    size_t size() const { return effects_.size(); }
    double operator[](uint32_t mask) const { return effects_[mask]; }
    std::span<const double> effects() const { return effects_; }

private:
    InteractionTable(int n, std::vector<double> effects)
        : n_(n), effects_(std::move(effects)) {}

    int n_;
    std::vector<double> effects_;

    friend InteractionTable harsanyi_transform(const ValueProfile&);
};

// Concepts whose |I(S|x)| exceeds threshold_ratio times the max over the
// candidate set. Members are kept in ascending mask order.
struct SalientSet {
    int n = 0;
    double threshold_ratio = 0.0;
    bool include_empty = false;
    std::vector<uint32_t> members;
    std::vector<double> effects;

    size_t size() const { return members.size(); }
    bool contains(uint32_t mask) const;
};

// Evaluates the value function over all 2^n masks. Masked coordinates are
// replaced by the baseline coordinate. When reentrant is false the masks are
// evaluated serially in ascending order; otherwise evaluations may fan out
// across threads.
ValueProfile build_value_profile(const ValueFn& value_fn,
                                 std::span<const double> sample,
                                 std::span<const double> baseline,
                                 bool reentrant = false);

// Fast in-place Mobius transform, O(n 2^n) additions.
InteractionTable harsanyi_transform(const ValueProfile& profile);

// Sum of effects over subsets of S; equals the profile entry for S.
double reconstruct_value(const InteractionTable& table, const VariableSet& subset);

// |sum of all effects - profile[full mask]|.
double efficiency_residual(const ValueProfile& profile, const InteractionTable& table);

SalientSet salient_set(const InteractionTable& table, double threshold_ratio,
                       bool include_empty = false);

// Per table: |I| normalized by the max, sorted descending; averaged
// position-wise across tables. Length 2^n - 1 (or 2^n with the empty set).
std::vector<double> normalized_strength_curve(std::span<const InteractionTable> tables,
                                              bool include_empty = false);

// Versioned binary layout shared by profiles and tables:
// magic "HARS1", n as u8, count 2^n as u64 LE, then 2^n doubles LE.
void write_lattice_file(const std::filesystem::path& path, int n,
                        std::span<const double> entries);
std::pair<int, std::vector<double>> read_lattice_file(const std::filesystem::path& path);

void save(const ValueProfile& profile, const std::filesystem::path& path);
void save(const InteractionTable& table, const std::filesystem::path& path);
ValueProfile load_profile(const std::filesystem::path& path);
InteractionTable load_table(const std::filesystem::path& path);

// CSV export: one "mask,value" row per entry, mask rendered LSB-first.
void write_lattice_csv(const std::filesystem::path& path, int n,
                       std::span<const double> entries);

}  // namespace harsanyi
