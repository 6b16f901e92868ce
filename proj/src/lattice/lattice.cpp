#include "harsanyi/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "harsanyi/kernels.hpp"

namespace harsanyi {

namespace {

void check_finite_entries(std::span<const double> values, int n, const char* what) {
    for (size_t m = 0; m < values.size(); ++m) {
        if (!std::isfinite(values[m])) {
            throw std::runtime_error(std::string(what) + " has non-finite entry at mask " +
                                     mask_to_string(static_cast<uint32_t>(m), n));
        }
    }
}

void masked_fill(std::span<const double> sample, std::span<const double> baseline,
                 uint32_t keep, std::vector<double>& out) {
    const size_t n = sample.size();
    for (size_t i = 0; i < n; ++i) {
        out[i] = ((keep >> i) & 1u) ? sample[i] : baseline[i];
    }
}

}  // namespace

ValueProfile::ValueProfile(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    if (values_.size() != table_size(n)) {
        throw std::invalid_argument("profile length must be 2^n");
    }
}

InteractionTable InteractionTable::from_effects(int n, std::vector<double> effects) {
    if (effects.size() != table_size(n)) {
        throw std::invalid_argument("effects length must be 2^n");
    }
    return InteractionTable(n, std::move(effects));
}

bool SalientSet::contains(uint32_t mask) const {
    return std::binary_search(members.begin(), members.end(), mask);
}

ValueProfile build_value_profile(const ValueFn& value_fn,
                                 std::span<const double> sample,
                                 std::span<const double> baseline,
                                 bool reentrant) {
    if (sample.size() != baseline.size()) {
        throw std::invalid_argument("sample and baseline dimensions differ (" +
                                    std::to_string(sample.size()) + " vs " +
                                    std::to_string(baseline.size()) + ")");
    }
    const int n = static_cast<int>(sample.size());
    check_variable_count(n);
    const size_t count = table_size(n);

    ValueProfile profile(n);

    auto eval_range = [&](size_t begin, size_t end) {
        std::vector<double> scratch(sample.size());
        for (size_t m = begin; m < end; ++m) {
            masked_fill(sample, baseline, static_cast<uint32_t>(m), scratch);
            const double v = value_fn(scratch);
            if (!std::isfinite(v)) {
                throw std::runtime_error("value function returned non-finite value at mask " +
                                         mask_to_string(static_cast<uint32_t>(m), n));
            }
            profile[static_cast<uint32_t>(m)] = v;
        }
    };

    const unsigned workers = std::thread::hardware_concurrency();
    if (reentrant && workers > 1 && count >= 1024) {
        const size_t stripes = std::min<size_t>(workers, 16);
        const size_t chunk = (count + stripes - 1) / stripes;
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (size_t s = 0; s < stripes; ++s) {
            const size_t begin = s * chunk;
            const size_t end = std::min(count, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back([&, begin, end] {
                try {
                    eval_range(begin, end);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    } else {
        eval_range(0, count);
    }
    return profile;
}

InteractionTable harsanyi_transform(const ValueProfile& profile) {
    std::vector<double> effects(profile.values().begin(), profile.values().end());
    kernels::ops().mobius_inplace(effects.data(), profile.vars());
    return InteractionTable(profile.vars(), std::move(effects));
}

double reconstruct_value(const InteractionTable& table, const VariableSet& subset) {
    if (subset.n != table.vars()) {
        throw std::invalid_argument("subset universe does not match table");
    }
    double acc = 0.0;
    uint32_t sub = subset.bits;
    for (;;) {
        acc += table[sub];
        if (sub == 0) break;
        sub = (sub - 1) & subset.bits;
    }
    return acc;
}

double efficiency_residual(const ValueProfile& profile, const InteractionTable& table) {
    if (profile.vars() != table.vars()) {
        throw std::invalid_argument("profile and table dimensions differ");
    }
    const double total = kernels::ops().sum(table.effects().data(), table.size());
    const uint32_t full = static_cast<uint32_t>(table.size() - 1);
    return std::fabs(total - profile[full]);
}

SalientSet salient_set(const InteractionTable& table, double threshold_ratio,
                       bool include_empty) {
    if (!(threshold_ratio > 0.0 && threshold_ratio < 1.0)) {
        throw std::invalid_argument("threshold ratio must lie in (0, 1)");
    }
    SalientSet out;
    out.n = table.vars();
    out.threshold_ratio = threshold_ratio;
    out.include_empty = include_empty;

    const double* data = table.effects().data();
    const size_t count = table.size();
    const size_t first = include_empty ? 0 : 1;
    const double peak = kernels::ops().abs_max(data + first, count - first);
    if (peak == 0.0) return out;

    const double threshold = threshold_ratio * peak;
    for (size_t m = first; m < count; ++m) {
        if (std::fabs(data[m]) > threshold) {
            out.members.push_back(static_cast<uint32_t>(m));
            out.effects.push_back(data[m]);
        }
    }
    return out;
}

std::vector<double> normalized_strength_curve(std::span<const InteractionTable> tables,
                                              bool include_empty) {
    if (tables.empty()) {
        throw std::invalid_argument("normalized_strength_curve needs at least one table");
    }
    const int n = tables.front().vars();
    const size_t first = include_empty ? 0 : 1;
    const size_t ranks = table_size(n) - first;

    std::vector<double> curve(ranks, 0.0);
    std::vector<double> strengths(ranks);
    for (const auto& table : tables) {
        if (table.vars() != n) {
            throw std::invalid_argument("tables in a strength curve must share n");
        }
        const double* data = table.effects().data();
        const double peak = kernels::ops().abs_max(data + first, ranks);
        for (size_t i = 0; i < ranks; ++i) {
            strengths[i] = (peak == 0.0) ? 0.0 : std::fabs(data[first + i]) / peak;
        }
        std::sort(strengths.begin(), strengths.end(), std::greater<double>());
        for (size_t i = 0; i < ranks; ++i) curve[i] += strengths[i];
    }
    const double inv = 1.0 / static_cast<double>(tables.size());
    for (double& v : curve) v *= inv;
    return curve;
}

namespace {

constexpr char kLatticeMagic[5] = {'H', 'A', 'R', 'S', '1'};

void put_u64_le(std::ofstream& out, uint64_t v) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(bytes), 8);
}

uint64_t get_u64_le(std::ifstream& in) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(bytes[i]) << (8 * i);
    return v;
}

}  // namespace

void write_lattice_file(const std::filesystem::path& path, int n,
                        std::span<const double> entries) {
    if (entries.size() != table_size(n)) {
        throw std::invalid_argument("entry count must be 2^n");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(kLatticeMagic, sizeof(kLatticeMagic));
    const unsigned char nn = static_cast<unsigned char>(n);
    out.write(reinterpret_cast<const char*>(&nn), 1);
    put_u64_le(out, entries.size());
    for (double v : entries) put_u64_le(out, std::bit_cast<uint64_t>(v));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::pair<int, std::vector<double>> read_lattice_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    char magic[5];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kLatticeMagic, sizeof(magic)) != 0) {
        throw std::runtime_error("bad lattice file magic in " + path.string());
    }
    unsigned char nn = 0;
    in.read(reinterpret_cast<char*>(&nn), 1);
    const int n = static_cast<int>(nn);
    check_variable_count(n);
    const uint64_t count = get_u64_le(in);
    if (!in || count != table_size(n)) {
        throw std::runtime_error("lattice file header count mismatch in " + path.string());
    }
    std::vector<double> entries(count);
    for (uint64_t m = 0; m < count; ++m) {
        entries[m] = std::bit_cast<double>(get_u64_le(in));
    }
    if (!in) throw std::runtime_error("truncated lattice file: " + path.string());
    return {n, std::move(entries)};
}

void save(const ValueProfile& profile, const std::filesystem::path& path) {
    write_lattice_file(path, profile.vars(), profile.values());
}

void save(const InteractionTable& table, const std::filesystem::path& path) {
    write_lattice_file(path, table.vars(), table.effects());
}

ValueProfile load_profile(const std::filesystem::path& path) {
    auto [n, entries] = read_lattice_file(path);
    check_finite_entries(entries, n, "value profile");
    return ValueProfile(n, std::move(entries));
}

InteractionTable load_table(const std::filesystem::path& path) {
    auto [n, entries] = read_lattice_file(path);
    check_finite_entries(entries, n, "interaction table");
    return InteractionTable::from_effects(n, std::move(entries));
}

void write_lattice_csv(const std::filesystem::path& path, int n,
                       std::span<const double> entries) {
    if (entries.size() != table_size(n)) {
        throw std::invalid_argument("entry count must be 2^n");
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "mask,value\n";
    char buf[40];
    for (size_t m = 0; m < entries.size(); ++m) {
        std::snprintf(buf, sizeof(buf), "%.17g", entries[m]);
        out << mask_to_string(static_cast<uint32_t>(m), n) << ',' << buf << '\n';
    }
}

}  // namespace harsanyi
