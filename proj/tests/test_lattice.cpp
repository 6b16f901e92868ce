#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "harsanyi/lattice.hpp"
#include "harsanyi/rng.hpp"
#include "oracles.hpp"

using namespace harsanyi;

namespace {

ValueProfile random_profile(Rng& rng, int n, double amplitude = 10.0) {
    ValueProfile p(n);
    for (size_t m = 0; m < p.size(); ++m) {
        p[static_cast<uint32_t>(m)] = rng.uniform(-amplitude, amplitude);
    }
    return p;
}

}  // namespace

TEST_CASE("additive masking example") {
    // value = sum of unmasked entries, sample (1,2), baseline zeros
    const ValueFn fn = [](std::span<const double> z) { return z[0] + z[1]; };
    const std::vector<double> sample = {1.0, 2.0};
    const std::vector<double> baseline = {0.0, 0.0};
    const ValueProfile p = build_value_profile(fn, sample, baseline);
    CHECK(p[0] == 0.0);
    CHECK(p[1] == 1.0);
    CHECK(p[2] == 2.0);
    CHECK(p[3] == 3.0);
}

TEST_CASE("constant value function fills every mask") {
    const ValueFn fn = [](std::span<const double>) { return 7.0; };
    const std::vector<double> sample = {1.0, 2.0, 3.0};
    const std::vector<double> baseline(3, 0.0);
    const ValueProfile p = build_value_profile(fn, sample, baseline);
    REQUIRE(p.size() == 8);
    for (size_t m = 0; m < 8; ++m) CHECK(p[static_cast<uint32_t>(m)] == 7.0);

    // Telescoping: constant profile transforms to a lone empty-set effect.
    const InteractionTable table = harsanyi_transform(p);
    CHECK(table[0] == doctest::Approx(7.0));
    for (uint32_t m = 1; m < 8; ++m) CHECK(table[m] == doctest::Approx(0.0));
}

TEST_CASE("build_value_profile error paths") {
    const ValueFn fn = [](std::span<const double>) { return 0.0; };
    const std::vector<double> sample = {1.0, 2.0};
    const std::vector<double> short_baseline = {0.0};
    CHECK_THROWS_AS(build_value_profile(fn, sample, short_baseline), std::invalid_argument);

    const ValueFn bad = [](std::span<const double> z) {
        return z[0] == 0.0 ? std::nan("") : 1.0;
    };
    const std::vector<double> baseline = {0.0, 0.0};
    CHECK_THROWS_WITH_AS(build_value_profile(bad, sample, baseline),
                         doctest::Contains("non-finite"), std::runtime_error);
}

TEST_CASE("hand-checked transform of a 2-variable profile") {
    const ValueProfile p(2, {0.0, 1.0, 2.0, 4.0});
    const InteractionTable table = harsanyi_transform(p);
    // Frozen from the direct inclusion-exclusion oracle.
    const std::vector<double> expected = oracle::naive_mobius(p.values(), 2);
    CHECK(expected[0] == doctest::Approx(0.0));
    CHECK(expected[1] == doctest::Approx(1.0));
    CHECK(expected[2] == doctest::Approx(2.0));
    CHECK(expected[3] == doctest::Approx(1.0));
    for (uint32_t m = 0; m < 4; ++m) CHECK(table[m] == doctest::Approx(expected[m]));

    CHECK(reconstruct_value(table, VariableSet::of({1, 2}, 2)) == doctest::Approx(4.0));
    CHECK(reconstruct_value(table, VariableSet::empty(2)) == doctest::Approx(0.0));
}

TEST_CASE("fast transform equals the naive oracle on random profiles") {
    Rng rng(1234);
    for (int n = 1; n <= 10; ++n) {
        const ValueProfile p = random_profile(rng, n);
        const InteractionTable table = harsanyi_transform(p);
        const std::vector<double> naive = oracle::naive_mobius(p.values(), n);
        for (size_t m = 0; m < table.size(); ++m) {
            const double err = std::fabs(table[static_cast<uint32_t>(m)] - naive[m]);
            REQUIRE(err <= 1e-9 * std::max(1.0, std::fabs(naive[m])));
        }
    }
}

TEST_CASE("reconstruction round-trips every subset") {
    Rng rng(77);
    for (int n : {1, 2, 5, 8}) {
        const ValueProfile p = random_profile(rng, n);
        const InteractionTable table = harsanyi_transform(p);
        const std::vector<double> zeta = oracle::naive_zeta(table.effects(), n);
        for (size_t m = 0; m < p.size(); ++m) {
            const double rebuilt = reconstruct_value(table, VariableSet(static_cast<uint32_t>(m), n));
            REQUIRE(std::fabs(rebuilt - p[static_cast<uint32_t>(m)]) <=
                    1e-9 * std::max(1.0, std::fabs(p[static_cast<uint32_t>(m)])));
            REQUIRE(rebuilt == doctest::Approx(zeta[m]).epsilon(1e-12));
        }
        // Full-mask reconstruction is the sum of all effects.
        double total = 0.0;
        for (size_t m = 0; m < table.size(); ++m) total += table[static_cast<uint32_t>(m)];
        CHECK(reconstruct_value(table, VariableSet::full(n)) == doctest::Approx(total));
    }
}

TEST_CASE("efficiency residual") {
    Rng rng(3);
    const ValueProfile p = random_profile(rng, 6);
    const InteractionTable table = harsanyi_transform(p);
    CHECK(efficiency_residual(p, table) <= 1e-9 * std::max(1.0, std::fabs(p[63])));

    // Perturbing one entry by 0.5 moves the residual by exactly that much.
    std::vector<double> effects(table.effects().begin(), table.effects().end());
    effects[5] += 0.5;
    const InteractionTable broken = InteractionTable::from_effects(6, std::move(effects));
    CHECK(efficiency_residual(p, broken) == doctest::Approx(0.5).epsilon(1e-9));

    const ValueProfile mismatched(3, std::vector<double>(8, 0.0));
    CHECK_THROWS_AS(efficiency_residual(mismatched, table), std::invalid_argument);
}

TEST_CASE("salient set thresholding") {
    // Effects over non-empty masks {1.0, 0.04, 0.5, -0.2}; empty-set effect
    // parked at a large value to verify the default exclusion.
    const InteractionTable table =
        InteractionTable::from_effects(2, {100.0, 1.0, 0.04, 0.5});
    SUBCASE("threshold keeps strictly-above entries") {
        const SalientSet omega = salient_set(table, 0.05, false);
        REQUIRE(omega.size() == 2);
        CHECK(omega.contains(1));
        CHECK(omega.contains(3));
        CHECK(!omega.contains(0));
        CHECK(omega.effects[0] == 1.0);
    }
    SUBCASE("include_empty pulls the bias into candidacy") {
        const SalientSet omega = salient_set(table, 0.05, true);
        CHECK(omega.contains(0));
        // With the empty set dominating the max, 5.0 is the threshold.
        CHECK(omega.size() == 1);
    }
    SUBCASE("all-zero table yields an empty set") {
        const InteractionTable zeros = InteractionTable::from_effects(2, {0, 0, 0, 0});
        CHECK(salient_set(zeros, 0.05).size() == 0);
    }
    SUBCASE("lambda must be a ratio") {
        CHECK_THROWS_AS(salient_set(table, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(salient_set(table, 1.0), std::invalid_argument);
    }
}

TEST_CASE("salient set shrinks as lambda grows") {
    Rng rng(11);
    const ValueProfile p = random_profile(rng, 7);
    const InteractionTable table = harsanyi_transform(p);
    const SalientSet loose = salient_set(table, 0.05);
    const SalientSet tight = salient_set(table, 0.3);
    CHECK(tight.size() <= loose.size());
    for (uint32_t m : tight.members) CHECK(loose.contains(m));
}

TEST_CASE("normalized strength curve") {
    SUBCASE("single table sorts and normalizes") {
        const InteractionTable table = InteractionTable::from_effects(2, {0.0, 2.0, -1.0, 0.5});
        const std::vector<double> curve = normalized_strength_curve({&table, 1});
        REQUIRE(curve.size() == 3);
        CHECK(curve[0] == doctest::Approx(1.0));
        CHECK(curve[1] == doctest::Approx(0.5));
        CHECK(curve[2] == doctest::Approx(0.25));
    }
    SUBCASE("averaging identical tables is idempotent") {
        const InteractionTable table = InteractionTable::from_effects(2, {0.0, 2.0, -1.0, 0.5});
        std::vector<InteractionTable> two = {table, table};
        const std::vector<double> one = normalized_strength_curve({&table, 1});
        const std::vector<double> avg = normalized_strength_curve(two);
        for (size_t i = 0; i < one.size(); ++i) CHECK(avg[i] == doctest::Approx(one[i]));
    }
    SUBCASE("empty input rejected") {
        CHECK_THROWS_AS(normalized_strength_curve({}), std::invalid_argument);
    }
}

TEST_CASE("binary serialization round-trip") {
    Rng rng(2024);
    const ValueProfile p = random_profile(rng, 5);
    const InteractionTable table = harsanyi_transform(p);

    const auto dir = std::filesystem::temp_directory_path() / "harsanyi_lattice_test";
    std::filesystem::create_directories(dir);
    const auto table_path = dir / "table.bin";
    save(table, table_path);
    const InteractionTable loaded = load_table(table_path);
    REQUIRE(loaded.vars() == 5);
    for (size_t m = 0; m < table.size(); ++m) {
        CHECK(loaded[static_cast<uint32_t>(m)] == table[static_cast<uint32_t>(m)]);
    }

    const auto profile_path = dir / "profile.bin";
    save(p, profile_path);
    const ValueProfile back = load_profile(profile_path);
    for (size_t m = 0; m < p.size(); ++m) {
        CHECK(back[static_cast<uint32_t>(m)] == p[static_cast<uint32_t>(m)]);
    }

    SUBCASE("bad magic is rejected") {
        const auto bad_path = dir / "bad.bin";
        std::ofstream out(bad_path, std::ios::binary);
        out << "NOPE!" << std::string(64, '\0');
        out.close();
        CHECK_THROWS_WITH_AS(load_table(bad_path), doctest::Contains("magic"),
                             std::runtime_error);
    }
    SUBCASE("truncated file is rejected") {
        const auto trunc_path = dir / "trunc.bin";
        std::ofstream out(trunc_path, std::ios::binary);
        std::ifstream in(table_path, std::ios::binary);
        std::vector<char> bytes(40);
        in.read(bytes.data(), static_cast<long>(bytes.size()));
        out.write(bytes.data(), in.gcount());
        out.close();
        CHECK_THROWS(load_table(trunc_path));
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("csv export format") {
    const InteractionTable table = InteractionTable::from_effects(2, {0.0, 1.5, -2.0, 0.25});
    const auto path = std::filesystem::temp_directory_path() / "harsanyi_table.csv";
    write_lattice_csv(path, 2, table.effects());
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "mask,value");
    std::getline(in, line);
    CHECK(line == "00,0");
    std::getline(in, line);
    CHECK(line == "10,1.5");
    std::getline(in, line);
    CHECK(line == "01,-2");
    std::filesystem::remove(path);
}

TEST_CASE("variable set basics") {
    const VariableSet s = VariableSet::of({1, 3}, 3);
    CHECK(s.bits == 0b101);
    CHECK(s.count() == 2);
    CHECK(s.contains(1));
    CHECK(!s.contains(2));
    CHECK(s.subset_of(VariableSet::full(3)));
    CHECK_THROWS_AS(VariableSet(8, 3), std::invalid_argument);
    CHECK_THROWS_AS(VariableSet(0, 26), std::invalid_argument);
    CHECK(mask_to_string(0b101, 3) == "101");
    CHECK(mask_to_string(0b001, 3) == "100");
}
