#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "harsanyi/analytics.hpp"
#include "harsanyi/rng.hpp"
#include "harsanyi/value_models.hpp"

using namespace harsanyi;

namespace {

SalientSet set_of(int n, std::vector<std::pair<uint32_t, double>> entries) {
    SalientSet s;
    s.n = n;
    s.threshold_ratio = 0.05;
    std::sort(entries.begin(), entries.end());
    for (const auto& [mask, effect] : entries) {
        s.members.push_back(mask);
        s.effects.push_back(effect);
    }
    return s;
}

}  // namespace

TEST_CASE("dictionary construction") {
    SUBCASE("identical salient sets give frequency one") {
        const SalientSet omega = set_of(4, {{1, 1.0}, {3, -0.5}, {5, 0.2}, {9, 0.7}, {12, 0.4}});
        std::vector<SalientSet> population(6, omega);
        const ConceptDictionary dict = build_dictionary(population, 5);
        REQUIRE(dict.entries.size() == 5);
        CHECK(!dict.shortfall);
        for (double f : dict.frequency) CHECK(f == doctest::Approx(1.0));
        // Ties at frequency 1.0 break by ascending mask.
        CHECK(dict.entries == std::vector<uint32_t>{1, 3, 5, 9, 12});
    }
    SUBCASE("disjoint sets split the frequency") {
        const SalientSet a = set_of(4, {{1, 1.0}, {2, 1.0}, {4, 1.0}});
        const SalientSet b = set_of(4, {{8, 1.0}, {9, 1.0}, {10, 1.0}});
        std::vector<SalientSet> population = {a, b};
        const ConceptDictionary dict = build_dictionary(population, 6);
        REQUIRE(dict.entries.size() == 6);
        for (double f : dict.frequency) CHECK(f == doctest::Approx(0.5));
    }
    SUBCASE("shortfall keeps every available concept") {
        const SalientSet omega = set_of(4, {{1, 1.0}, {2, 0.5}});
        std::vector<SalientSet> population = {omega};
        const ConceptDictionary dict = build_dictionary(population, 10);
        CHECK(dict.shortfall);
        CHECK(dict.entries.size() == 2);
        CHECK(dict.requested_k == 10);
    }
    SUBCASE("determinism") {
        Rng rng(50);
        std::vector<SalientSet> population;
        for (int i = 0; i < 40; ++i) {
            std::vector<std::pair<uint32_t, double>> entries;
            for (uint32_t m = 1; m < 16; ++m) {
                if (rng.next_double() < 0.4) entries.push_back({m, rng.uniform(-1.0, 1.0)});
            }
            if (entries.empty()) entries.push_back({1, 0.5});
            population.push_back(set_of(4, std::move(entries)));
        }
        const ConceptDictionary d1 = build_dictionary(population, 8);
        const ConceptDictionary d2 = build_dictionary(population, 8);
        CHECK(d1.entries == d2.entries);
        CHECK(d1.frequency == d2.frequency);
    }
}

TEST_CASE("explanation ratio") {
    const SalientSet omega = set_of(3, {{1, 1.0}, {2, -0.4}, {3, 0.3}, {6, 0.2}});
    std::vector<SalientSet> population = {omega};
    SUBCASE("full coverage is one") {
        const ConceptDictionary dict = build_dictionary(population, 4);
        CHECK(explanation_ratio(dict, population) == doctest::Approx(1.0));
    }
    SUBCASE("disjoint dictionary is zero") {
        ConceptDictionary dict;
        dict.n = 3;
        dict.requested_k = 2;
        dict.entries = {4, 5};
        dict.frequency = {1.0, 1.0};
        CHECK(explanation_ratio(dict, population) == doctest::Approx(0.0));
    }
    SUBCASE("three of four covered is 0.75") {
        ConceptDictionary dict;
        dict.n = 3;
        dict.requested_k = 3;
        dict.entries = {1, 2, 3};
        dict.frequency = {1.0, 1.0, 1.0};
        CHECK(explanation_ratio(dict, population) == doctest::Approx(0.75));
    }
    SUBCASE("empty salient sets are excluded and counted") {
        SalientSet empty;
        empty.n = 3;
        std::vector<SalientSet> mixed = {omega, empty};
        const ConceptDictionary dict = build_dictionary(mixed, 4);
        size_t excluded = 0;
        CHECK(explanation_ratio(dict, mixed, &excluded) == doctest::Approx(1.0));
        CHECK(excluded == 1);
        std::vector<SalientSet> none = {empty};
        CHECK_THROWS_AS(explanation_ratio(dict, none), std::runtime_error);
    }
    SUBCASE("rho is non-decreasing in k") {
        Rng rng(123);
        std::vector<SalientSet> sets;
        for (int i = 0; i < 25; ++i) {
            std::vector<std::pair<uint32_t, double>> entries;
            for (uint32_t m = 1; m < 32; ++m) {
                if (rng.next_double() < 0.3) entries.push_back({m, rng.uniform(-1.0, 1.0)});
            }
            if (entries.empty()) entries.push_back({1u, 0.5});
            sets.push_back(set_of(5, std::move(entries)));
        }
        double prev = 0.0;
        for (size_t k = 1; k <= 31; ++k) {
            const double rho = explanation_ratio(build_dictionary(sets, k), sets);
            CHECK(rho >= prev - 1e-12);
            prev = rho;
        }
        CHECK(prev == doctest::Approx(1.0));  // every ever-salient concept covered
    }
}

TEST_CASE("cross-model transfer") {
    const SalientSet a = set_of(4, {{1, 1.0}, {2, 0.5}, {4, -0.3}, {8, 0.2}});
    SUBCASE("identical sets transfer fully") {
        CHECK(cross_model_transfer(a, a) == doctest::Approx(1.0));
    }
    SUBCASE("disjoint sets do not transfer") {
        const SalientSet b = set_of(4, {{3, 1.0}, {5, 0.5}});
        CHECK(cross_model_transfer(a, b) == doctest::Approx(0.0));
    }
    SUBCASE("half overlap") {
        const SalientSet b = set_of(4, {{1, 0.9}, {2, 0.4}, {3, 0.1}});
        CHECK(cross_model_transfer(a, b) == doctest::Approx(0.5));
    }
    SUBCASE("gamma grows with the target set") {
        const SalientSet small = set_of(4, {{1, 1.0}});
        const SalientSet large = set_of(4, {{1, 1.0}, {2, 1.0}, {4, 1.0}, {8, 1.0}});
        CHECK(cross_model_transfer(a, small) <= cross_model_transfer(a, large));
    }
    SUBCASE("empty source set rejected") {
        SalientSet empty;
        empty.n = 4;
        CHECK_THROWS_AS(cross_model_transfer(empty, a), std::invalid_argument);
    }
}

TEST_CASE("random transfer baseline") {
    SUBCASE("full target set forces gamma one") {
        const RandomTransferBaseline r = random_transfer_baseline(5, 15, 4, 200, 9);
        CHECK(r.mc_mean == doctest::Approx(1.0));
        CHECK(r.analytic == doctest::Approx(1.0));
    }
    SUBCASE("empty target set forces gamma zero") {
        const RandomTransferBaseline r = random_transfer_baseline(5, 0, 4, 200, 9);
        CHECK(r.mc_mean == doctest::Approx(0.0));
    }
    SUBCASE("n=9 with 20 concepts sits near 20/511") {
        const RandomTransferBaseline r = random_transfer_baseline(20, 20, 9, 10000, 13);
        CHECK(r.analytic == doctest::Approx(20.0 / 511.0));
        CHECK(std::fabs(r.mc_mean - r.analytic) <= 3.0 * r.mc_stderr);
        CHECK(r.mc_mean < 0.05);
    }
    SUBCASE("oversized requests are rejected") {
        CHECK_THROWS_AS(random_transfer_baseline(16, 3, 4, 10, 1), std::invalid_argument);
    }
}

TEST_CASE("discrimination stats") {
    // Three concepts over a population of 20 tables at n=3:
    //   mask 1: salient in all, always positive
    //   mask 3: salient in 10, 8 positive / 2 negative
    //   mask 6: salient in 4, evenly split
    std::vector<InteractionTable> tables;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> effects(8, 0.0);
        effects[1] = 10.0;
        if (i < 10) effects[3] = (i < 8) ? 5.0 : -5.0;
        if (i < 4) effects[6] = (i % 2 == 0) ? 4.0 : -4.0;
        tables.push_back(InteractionTable::from_effects(3, std::move(effects)));
    }
    const DiscriminationResult disc = discrimination_stats(tables, 0.05);
    REQUIRE(disc.concepts.size() == 3);
    CHECK(disc.population == 20);

    const ConceptStat& c1 = disc.concepts[0];
    CHECK(c1.mask == 1);
    CHECK(c1.alpha == doctest::Approx(1.0));
    CHECK(c1.beta == doctest::Approx(1.0));

    const ConceptStat& c3 = disc.concepts[1];
    CHECK(c3.mask == 3);
    CHECK(c3.m_plus == 8);
    CHECK(c3.m_minus == 2);
    CHECK(c3.alpha == doctest::Approx(0.5));
    CHECK(c3.beta == doctest::Approx(0.8));

    const ConceptStat& c6 = disc.concepts[2];
    CHECK(c6.alpha == doctest::Approx(0.2));
    CHECK(c6.beta == doctest::Approx(0.5));

    // beta_bar = (1*1 + 0.5*0.8 + 0.2*0.5) / 1.7
    CHECK(disc.beta_bar == doctest::Approx((1.0 + 0.4 + 0.1) / 1.7));

    // Buckets: alpha=0.2 -> (0,0.2], alpha=0.5 -> (0.4,0.6], alpha=1 -> (0.8,1].
    CHECK(disc.bucket_count[0] == 1);
    CHECK(disc.bucket_count[2] == 1);
    CHECK(disc.bucket_count[4] == 1);
    CHECK(disc.bucket_mean_beta[0] == doctest::Approx(0.5));
    CHECK(disc.bucket_mean_beta[2] == doctest::Approx(0.8));
    CHECK(disc.bucket_mean_beta[4] == doctest::Approx(1.0));

    CHECK_THROWS_AS(discrimination_stats({}, 0.05), std::invalid_argument);
}

TEST_CASE("beta stays in [0.5, 1] on random populations") {
    Rng rng(31);
    std::vector<InteractionTable> tables;
    for (int i = 0; i < 30; ++i) {
        std::vector<double> effects(32);
        for (double& e : effects) e = rng.uniform(-2.0, 2.0);
        tables.push_back(InteractionTable::from_effects(5, std::move(effects)));
    }
    const DiscriminationResult disc = discrimination_stats(tables, 0.05);
    REQUIRE(!disc.concepts.empty());
    for (const ConceptStat& c : disc.concepts) {
        CHECK(c.beta >= 0.5);
        CHECK(c.beta <= 1.0);
        CHECK(c.alpha > 0.0);
        CHECK(c.alpha <= 1.0);
    }
    // beta_bar is a convex combination of per-concept betas.
    double lo = 1.0, hi = 0.0;
    for (const ConceptStat& c : disc.concepts) {
        lo = std::min(lo, c.beta);
        hi = std::max(hi, c.beta);
    }
    CHECK(disc.beta_bar >= lo);
    CHECK(disc.beta_bar <= hi);
}

TEST_CASE("multi-variable strength") {
    SUBCASE("all singletons give zero") {
        const SalientSet omega = set_of(3, {{1, 2.0}, {2, -1.0}, {4, 0.5}});
        std::vector<SalientSet> population = {omega};
        CHECK(multi_variable_strength(population) == doctest::Approx(0.0));
    }
    SUBCASE("singleton mass 3 and pair mass 1 give 0.25") {
        const SalientSet omega = set_of(3, {{1, 2.0}, {2, 1.0}, {3, 1.0}});
        std::vector<SalientSet> population = {omega};
        CHECK(multi_variable_strength(population) == doctest::Approx(0.25));
    }
    SUBCASE("additive game kappa is zero to tolerance") {
        const std::vector<double> w = {1.0, -2.0, 0.5, 1.5};
        const InteractionTable t = harsanyi_transform(make_additive_game(w).profile());
        std::vector<SalientSet> population = {salient_set(t, 0.05)};
        CHECK(multi_variable_strength(population) <= 1e-9);
    }
    SUBCASE("zero-mass samples are excluded") {
        SalientSet empty;
        empty.n = 3;
        const SalientSet omega = set_of(3, {{3, 1.0}});
        std::vector<SalientSet> population = {empty, omega};
        size_t excluded = 0;
        CHECK(multi_variable_strength(population, &excluded) == doctest::Approx(1.0));
        CHECK(excluded == 1);
    }
}

TEST_CASE("effect histogram") {
    std::vector<InteractionTable> tables;
    for (int i = 0; i < 10; ++i) {
        std::vector<double> effects(8, 0.0);
        effects[5] = 2.0 + 0.1 * i;  // always salient, always positive
        effects[2] = 0.001;          // never salient
        tables.push_back(InteractionTable::from_effects(3, std::move(effects)));
    }
    SUBCASE("never-salient concept yields an empty histogram") {
        const EffectHistogram h = effect_histogram(2, tables, 0.05);
        CHECK(h.count == 0);
        CHECK(h.bins.empty());
    }
    SUBCASE("collected effects populate bins and stats") {
        const EffectHistogram h = effect_histogram(5, tables, 0.05, 5);
        CHECK(h.count == 10);
        CHECK(h.lo == doctest::Approx(2.0));
        CHECK(h.hi == doctest::Approx(2.9));
        CHECK(h.mean == doctest::Approx(2.45));
        CHECK(h.sign_consistency == doctest::Approx(1.0));
        int total = 0;
        for (int b : h.bins) total += b;
        CHECK(total == 10);
    }
    SUBCASE("constant effect lands in a single bin") {
        std::vector<InteractionTable> flat;
        for (int i = 0; i < 4; ++i) {
            std::vector<double> effects(8, 0.0);
            effects[5] = 3.0;
            flat.push_back(InteractionTable::from_effects(3, std::move(effects)));
        }
        const EffectHistogram h = effect_histogram(5, flat, 0.05, 7);
        CHECK(h.count == 4);
        CHECK(h.bins[0] == 4);
        CHECK(h.mean == doctest::Approx(3.0));
    }
}

TEST_CASE("order sensitivity") {
    std::vector<double> clean_effects = {0.0, 1.0, -2.0, 3.0, 0.5, -1.5, 2.5, 1.0};
    const InteractionTable clean = InteractionTable::from_effects(3, clean_effects);
    SUBCASE("identical tables have zero sensitivity") {
        for (int s = 1; s <= 3; ++s) {
            CHECK(order_sensitivity(clean, clean, s) == doctest::Approx(0.0));
        }
    }
    SUBCASE("uniform unit shift gives count over mass") {
        std::vector<double> shifted = clean_effects;
        for (uint32_t m = 1; m < 8; ++m) {
            if (std::popcount(m) == 2) shifted[m] += 1.0;
        }
        const InteractionTable perturbed = InteractionTable::from_effects(3, shifted);
        // Order-2 masks: 3, 5, 6 with |I| = 3 + 1.5 + 2.5 = 7.
        CHECK(order_sensitivity(clean, perturbed, 2) == doctest::Approx(3.0 / 7.0));
        CHECK(order_sensitivity(clean, perturbed, 1) == doctest::Approx(0.0));
    }
    SUBCASE("zero denominator is an error") {
        const InteractionTable zeros = InteractionTable::from_effects(3, std::vector<double>(8, 0.0));
        CHECK_THROWS_AS(order_sensitivity(zeros, clean, 1), std::runtime_error);
    }
}
