#include "doctest.h"

#include <bit>
#include <cmath>

#include "harsanyi/indices.hpp"
#include "harsanyi/rng.hpp"
#include "harsanyi/value_models.hpp"
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

TEST_CASE("two-variable shapley example") {
    // v(empty)=0, v{1}=1, v{2}=2, v{1,2}=4. Permutation oracle value: (1.5, 2.5).
    const ValueProfile p(2, {0.0, 1.0, 2.0, 4.0});
    const AttributionVector oracle_phi = shapley_permutation_oracle(p);
    CHECK(oracle_phi.phi[0] == doctest::Approx(1.5));
    CHECK(oracle_phi.phi[1] == doctest::Approx(2.5));

    const AttributionVector fast = shapley_from_dividends(harsanyi_transform(p));
    CHECK(fast.phi[0] == doctest::Approx(1.5));
    CHECK(fast.phi[1] == doctest::Approx(2.5));
    CHECK(fast.baseline == doctest::Approx(0.0));
}

TEST_CASE("additive game attributes its own weights") {
    const std::vector<double> w = {0.5, -2.0, 3.25};
    const AttributionVector phi =
        shapley_from_dividends(harsanyi_transform(make_additive_game(w).profile()));
    for (size_t i = 0; i < w.size(); ++i) CHECK(phi.phi[i] == doctest::Approx(w[i]));
}

TEST_CASE("pure interaction splits evenly") {
    const SyntheticGame game = make_interaction_game(VariableSet::of({1, 2}, 2), 6.0, 2);
    const AttributionVector phi = shapley_from_dividends(harsanyi_transform(game.profile()));
    CHECK(phi.phi[0] == doctest::Approx(3.0));
    CHECK(phi.phi[1] == doctest::Approx(3.0));
}

TEST_CASE("dividend shapley matches the permutation oracle on random profiles") {
    Rng rng(31337);
    for (int n = 1; n <= 8; ++n) {
        const ValueProfile p = random_profile(rng, n);
        const AttributionVector fast = shapley_from_dividends(harsanyi_transform(p));
        const AttributionVector slow = shapley_permutation_oracle(p);
        double phi_sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double err = std::fabs(fast.phi[static_cast<size_t>(i)] -
                                         slow.phi[static_cast<size_t>(i)]);
            REQUIRE(err <= 1e-9 * std::max(1.0, std::fabs(slow.phi[static_cast<size_t>(i)])));
            phi_sum += fast.phi[static_cast<size_t>(i)];
        }
        // Efficiency net of the all-masked baseline.
        const double expect = p[static_cast<uint32_t>(p.size() - 1)] - p[0];
        CHECK(phi_sum == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("permutation oracle edge cases") {
    SUBCASE("constant game attributes nothing") {
        const ValueProfile p(3, std::vector<double>(8, 5.0));
        const AttributionVector phi = shapley_permutation_oracle(p);
        for (double v : phi.phi) CHECK(v == doctest::Approx(0.0));
    }
    SUBCASE("single variable gets the whole marginal") {
        const ValueProfile p(1, {2.0, 7.5});
        const AttributionVector phi = shapley_permutation_oracle(p);
        CHECK(phi.phi[0] == doctest::Approx(5.5));
    }
    SUBCASE("n too large for exact enumeration") {
        const ValueProfile p(11, std::vector<double>(2048, 0.0));
        CHECK_THROWS_AS(shapley_permutation_oracle(p), std::invalid_argument);
    }
}

TEST_CASE("shapley interaction index") {
    SUBCASE("interaction game at its own trigger") {
        const SyntheticGame game = make_interaction_game(VariableSet::of({2, 3}, 4), 5.0, 4);
        const InteractionTable t = harsanyi_transform(game.profile());
        CHECK(shapley_interaction_index(t, VariableSet::of({2, 3}, 4)) == doctest::Approx(5.0));
    }
    SUBCASE("additive game has no pairwise index") {
        const std::vector<double> w = {1.0, 2.0, 3.0};
        const InteractionTable t = harsanyi_transform(make_additive_game(w).profile());
        CHECK(shapley_interaction_index(t, VariableSet::of({1, 2}, 3)) ==
              doctest::Approx(0.0).epsilon(1e-12));
        CHECK(shapley_interaction_index(t, VariableSet::of({1, 2, 3}, 3)) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("matches the discrete-derivative oracle on random profiles") {
        Rng rng(404);
        const int n = 5;
        const ValueProfile p = random_profile(rng, n);
        const InteractionTable t = harsanyi_transform(p);
        for (uint32_t mask = 1; mask < p.size(); ++mask) {
            const double via_dividends =
                shapley_interaction_index(t, VariableSet(mask, n));
            const double direct = oracle::shapley_interaction_direct(p, mask);
            REQUIRE(std::fabs(via_dividends - direct) <=
                    1e-9 * std::max(1.0, std::fabs(direct)));
        }
    }
    SUBCASE("singleton query reduces to the shapley value") {
        Rng rng(8);
        const ValueProfile p = random_profile(rng, 6);
        const InteractionTable t = harsanyi_transform(p);
        const AttributionVector phi = shapley_from_dividends(t);
        for (int i = 1; i <= 6; ++i) {
            CHECK(shapley_interaction_index(t, VariableSet::of({i}, 6)) ==
                  doctest::Approx(phi.phi[static_cast<size_t>(i - 1)]).epsilon(1e-12));
        }
    }
    SUBCASE("empty coalition rejected") {
        const InteractionTable t = InteractionTable::from_effects(2, {0, 0, 0, 0});
        CHECK_THROWS_AS(shapley_interaction_index(t, VariableSet::empty(2)),
                        std::invalid_argument);
    }
}

TEST_CASE("shapley-taylor index") {
    Rng rng(2718);
    const int n = 4;
    const ValueProfile p = random_profile(rng, n);
    const InteractionTable t = harsanyi_transform(p);
    const int k = 2;

    SUBCASE("above-order coalitions get zero") {
        CHECK(shapley_taylor_index(t, VariableSet::of({1, 2, 3}, n), k) == 0.0);
        CHECK(shapley_taylor_index(t, VariableSet::full(n), k) == 0.0);
    }
    SUBCASE("below-order coalitions return the raw dividend") {
        for (int i = 1; i <= n; ++i) {
            CHECK(shapley_taylor_index(t, VariableSet::of({i}, n), k) ==
                  doctest::Approx(t[1u << (i - 1)]));
        }
    }
    SUBCASE("indices up to order k are efficient") {
        double total = 0.0;
        for (uint32_t mask = 1; mask < p.size(); ++mask) {
            if (std::popcount(mask) <= k) {
                total += shapley_taylor_index(t, VariableSet(mask, n), k);
            }
        }
        const double expect = p[static_cast<uint32_t>(p.size() - 1)] - p[0];
        CHECK(total == doctest::Approx(expect).epsilon(1e-9));
    }
    SUBCASE("order bounds are validated") {
        CHECK_THROWS_AS(shapley_taylor_index(t, VariableSet::of({1}, n), 0),
                        std::invalid_argument);
        CHECK_THROWS_AS(shapley_taylor_index(t, VariableSet::of({1}, n), n + 1),
                        std::invalid_argument);
    }
}
