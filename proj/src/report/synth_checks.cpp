#include "harsanyi/synth_checks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "harsanyi/indices.hpp"
#include "harsanyi/lattice.hpp"
#include "harsanyi/rng.hpp"
#include "harsanyi/value_models.hpp"

namespace harsanyi {

namespace {

double rel_err(double a, double b) {
    return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

ValueProfile random_profile(Rng& rng, int n, double amplitude = 10.0) {
    ValueProfile p(n);
    const size_t count = table_size(n);
    for (size_t m = 0; m < count; ++m) {
        p[static_cast<uint32_t>(m)] = rng.uniform(-amplitude, amplitude);
    }
    return p;
}

int pick_n(Rng& rng, int max_vars, int lo = 1) {
    return lo + static_cast<int>(rng.next_below(static_cast<uint64_t>(max_vars - lo + 1)));
}

double check_efficiency(Rng& rng, int max_vars, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = pick_n(rng, max_vars);
        const ValueProfile p = random_profile(rng, n);
        const InteractionTable table = harsanyi_transform(p);
        double total = 0.0;
        for (size_t m = 0; m < table.size(); ++m) total += table[static_cast<uint32_t>(m)];
        worst = std::max(worst, rel_err(total, p[static_cast<uint32_t>(p.size() - 1)]));
    }
    return worst;
}

double check_linearity(Rng& rng, int max_vars, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = pick_n(rng, max_vars);
        const ValueProfile p = random_profile(rng, n);
        const ValueProfile q = random_profile(rng, n);
        ValueProfile merged(n);
        for (size_t m = 0; m < p.size(); ++m) {
            merged[static_cast<uint32_t>(m)] =
                p[static_cast<uint32_t>(m)] + q[static_cast<uint32_t>(m)];
        }
        const InteractionTable tp = harsanyi_transform(p);
        const InteractionTable tq = harsanyi_transform(q);
        const InteractionTable tm = harsanyi_transform(merged);
        for (size_t m = 0; m < tm.size(); ++m) {
            const uint32_t mask = static_cast<uint32_t>(m);
            worst = std::max(worst, rel_err(tm[mask], tp[mask] + tq[mask]));
        }
    }
    return worst;
}

double check_dummy(Rng& rng, int max_vars, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = pick_n(rng, std::max(max_vars, 2), 2);
        const int dummy = static_cast<int>(rng.next_below(static_cast<uint64_t>(n)));
        const uint32_t bit = 1u << dummy;
        ValueProfile p(n);
        // Free values on masks without the dummy plus a solo contribution;
        // masks with the dummy follow the additivity identity.
        const double solo = rng.uniform(-5.0, 5.0);
        for (size_t m = 0; m < p.size(); ++m) {
            if ((m & bit) == 0) p[static_cast<uint32_t>(m)] = rng.uniform(-10.0, 10.0);
        }
        p[bit] = p[0] + solo;
        for (size_t m = 0; m < p.size(); ++m) {
            if ((m & bit) != 0 && m != bit) {
                const uint32_t without = static_cast<uint32_t>(m) & ~bit;
                p[static_cast<uint32_t>(m)] = p[without] + p[bit] - p[0];
            }
        }
        const InteractionTable table = harsanyi_transform(p);
        for (size_t m = 0; m < table.size(); ++m) {
            if ((m & bit) == 0 || m == bit) continue;
            worst = std::max(worst, rel_err(table[static_cast<uint32_t>(m)], 0.0));
        }
    }
    return worst;
}

double check_symmetry(Rng& rng, int max_vars, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = pick_n(rng, std::max(max_vars, 2), 2);
        const int i = static_cast<int>(rng.next_below(static_cast<uint64_t>(n)));
        int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(n - 1)));
        if (j >= i) ++j;
        const uint32_t bi = 1u << i, bj = 1u << j;
        ValueProfile p(n);
        // Masks holding j but not i mirror their i-counterparts; the rest are free.
        for (size_t m = 0; m < p.size(); ++m) {
            if ((m & bj) != 0 && (m & bi) == 0) continue;
            p[static_cast<uint32_t>(m)] = rng.uniform(-10.0, 10.0);
        }
        for (size_t m = 0; m < p.size(); ++m) {
            if ((m & bj) != 0 && (m & bi) == 0) {
                const uint32_t swapped = (static_cast<uint32_t>(m) & ~bj) | bi;
                p[static_cast<uint32_t>(m)] = p[swapped];
            }
        }
        const InteractionTable table = harsanyi_transform(p);
        for (size_t m = 0; m < table.size(); ++m) {
            if ((m & bi) != 0 && (m & bj) == 0) {
                const uint32_t swapped = (static_cast<uint32_t>(m) & ~bi) | bj;
                worst = std::max(worst,
                                 rel_err(table[static_cast<uint32_t>(m)], table[swapped]));
            }
        }
    }
    return worst;
}

uint32_t permute_mask(uint32_t mask, const std::vector<int>& perm) {
    uint32_t out = 0;
    for (size_t i = 0; i < perm.size(); ++i) {
        if ((mask >> i) & 1u) out |= 1u << perm[i];
    }
    return out;
}

double check_anonymity(Rng& rng, int max_vars, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = pick_n(rng, max_vars);
        const ValueProfile p = random_profile(rng, n);
        std::vector<int> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm.data(), perm.size());
        ValueProfile permuted(n);
        for (size_t m = 0; m < p.size(); ++m) {
            permuted[permute_mask(static_cast<uint32_t>(m), perm)] = p[static_cast<uint32_t>(m)];
        }
        const InteractionTable ti = harsanyi_transform(p);
        const InteractionTable tp = harsanyi_transform(permuted);
        for (size_t m = 0; m < ti.size(); ++m) {
            worst = std::max(worst, rel_err(tp[permute_mask(static_cast<uint32_t>(m), perm)],
                                            ti[static_cast<uint32_t>(m)]));
        }
    }
    return worst;
}

double check_recursive(Rng& rng, int max_vars, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = pick_n(rng, std::max(max_vars, 2), 2);
        const ValueProfile p = random_profile(rng, n);
        const InteractionTable table = harsanyi_transform(p);
        for (int i = 0; i < n; ++i) {
            const uint32_t bit = 1u << i;
            const uint32_t rest = VariableSet::full(n).bits & ~bit;
            uint32_t s = rest;
            for (;;) {
                // I(S with i always present) via inclusion-exclusion on L u {i}.
                double present = 0.0;
                uint32_t l = s;
                const int s_card = std::popcount(s);
                for (;;) {
                    const double sign = ((s_card - std::popcount(l)) % 2 == 0) ? 1.0 : -1.0;
                    present += sign * p[l | bit];
                    if (l == 0) break;
                    l = (l - 1) & s;
                }
                worst = std::max(worst, rel_err(table[s | bit], present - table[s]));
                if (s == 0) break;
                s = (s - 1) & rest;
            }
        }
    }
    return worst;
}

double check_interaction_distribution(Rng& rng, int max_vars, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = pick_n(rng, max_vars);
        const uint32_t trigger =
            static_cast<uint32_t>(1 + rng.next_below((uint64_t{1} << n) - 1));
        const double c = rng.uniform(-8.0, 8.0);
        const SyntheticGame game = make_interaction_game(VariableSet(trigger, n), c, n);
        const InteractionTable table = harsanyi_transform(game.profile());
        for (size_t m = 0; m < table.size(); ++m) {
            const double expect = (m == trigger) ? c : 0.0;
            worst = std::max(worst, rel_err(table[static_cast<uint32_t>(m)], expect));
        }
    }
    return worst;
}

double check_shapley_consistency(Rng& rng, int max_vars, int trials) {
    double worst = 0.0;
    const int cap = std::min(max_vars, 8);
    for (int t = 0; t < trials; ++t) {
        const int n = pick_n(rng, cap);
        const ValueProfile p = random_profile(rng, n);
        const AttributionVector fast = shapley_from_dividends(harsanyi_transform(p));
        const AttributionVector oracle = shapley_permutation_oracle(p);
        for (int i = 0; i < n; ++i) {
            worst = std::max(worst, rel_err(fast.phi[static_cast<size_t>(i)],
                                            oracle.phi[static_cast<size_t>(i)]));
        }
    }
    return worst;
}

}  // namespace

std::vector<PropertyResult> run_axiom_suite(int max_vars, int trials, uint64_t seed,
                                            double tolerance) {
    Rng rng(seed);
    std::vector<PropertyResult> out;
    auto record = [&](const char* name, double err) {
        out.push_back({name, err, err <= tolerance});
    };
    record("efficiency", check_efficiency(rng, max_vars, trials));
    record("linearity", check_linearity(rng, max_vars, trials));
    record("dummy", check_dummy(rng, max_vars, trials));
    record("symmetry", check_symmetry(rng, max_vars, trials));
    record("anonymity", check_anonymity(rng, max_vars, trials));
    record("recursive", check_recursive(rng, max_vars, trials));
    record("interaction-distribution", check_interaction_distribution(rng, max_vars, trials));
    record("shapley-dividend-consistency", check_shapley_consistency(rng, max_vars, trials));
    return out;
}

}  // namespace harsanyi
