#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace harsanyi {

struct PropertyResult {
    std::string name;
    double max_error = 0.0;
    bool pass = false;
};

// Seven dividend axioms plus the dividend/permutation Shapley consistency
// check, exercised on constructed and random games. max_vars caps the game
// size (the Shapley oracle part is additionally capped at n = 8).
std::vector<PropertyResult> run_axiom_suite(int max_vars, int trials, uint64_t seed,
                                            double tolerance = 1e-9);

}  // namespace harsanyi
