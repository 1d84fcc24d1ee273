#pragma once

// Slow, obviously-correct re-implementations used as oracles by the test
// suite and the self-check runner.  Nothing here shares code with the fast
// paths: keep it that way, cross-checks are only worth what their
// independence buys.

#include <cstdint>
#include <string>
#include <vector>

#include "doi2/waring.hpp"

namespace doi2::reference {

// Four nested loops, no pair tables.
std::vector<CubeQuad> four_cube_reps_bruteforce(uint64_t target, bool allow_zero = true);

// Primes by trial division only.
std::vector<uint64_t> primes_trial_division(uint64_t limit);

// Prefix of the classical substitution fixed point a->ab, b->a.
std::string fibonacci_word_substitution(size_t length);

}  // namespace doi2::reference
