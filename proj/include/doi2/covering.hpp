#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace doi2 {

// A partial assignment of the pearl game: boxes 0..length-1, each placed
// prime q occupies boxes congruent to its offset mod q (offset < q).
// Excluded primes may never be placed.
struct CoveringState {
  uint64_t length = 0;
  std::map<uint64_t, uint64_t> placements;  // prime -> offset
  std::set<uint64_t> excluded;

  // Throws std::invalid_argument if a key is not prime, an offset reaches
  // its prime, or a placed prime is excluded.
  void validate() const;
};

struct CoverReport {
  bool complete = false;
  std::vector<uint64_t> uncovered;  // ascending
};

// Does every box hold at least one pearl?
CoverReport is_covered(const CoveringState& state);

struct EffectiveReport {
  bool effective = false;
  std::vector<uint64_t> violators;  // primes with fewer than two pearls inside
};

// A placement is effective when at least two of its pearls land in the
// window (equivalently offset + prime <= length - 1).
EffectiveReport is_effective(const CoveringState& state);

enum class SearchMode { exhaustive, first_found };

// All complete-and-effective coverings (exhaustive; canonical order, cap
// length <= 24, beyond throws std::invalid_argument "use first_found mode")
// or at most one covering found by a greedy backtracking search
// (first_found, no length cap).
std::vector<CoveringState> search_complete_coverings(uint64_t length,
                                                     const std::set<uint64_t>& excluded,
                                                     SearchMode mode,
                                                     unsigned workers = 1);

// Offsets reflected through the window midpoint: offset -> (length-1-offset) mod prime.
CoveringState mirror(const CoveringState& state);

// The historical length-17 covering on primes {2,3,5,7,11,13}.
CoveringState minimal_covering17();

// Least positive a such that a+b is divisible by the prime in box b for
// every placement; modulus is the product of the placed primes.  Requires a
// complete and effective state (else std::invalid_argument).
struct Instantiation {
  mpz_class a;
  mpz_class modulus;
};
Instantiation instantiate(const CoveringState& state);

// First-come-first-served extension: repeatedly fill the first uncovered
// box at the chosen frontier with the smallest unused prime available in
// the current window.
enum class ExtendSide { right, left, alternate };
enum class AvailabilityRule {
  window,       // q <= window_length - 1
  half_window,  // q <= floor(window_length / 2)
};

struct ExtensionStep {
  long long box;             // barrier box that forced the placement
  uint64_t prime;            // pearl placed there
  uint64_t available_after;  // unused available primes once placed
};

struct ExtensionTrace {
  std::vector<ExtensionStep> steps;
  bool stuck = false;
  long long stuck_box = 0;
  long long lo = 0, hi = 0;  // final covered window [lo, hi]
};

ExtensionTrace fcfs_extend(const CoveringState& start, uint64_t target_box,
                           ExtendSide side = ExtendSide::right,
                           AvailabilityRule rule = AvailabilityRule::window);

// Semantic check on actual integers: do a..a+length-1 all share a prime
// factor (outside `excluded`) with some other element of the run?
bool verify_run(const mpz_class& a, uint64_t length, const std::set<uint64_t>& excluded = {});

}  // namespace doi2
