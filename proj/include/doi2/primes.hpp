#pragma once

#include <cstdint>
#include <vector>

namespace doi2 {

// All primes <= limit, ascending.
struct PrimeTable {
  uint64_t limit = 0;
  std::vector<uint64_t> primes;

  bool contains(uint64_t q) const;  // binary search; q must be <= limit
};

// Segmented sieve of Eratosthenes.  limit < 2 yields an empty table.
PrimeTable sieve_primes(uint64_t limit);

// Deterministic primality check for word-sized n (trial division;
// fine for the small moduli this project deals in).
bool is_prime_u64(uint64_t n);

}  // namespace doi2
