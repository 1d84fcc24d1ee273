#include "doi2/primes.hpp"

#include <algorithm>
#include <cmath>

namespace doi2 {

bool PrimeTable::contains(uint64_t q) const {
  return std::binary_search(primes.begin(), primes.end(), q);
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

PrimeTable sieve_primes(uint64_t limit) {
  PrimeTable table;
  table.limit = limit;
  if (limit < 2) return table;

  // Base primes up to sqrt(limit), plain sieve.
  const uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<char> base(root + 1, 1);
  base[0] = base[1] = 0;
  for (uint64_t i = 2; i * i <= root; ++i) {
    if (!base[i]) continue;
    for (uint64_t j = i * i; j <= root; j += i) base[j] = 0;
  }
  std::vector<uint64_t> base_primes;
  for (uint64_t i = 2; i <= root; ++i) {
    if (base[i]) base_primes.push_back(i);
  }

  // Sweep [2, limit] in fixed-size segments.
  constexpr uint64_t kSegment = 1u << 16;
  std::vector<char> seg(kSegment);
  for (uint64_t lo = 2; lo <= limit; lo += kSegment) {
    const uint64_t hi = std::min(limit, lo + kSegment - 1);
    std::fill(seg.begin(), seg.begin() + (hi - lo + 1), 1);
    for (uint64_t p : base_primes) {
      if (p * p > hi) break;
      uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
      for (uint64_t j = start; j <= hi; j += p) seg[j - lo] = 0;
    }
    for (uint64_t n = lo; n <= hi; ++n) {
      if (seg[n - lo]) table.primes.push_back(n);
    }
  }
  return table;
}

}  // namespace doi2
