#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace doi2 {

enum class DigitCountMethod { exact, certified_log };

struct DigitCount {
  mpz_class count;
  DigitCountMethod method;
};

// Number of decimal digits of base^exp, i.e. floor(exp*log10(base)) + 1,
// decided through a certified log10 interval whose floor is unambiguous.
// Results below 10^10000 digits are cross-checked against the full
// expansion (method == exact).  base = 0 requires exp >= 1 (0^0 throws
// std::invalid_argument); the working precision is capped, and an orbit
// that will not disambiguate throws std::runtime_error.
DigitCount digit_count_pow_detail(const mpz_class& base, const mpz_class& exp);
mpz_class digit_count_pow(const mpz_class& base, const mpz_class& exp);

// All decimal digits equal (single digit counts; 0 counts).
bool is_repdigit(const mpz_class& x);

// n in 1..limit whose self-power n^n has a repdigit digit count.
struct SelfPowerRecord {
  uint64_t n;
  mpz_class digit_count;
  bool is_constant_word;
  DigitCountMethod method;
};
SelfPowerRecord selfpower_record(uint64_t n);
std::vector<SelfPowerRecord> search_selfpower_cwn(uint64_t limit, unsigned workers = 1);

// Cyclic tuples (m1,...,mk): the digit count of each m_i^(m_(i+1)) is a
// repdigit, indices wrapping.  Canonical form = lexicographically minimal
// rotation; result list sorted, truncated to limit_results if nonzero.
struct AmicableTuple {
  std::vector<uint64_t> members;
  std::vector<mpz_class> digit_counts;  // digit_counts[i] = digits of m_i^(m_(i+1))
};
std::optional<AmicableTuple> verify_amicable(const std::vector<uint64_t>& members);
std::vector<AmicableTuple> search_amicable(unsigned k, uint64_t bound,
                                           std::size_t limit_results = 0,
                                           unsigned workers = 1);

// Gap sequences: S1 = successive differences of the repdigit numbers
// themselves, S2 = successive differences of digit counts of n^n.
enum class GapSequence { repdigit_numbers, selfpower_digit_counts };
std::vector<mpz_class> sequence_gaps(GapSequence which, uint64_t count);

}  // namespace doi2
