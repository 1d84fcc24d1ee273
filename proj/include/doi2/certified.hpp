#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace doi2 {

// A real number pinned between two exact rationals.  Produced by the
// directed-rounding routines below; width bounds the total rounding error.
struct CertifiedReal {
  mpq_class lower;
  mpq_class upper;

  mpq_class width() const { return upper - lower; }
  bool contains(const mpq_class& x) const { return lower <= x && x <= upper; }
  double midpoint_d() const {
    return (mpq_class((lower + upper) / 2)).get_d();
  }
};

// Certified log10(n) for n >= 1: an interval of width <= 2^-precision_bits
// computed with directed rounding, escalating working precision until the
// target width is met.  Powers of ten come back exact (lower == upper).
// n < 1 throws std::invalid_argument ("log10 of non-positive value").
CertifiedReal log10_certified(const mpz_class& n, unsigned precision_bits);

// Highest MPFR working precision any certified routine in this process has
// needed so far (bits).  Lets tests pin how hard the escalation loop works.
unsigned max_certified_precision_used();
void reset_certified_precision_tracker();

}  // namespace doi2
