#pragma once

// Internal RAII shim over mpfr_t plus the precision tracker shared by the
// certified-arithmetic routines.  Not installed; implementation files only.

#include <mpfr.h>

#include <atomic>

namespace doi2::detail {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(x, prec); }
  ~Mpfr() { mpfr_clear(x); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_t x;
};

extern std::atomic<unsigned> g_max_precision_used;

inline void note_precision(unsigned bits) {
  unsigned seen = g_max_precision_used.load(std::memory_order_relaxed);
  while (seen < bits &&
         !g_max_precision_used.compare_exchange_weak(seen, bits, std::memory_order_relaxed)) {
  }
}

}  // namespace doi2::detail
