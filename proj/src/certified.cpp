#include "doi2/certified.hpp"

#include <stdexcept>

#include "mpfr_raii.hpp"

namespace doi2 {

namespace detail {
std::atomic<unsigned> g_max_precision_used{0};
}

unsigned max_certified_precision_used() {
  return detail::g_max_precision_used.load(std::memory_order_relaxed);
}

void reset_certified_precision_tracker() {
  detail::g_max_precision_used.store(0, std::memory_order_relaxed);
}

namespace {

mpq_class to_mpq(mpfr_srcptr v) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v);
  return q;
}

}  // namespace

CertifiedReal log10_certified(const mpz_class& n, unsigned precision_bits) {
  if (n < 1) throw std::invalid_argument("log10 of non-positive value");

  // Exact short-circuit: powers of ten have integral log10.
  {
    mpz_class m = n;
    unsigned long k = 0;
    while (m % 10 == 0) {
      m /= 10;
      ++k;
    }
    if (m == 1) {
      CertifiedReal exact;
      exact.lower = k;
      exact.upper = k;
      return exact;
    }
  }

  mpq_class target_width(1);
  target_width >>= precision_bits;  // 2^-precision_bits

  for (mpfr_prec_t work = precision_bits + 32;; work *= 2) {
    detail::note_precision(static_cast<unsigned>(work));
    detail::Mpfr lo(work), hi(work);
    mpfr_set_z(lo.x, n.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi.x, n.get_mpz_t(), MPFR_RNDU);
    mpfr_log10(lo.x, lo.x, MPFR_RNDD);
    mpfr_log10(hi.x, hi.x, MPFR_RNDU);
    CertifiedReal out{to_mpq(lo.x), to_mpq(hi.x)};
    if (out.width() <= target_width) return out;
  }
}

}  // namespace doi2
